#include "pirbound/bounds.hpp"

#include <stdexcept>

namespace pirbound {

namespace {

void check_params(const PirParameters& p) {
  if (p.databases < 1 || p.messages < 1)
    throw std::invalid_argument("need at least one database and one message");
}

Rational nk_power(const PirParameters& p) {
  return Rational(ipow(p.databases, static_cast<unsigned>(p.messages)));
}

}  // namespace

Rational BoundLine::alpha_at(const Rational& beta) const {
  if (c_alpha == 0) throw std::domain_error("line does not constrain alpha");
  return (rhs - c_beta * beta) / c_alpha;
}

Rational BoundLine::beta_at(const Rational& alpha) const {
  if (c_beta == 0) throw std::domain_error("line does not constrain beta");
  return (rhs - c_alpha * alpha) / c_beta;
}

bool BoundLine::satisfied_by(const TradeoffPoint& p) const {
  return c_alpha * p.alpha + c_beta * p.beta >= rhs;
}

Rational capacity_beta(const PirParameters& p) {
  check_params(p);
  if (p.databases == 1)
    throw std::domain_error(
        "capacity formula needs N >= 2 (a single database must ship everything)");
  const Rational nk = nk_power(p);
  return (nk - 1) / (nk * (p.databases - 1));
}

BoundLine theorem1_line(const PirParameters& p) {
  check_params(p);
  return {Rational(p.databases - 1), Rational(1), Rational(p.messages), "theorem1"};
}

BetaBound theorem1_min_beta(const PirParameters& p, const Rational& alpha) {
  check_params(p);
  const Rational min_storage = Rational(p.messages) / p.databases;
  if (alpha < min_storage)
    throw std::domain_error("storage below the minimum K/N = " + rational_string(min_storage));
  const Rational line_value = Rational(p.messages) - Rational(p.databases - 1) * alpha;
  if (p.databases >= 2) {
    const Rational cap = capacity_beta(p);
    if (cap >= line_value) return {cap, BetaBound::Binding::Capacity};
  }
  return {line_value, BetaBound::Binding::Theorem1};
}

BoundLine theorem2_line(const PirParameters& p) {
  check_params(p);
  if (p.databases < 3)
    throw std::domain_error("the capacity-side storage bound requires N >= 3");
  const int n = p.databases;
  const Rational nk = nk_power(p);
  const Rational nk1 = Rational(ipow(n, static_cast<unsigned>(p.messages - 1)));
  const Rational c_beta = Rational(n - 1) + Rational(n - 2) * nk1;
  const Rational rhs =
      Rational(p.messages) + Rational(n - 2) * (nk - 1) / (Rational(n) * (n - 1));
  return {Rational(1), c_beta, rhs, "theorem2"};
}

Rational theorem2_min_alpha(const PirParameters& p, const Rational& beta) {
  const BoundLine line = theorem2_line(p);
  return line.alpha_at(beta);
}

BoundLine theorem3_line(const PirParameters& p) {
  check_params(p);
  if (p.databases != 2 || p.messages != 2)
    throw std::domain_error("the pseudo-message bound applies to N = K = 2 only");
  return {Rational(3), Rational(8), Rational(10), "theorem3"};
}

std::vector<EnvelopePoint> outer_envelope(const PirParameters& p, int samples) {
  check_params(p);
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const Rational lo = capacity_beta(p);  // throws for N == 1
  const Rational hi = Rational(p.messages) / p.databases;

  std::vector<BoundLine> lines;
  lines.push_back(theorem1_line(p));
  if (p.databases >= 3) lines.push_back(theorem2_line(p));
  if (p.databases == 2 && p.messages == 2) lines.push_back(theorem3_line(p));

  std::vector<EnvelopePoint> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const Rational beta = lo + (hi - lo) * Rational(i, samples - 1);
    EnvelopePoint point{beta, Rational(0), ""};
    for (const auto& line : lines) {
      const Rational a = line.alpha_at(beta);
      if (point.binding.empty() || a > point.alpha_lower) {
        point.alpha_lower = a;
        point.binding = line.origin;
      }
    }
    out.push_back(std::move(point));
  }
  return out;
}

namespace detail {

void FormalExpr::add(char sym, int k, const Rational& c) {
  if (c == 0) return;
  const auto key = std::make_pair(sym, k);
  auto it = coeffs.find(key);
  if (it == coeffs.end()) {
    coeffs.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

FormalExpr& FormalExpr::operator+=(const FormalExpr& o) {
  for (const auto& [key, c] : o.coeffs) add(key.first, key.second, c);
  constant += o.constant;
  return *this;
}

FormalExpr& FormalExpr::operator*=(const Rational& f) {
  if (f == 0) {
    coeffs.clear();
    constant = 0;
    return *this;
  }
  for (auto& [key, c] : coeffs) c *= f;
  constant *= f;
  return *this;
}

namespace {

std::string render(const FormalExpr& e) {
  std::string out;
  for (const auto& [key, c] : e.coeffs) {
    if (!out.empty()) out += " + ";
    out += rational_string(c) + "*" + key.first + "^" + std::to_string(key.second);
  }
  if (e.constant != 0 || out.empty()) {
    if (!out.empty()) out += " + ";
    out += rational_string(e.constant);
  }
  return out;
}

// right side of the claimed inequality at level k
Rational claim_rhs(const PirParameters& p, int k) {
  const int n = p.databases;
  const Rational pw = Rational(ipow(n, static_cast<unsigned>(p.messages - k)));
  return (pw - 1) / (Rational(n) * (n - 1)) +
         Rational(p.messages - k) / (n - 2);
}

// V^k/(N-2) + N^{K-k-1} T^k - rhs(k), the claim as a >= 0 expression
FormalExpr claim_expr(const PirParameters& p, int k) {
  const int n = p.databases;
  FormalExpr e;
  e.add('V', k, Rational(1, n - 2));
  e.add('T', k, Rational(ipow(n, static_cast<unsigned>(p.messages - k - 1))));
  e.constant -= claim_rhs(p, k);
  return e;
}

}  // namespace

FormalExpr lemma1_expr(const PirParameters& p, int k) {
  const int n = p.databases;
  FormalExpr e;
  e.add('T', k, 1);
  e.constant -= Rational(1, n);
  if (k + 1 < p.messages) e.add('T', k + 1, Rational(-1, n));
  return e;
}

FormalExpr lemma2_expr(const PirParameters& p, int k) {
  const int n = p.databases;
  FormalExpr e;
  e.add('V', k, Rational(1, n - 2));
  e.add('T', k, 1);
  e.constant -= Rational(1, n - 2) + Rational(1, n);
  if (k + 1 < p.messages) {
    e.add('V', k + 1, Rational(-1, n - 2));
    e.add('T', k + 1, Rational(-1, n));
  }
  return e;
}

InductionLedger replay_with_lemmas(const PirParameters& p, LemmaProvider lemma1,
                                   LemmaProvider lemma2) {
  if (p.databases < 3)
    throw std::domain_error("the induction requires N >= 3");
  if (p.messages < 2)
    throw std::domain_error("the induction requires K >= 2");
  const int n = p.databases;
  const int K = p.messages;

  InductionLedger ledger;
  ledger.params = p;
  ledger.final_rhs = Rational(K, n - 2) + (nk_power(p) - 1) / (Rational(n) * (n - 1));

  // base case: the claim at k = K-1 is the second lemma with level-K symbols 0
  {
    FormalExpr diff = claim_expr(p, K - 1);
    FormalExpr base = lemma2(p, K - 1);
    base *= -1;
    diff += base;
    ledger.steps.push_back({K - 1, claim_rhs(p, K - 1), Rational(0), Rational(1)});
    if (!(diff == FormalExpr{})) {
      ledger.failure = "base case at k=" + std::to_string(K - 1) +
                       " leaves residual: " + render(diff);
      return ledger;
    }
  }

  // induction step: claim(k) == lemma2(k) + (N^{K-k-1}-1) lemma1(k) + claim(k+1)
  for (int k = K - 2; k >= 1; --k) {
    const Rational m1 = Rational(ipow(n, static_cast<unsigned>(K - k - 1))) - 1;
    FormalExpr combo = lemma2(p, k);
    FormalExpr l1 = lemma1(p, k);
    l1 *= m1;
    combo += l1;
    combo += claim_expr(p, k + 1);
    combo *= -1;
    FormalExpr diff = claim_expr(p, k);
    diff += combo;
    ledger.steps.push_back({k, claim_rhs(p, k), m1, Rational(1)});
    if (!(diff == FormalExpr{})) {
      ledger.failure =
          "step at k=" + std::to_string(k) + " leaves residual: " + render(diff);
      return ledger;
    }
  }

  // final assembly: 1/(N-2) + N^{K-2} + rhs(1) must equal the theorem rhs
  const Rational assembled = Rational(1, n - 2) +
                             Rational(ipow(n, static_cast<unsigned>(K - 2))) +
                             claim_rhs(p, 1);
  if (assembled != ledger.final_rhs) {
    ledger.failure = "final assembly mismatch: " + rational_string(assembled) + " vs " +
                     rational_string(ledger.final_rhs);
    return ledger;
  }

  ledger.passed = true;
  return ledger;
}

}  // namespace detail

InductionLedger replay_theorem2_induction(const PirParameters& p) {
  return detail::replay_with_lemmas(p, &detail::lemma1_expr, &detail::lemma2_expr);
}

}  // namespace pirbound

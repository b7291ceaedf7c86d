#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pirbound/rational.hpp"

namespace pirbound {

// Problem size: N databases, K messages. Powers N^K are arbitrary precision.
struct PirParameters {
  int databases = 2;  // N >= 1
  int messages = 2;   // K >= 1
};

struct TradeoffPoint {
  Rational alpha;  // per-node storage, message units
  Rational beta;   // per-node download, message units
};

// c_alpha * alpha + c_beta * beta >= rhs
struct BoundLine {
  Rational c_alpha;
  Rational c_beta;
  Rational rhs;
  std::string origin;  // "theorem1", "theorem2", "theorem3"

  Rational alpha_at(const Rational& beta) const;  // implied lower bound on alpha
  Rational beta_at(const Rational& alpha) const;  // implied lower bound on beta
  bool satisfied_by(const TradeoffPoint& p) const;
};

// Minimum download cost (N^K - 1) / (N^K (N - 1)); requires N >= 2.
Rational capacity_beta(const PirParameters& p);

// (N-1) alpha + beta >= K. Defined for all N >= 1 (N = 1 degenerates to the
// download-everything necessity beta >= K).
BoundLine theorem1_line(const PirParameters& p);

struct BetaBound {
  Rational value;
  enum class Binding { Theorem1, Capacity } binding;
};

// Smallest admissible beta at storage alpha: the theorem-1 value K - (N-1)a,
// floored at capacity when that is larger. Requires alpha >= K/N.
BetaBound theorem1_min_beta(const PirParameters& p, const Rational& alpha);

// alpha + ((N-1) + (N-2) N^{K-1}) beta >= K + (N-2)(N^K - 1)/(N(N-1)),
// the cleared-denominator form of the capacity-side bound. Requires N >= 3.
BoundLine theorem2_line(const PirParameters& p);
Rational theorem2_min_alpha(const PirParameters& p, const Rational& beta);

// 3 alpha + 8 beta >= 10; the two-message two-database bound. N = K = 2 only.
BoundLine theorem3_line(const PirParameters& p);

struct EnvelopePoint {
  Rational beta;
  Rational alpha_lower;
  std::string binding;  // origin of the line attaining the maximum
};

// Lower envelope of all applicable lines, sampled uniformly in beta between
// capacity_beta and K/N inclusive. samples >= 2; endpoints always emitted.
std::vector<EnvelopePoint> outer_envelope(const PirParameters& p, int samples);

// One rung of the induction: the claimed inequality at level k and the lemma
// multiplicities that reproduce it from level k+1.
struct InductionStep {
  int k = 0;
  Rational rhs;           // right side of the claim at this k
  Rational lemma1_coeff;  // N^{K-k-1} - 1 applications of the T-recursion
  Rational lemma2_coeff;  // one application of the V/T-recursion
};

struct InductionLedger {
  PirParameters params;
  std::vector<InductionStep> steps;  // k = K-1 down to 1
  Rational final_rhs;                // assembled theorem right side
  bool passed = false;
  std::string failure;               // offending k and residual when failed
};

// Replays the storage-bound induction coefficient-exactly, treating the two
// recursion lemmas as axioms over formal nonnegative indeterminates T^k, V^k
// (unit: one message). Requires N >= 3, K >= 2.
InductionLedger replay_theorem2_induction(const PirParameters& p);

namespace detail {

// Linear expression over the formal symbols T^1..T^K, V^1..V^K plus a
// constant, exact coefficients. Symbol encoding: ('T', k) or ('V', k).
struct FormalExpr {
  std::map<std::pair<char, int>, Rational> coeffs;
  Rational constant = 0;

  void add(char sym, int k, const Rational& c);
  FormalExpr& operator+=(const FormalExpr& o);
  FormalExpr& operator*=(const Rational& f);
  bool operator==(const FormalExpr& o) const = default;
};

using LemmaProvider = FormalExpr (*)(const PirParameters&, int k);

FormalExpr lemma1_expr(const PirParameters& p, int k);  // standard T-recursion slack
FormalExpr lemma2_expr(const PirParameters& p, int k);  // standard V/T-recursion slack

// Replay with injectable lemma forms (tests perturb them to prove the checker
// rejects wrong algebra).
InductionLedger replay_with_lemmas(const PirParameters& p, LemmaProvider lemma1,
                                   LemmaProvider lemma2);

}  // namespace detail

}  // namespace pirbound

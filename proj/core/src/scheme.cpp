#include "pirbound/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pirbound {

namespace {

void check_params(const SchemeParams& p) {
  if (p.databases < 1 || p.messages < 1 || p.length < 1)
    throw std::invalid_argument("scheme needs N, K, L >= 1");
  if (p.message_alphabet < 2 || p.answer_alphabet < 2)
    throw std::invalid_argument("alphabets need at least two symbols");
}

std::int64_t checked_pow(std::int64_t base, std::int64_t exp, const char* what) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (out > (std::int64_t{1} << 62) / base)
      throw std::invalid_argument(std::string(what) + ": domain exceeds 2^62");
    out *= base;
  }
  return out;
}

// digit at flat position j of a big-endian mixed-radix index over `count`
// positions with uniform radix
int digit_at(std::int64_t value, std::int64_t radix, int count, int j) {
  for (int i = count - 1; i > j; --i) value /= radix;
  return static_cast<int>(value % radix);
}

template <typename Key>
double entropy_bits(const std::map<Key, std::int64_t>& counts, std::int64_t total) {
  long double h = 0.0L;
  for (const auto& [key, c] : counts) {
    (void)key;
    const long double p = static_cast<long double>(c) / static_cast<long double>(total);
    if (p > 0.0L) h -= p * std::log2(p);
  }
  return static_cast<double>(h);
}

}  // namespace

std::int64_t SchemeSpec::message_space() const {
  return checked_pow(params.message_alphabet,
                     static_cast<std::int64_t>(params.messages) * params.length,
                     "message space");
}

std::vector<int> SchemeSpec::message_symbols(std::int64_t msg, int k) const {
  const int total = params.messages * params.length;
  std::vector<int> out(static_cast<std::size_t>(params.length));
  for (int l = 0; l < params.length; ++l)
    out[static_cast<std::size_t>(l)] =
        digit_at(msg, params.message_alphabet, total, k * params.length + l);
  return out;
}

CorrectnessReport verify_correctness(const SchemeSpec& s, std::int64_t guard) {
  check_params(s.params);
  const std::int64_t space = s.message_space();
  const std::int64_t triples = [&] {
    const std::int64_t fk = s.key_count * s.params.messages;
    if (space > std::numeric_limits<std::int64_t>::max() / fk) return std::numeric_limits<std::int64_t>::max();
    return space * fk;
  }();

  CorrectnessReport report;
  if (triples <= guard) {
    report.method = CorrectnessReport::Method::Enumeration;
    std::vector<std::int64_t> stored(static_cast<std::size_t>(s.params.databases));
    for (std::int64_t w = 0; w < space; ++w) {
      for (int n = 0; n < s.params.databases; ++n)
        stored[static_cast<std::size_t>(n)] = s.storage(n, w);
      for (std::int64_t f = 0; f < s.key_count; ++f) {
        for (int k = 0; k < s.params.messages; ++k) {
          std::vector<std::vector<int>> answers(static_cast<std::size_t>(s.params.databases));
          for (int n = 0; n < s.params.databases; ++n) {
            const std::int64_t q = s.query(n, k, f);
            answers[static_cast<std::size_t>(n)] =
                s.answer(n, q, stored[static_cast<std::size_t>(n)]);
            if (static_cast<int>(answers[static_cast<std::size_t>(n)].size()) !=
                s.answer_length(n, q))
              throw std::invalid_argument("answer length disagrees with the declared length");
          }
          const std::vector<int> expected = s.message_symbols(w, k);
          const std::vector<int> got = s.reconstruct(answers, k, f);
          ++report.cases_checked;
          if (got != expected) {
            report.passed = false;
            report.counterexample = Counterexample{w, f, k, expected, got};
            return report;
          }
        }
      }
    }
    report.passed = true;
    return report;
  }

  if (s.routing) {
    // Projection schemes: reconstruction is correct for every message tuple
    // iff every route composes to the identity symbol position.
    report.method = CorrectnessReport::Method::Structural;
    const SymbolRouting& r = *s.routing;
    for (int k = 0; k < s.params.messages; ++k) {
      for (std::int64_t f = 0; f < s.key_count; ++f) {
        for (int l = 0; l < s.params.length; ++l) {
          const auto [n, pos] =
              r.recon_source[static_cast<std::size_t>(k)][static_cast<std::size_t>(f)]
                            [static_cast<std::size_t>(l)];
          const std::int64_t q = s.query(n, k, f);
          const int slot =
              r.answer_source[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)]
                             [static_cast<std::size_t>(pos)];
          const int source = r.storage_source[static_cast<std::size_t>(n)]
                                             [static_cast<std::size_t>(slot)];
          ++report.cases_checked;
          if (source != k * s.params.length + l) {
            report.passed = false;
            report.counterexample = Counterexample{0, f, k, {source}, {k * s.params.length + l}};
            return report;
          }
        }
      }
    }
    report.passed = true;
    return report;
  }

  throw SizeGuardError("correctness enumeration needs " + std::to_string(triples) +
                           " cases, above the guard of " + std::to_string(guard),
                       triples);
}

PrivacyReport verify_privacy(const SchemeSpec& s, std::int64_t guard) {
  check_params(s.params);
  const std::int64_t pairs = s.key_count * s.params.messages;
  if (pairs > guard)
    throw SizeGuardError("privacy enumeration needs " + std::to_string(pairs) +
                             " cases, above the guard of " + std::to_string(guard),
                         pairs);

  PrivacyReport report;
  report.passed = true;
  report.distributions.resize(static_cast<std::size_t>(s.params.databases));
  for (int n = 0; n < s.params.databases; ++n) {
    auto& per_k = report.distributions[static_cast<std::size_t>(n)];
    per_k.resize(static_cast<std::size_t>(s.params.messages));
    for (int k = 0; k < s.params.messages; ++k) {
      std::map<std::int64_t, std::int64_t> counts;
      for (std::int64_t f = 0; f < s.key_count; ++f) ++counts[s.query(n, k, f)];
      for (const auto& [q, c] : counts)
        per_k[static_cast<std::size_t>(k)].emplace(q, Rational(c, s.key_count));
      if (report.passed && k > 0 && per_k[static_cast<std::size_t>(k)] != per_k[0]) {
        report.passed = false;
        report.detail = "database " + std::to_string(n + 1) +
                        ": query distribution under index " + std::to_string(k + 1) +
                        " differs from index 1";
      }
    }
  }
  return report;
}

namespace {

// H(S_n) in bits, exact structure path for routing schemes, else enumeration.
double storage_entropy_bits(const SchemeSpec& s, int n, std::int64_t guard) {
  if (s.routing) {
    std::set<int> distinct(s.routing->storage_source[static_cast<std::size_t>(n)].begin(),
                           s.routing->storage_source[static_cast<std::size_t>(n)].end());
    return static_cast<double>(distinct.size()) *
           std::log2(static_cast<double>(s.params.message_alphabet));
  }
  const std::int64_t space = s.message_space();
  if (space > guard)
    throw SizeGuardError("storage entropy needs " + std::to_string(space) +
                             " message tuples, above the guard",
                         space);
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t w = 0; w < space; ++w) ++counts[s.storage(n, w)];
  return entropy_bits(counts, space);
}

// H(A_n^{(q)}) in bits for a fixed query.
double answer_entropy_bits(const SchemeSpec& s, int n, std::int64_t q, std::int64_t guard) {
  if (s.routing) {
    std::set<int> distinct;
    for (int slot : s.routing->answer_source[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)])
      distinct.insert(s.routing->storage_source[static_cast<std::size_t>(n)][static_cast<std::size_t>(slot)]);
    return static_cast<double>(distinct.size()) *
           std::log2(static_cast<double>(s.params.message_alphabet));
  }
  const std::int64_t space = s.message_space();
  if (space > guard)
    throw SizeGuardError("answer entropy needs " + std::to_string(space) +
                             " message tuples, above the guard",
                         space);
  std::map<std::vector<int>, std::int64_t> counts;
  for (std::int64_t w = 0; w < space; ++w) ++counts[s.answer(n, q, s.storage(n, w))];
  return entropy_bits(counts, space);
}

}  // namespace

CostReport measure_costs(const SchemeSpec& s, std::int64_t guard) {
  check_params(s.params);
  const int N = s.params.databases;
  const int K = s.params.messages;
  const int L = s.params.length;
  const double log_x = std::log2(static_cast<double>(s.params.message_alphabet));
  const double log_y = std::log2(static_cast<double>(s.params.answer_alphabet));
  const auto y_over_x = exact_log(Int(s.params.answer_alphabet), Int(s.params.message_alphabet));

  CostReport report;
  report.alpha_n.resize(static_cast<std::size_t>(N));
  report.beta_n.resize(static_cast<std::size_t>(N));
  report.alpha_info_n.resize(static_cast<std::size_t>(N));
  report.beta_info_n.resize(static_cast<std::size_t>(N));

  for (int n = 0; n < N; ++n) {
    // operational storage
    auto& alpha = report.alpha_n[static_cast<std::size_t>(n)];
    const std::int64_t sn = s.storage_alphabet[static_cast<std::size_t>(n)];
    if (auto t = exact_log(Int(sn), Int(s.params.message_alphabet)))
      alpha.exact = *t / L;
    alpha.approx = std::log2(static_cast<double>(sn)) / (L * log_x);

    // operational download: expected answer length must not depend on k
    Rational expected_len;
    for (int k = 0; k < K; ++k) {
      std::int64_t total = 0;
      for (std::int64_t f = 0; f < s.key_count; ++f)
        total += s.answer_length(n, s.query(n, k, f));
      const Rational e(total, s.key_count);
      if (k == 0) {
        expected_len = e;
      } else if (e != expected_len) {
        throw std::runtime_error("database " + std::to_string(n + 1) +
                                 ": expected answer length depends on the desired index");
      }
    }
    auto& beta = report.beta_n[static_cast<std::size_t>(n)];
    if (y_over_x) beta.exact = *y_over_x * expected_len / L;
    beta.approx = log_y * rational_to_double(expected_len) / (L * log_x);

    // informational costs
    report.alpha_info_n[static_cast<std::size_t>(n)] =
        storage_entropy_bits(s, n, guard) / (L * log_x);
    std::map<std::int64_t, double> answer_h;
    double beta_info = 0.0;
    for (std::int64_t f = 0; f < s.key_count; ++f) {
      const std::int64_t q = s.query(n, 0, f);
      auto it = answer_h.find(q);
      if (it == answer_h.end()) it = answer_h.emplace(q, answer_entropy_bits(s, n, q, guard)).first;
      beta_info += it->second;
    }
    report.beta_info_n[static_cast<std::size_t>(n)] =
        beta_info / static_cast<double>(s.key_count) / (L * log_x);
  }

  // per-node averages
  auto average = [&](const std::vector<CostValue>& per_db) {
    CostValue out;
    Rational sum_exact = 0;
    bool all_exact = true;
    double sum = 0.0;
    for (const auto& v : per_db) {
      sum += v.approx;
      if (v.exact) sum_exact += *v.exact; else all_exact = false;
    }
    out.approx = sum / static_cast<double>(N);
    if (all_exact) out.exact = sum_exact / N;
    return out;
  };
  report.alpha = average(report.alpha_n);
  report.beta = average(report.beta_n);
  report.alpha_info =
      std::accumulate(report.alpha_info_n.begin(), report.alpha_info_n.end(), 0.0) / N;
  report.beta_info =
      std::accumulate(report.beta_info_n.begin(), report.beta_info_n.end(), 0.0) / N;
  return report;
}

VerificationReport verify_scheme(const SchemeSpec& s, std::int64_t guard) {
  VerificationReport report;
  report.correctness = verify_correctness(s, guard);
  report.privacy = verify_privacy(s, guard);
  report.cost = measure_costs(s, guard);
  return report;
}

namespace {

// Installs storage/answer/reconstruct callables from the routing tables.
void install_routing_functions(SchemeSpec& s) {
  const SymbolRouting& r = *s.routing;
  const std::int64_t x = s.params.message_alphabet;
  const int total = s.params.messages * s.params.length;
  s.storage = [r, x, total](int n, std::int64_t msg) {
    const auto& sources = r.storage_source[static_cast<std::size_t>(n)];
    std::int64_t value = 0;
    for (int src : sources) value = value * x + digit_at(msg, x, total, src);
    return value;
  };
  s.answer = [r, x](int n, std::int64_t q, std::int64_t stored) {
    const auto& sources = r.storage_source[static_cast<std::size_t>(n)];
    const auto& slots = r.answer_source[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
    const int m = static_cast<int>(sources.size());
    std::vector<int> out;
    out.reserve(slots.size());
    for (int slot : slots) out.push_back(digit_at(stored, x, m, slot));
    return out;
  };
  s.reconstruct = [r](const std::vector<std::vector<int>>& answers, int k, std::int64_t f) {
    const auto& routes = r.recon_source[static_cast<std::size_t>(k)][static_cast<std::size_t>(f)];
    std::vector<int> out;
    out.reserve(routes.size());
    for (const auto& [n, pos] : routes)
      out.push_back(answers[static_cast<std::size_t>(n)][static_cast<std::size_t>(pos)]);
    return out;
  };
}

}  // namespace

SchemeSpec builtin_download_all(int databases, int messages, int length,
                                std::int64_t message_alphabet) {
  SchemeSpec s;
  s.name = "download-all";
  s.params = {databases, messages, length, message_alphabet, message_alphabet};
  check_params(s.params);
  const int total = messages * length;
  if (total % databases != 0) {
    const int g = std::gcd(databases, messages);
    throw std::invalid_argument(
        "N must divide K*L for the symbol partition; try L = " +
        std::to_string(databases / g));
  }
  const int per_db = total / databases;
  s.key_count = 1;
  s.storage_alphabet.assign(static_cast<std::size_t>(databases),
                            checked_pow(message_alphabet, per_db, "storage alphabet"));
  s.query_count.assign(static_cast<std::size_t>(databases), 1);
  s.query = [](int, int, std::int64_t) { return std::int64_t{0}; };
  s.answer_length = [per_db](int, std::int64_t) { return per_db; };

  SymbolRouting r;
  r.storage_source.resize(static_cast<std::size_t>(databases));
  r.answer_source.resize(static_cast<std::size_t>(databases));
  for (int n = 0; n < databases; ++n) {
    for (int j = 0; j < per_db; ++j)
      r.storage_source[static_cast<std::size_t>(n)].push_back(n * per_db + j);
    std::vector<int> full(static_cast<std::size_t>(per_db));
    std::iota(full.begin(), full.end(), 0);
    r.answer_source[static_cast<std::size_t>(n)].push_back(std::move(full));
  }
  r.recon_source.resize(static_cast<std::size_t>(messages));
  for (int k = 0; k < messages; ++k) {
    std::vector<std::pair<int, int>> routes;
    for (int l = 0; l < length; ++l) {
      const int flat = k * length + l;
      routes.emplace_back(flat / per_db, flat % per_db);
    }
    r.recon_source[static_cast<std::size_t>(k)].push_back(std::move(routes));
  }
  s.routing = std::move(r);
  install_routing_functions(s);
  return s;
}

SchemeSpec builtin_xor2(int messages, int length) {
  SchemeSpec s;
  s.name = "xor2";
  s.params = {2, messages, length, 2, 2};
  check_params(s.params);
  if (messages > 20) throw std::invalid_argument("xor2 key space needs K <= 20");
  const int total = messages * length;
  const std::int64_t replicated = checked_pow(2, total, "replicated storage");

  s.key_count = std::int64_t{1} << messages;
  s.storage_alphabet = {replicated, replicated};
  s.query_count = {s.key_count, s.key_count};
  s.storage = [](int, std::int64_t msg) { return msg; };
  s.query = [](int n, int k, std::int64_t f) {
    return n == 0 ? f : (f ^ (std::int64_t{1} << k));
  };
  s.answer_length = [length](int, std::int64_t) { return length; };
  s.answer = [messages, length, total](int, std::int64_t q, std::int64_t stored) {
    std::vector<int> out(static_cast<std::size_t>(length), 0);
    for (int i = 0; i < messages; ++i) {
      if (!(q & (std::int64_t{1} << i))) continue;
      for (int l = 0; l < length; ++l)
        out[static_cast<std::size_t>(l)] ^= digit_at(stored, 2, total, i * length + l);
    }
    return out;
  };
  s.reconstruct = [length](const std::vector<std::vector<int>>& answers, int, std::int64_t) {
    std::vector<int> out(static_cast<std::size_t>(length));
    for (int l = 0; l < length; ++l)
      out[static_cast<std::size_t>(l)] = answers[0][static_cast<std::size_t>(l)] ^
                                         answers[1][static_cast<std::size_t>(l)];
    return out;
  };
  return s;
}

SchemeSpec relabel_messages(const SchemeSpec& s, const std::vector<int>& perm) {
  const int K = s.params.messages;
  if (static_cast<int>(perm.size()) != K)
    throw std::invalid_argument("permutation size must equal the message count");
  std::vector<int> inverse(static_cast<std::size_t>(K), -1);
  for (int k = 0; k < K; ++k) {
    if (perm[static_cast<std::size_t>(k)] < 0 || perm[static_cast<std::size_t>(k)] >= K ||
        inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] != -1)
      throw std::invalid_argument("not a permutation of 0..K-1");
    inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = k;
  }

  SchemeSpec out = s;
  out.name = s.name + "+relabel";
  const int L = s.params.length;
  const int total = K * L;
  const std::int64_t x = s.params.message_alphabet;
  const auto base_storage = s.storage;
  const auto base_query = s.query;
  const auto base_recon = s.reconstruct;
  const auto permv = perm;

  // old flat position j reads the new-layout digit at old_to_new[j]
  std::vector<int> old_to_new(static_cast<std::size_t>(total));
  for (int i = 0; i < K; ++i)
    for (int l = 0; l < L; ++l)
      old_to_new[static_cast<std::size_t>(i * L + l)] =
          inverse[static_cast<std::size_t>(i)] * L + l;
  auto to_old_index = [old_to_new, x, total](std::int64_t msg) {
    std::int64_t old_index = 0;
    for (int j = 0; j < total; ++j)
      old_index = old_index * x + digit_at(msg, x, total, old_to_new[static_cast<std::size_t>(j)]);
    return old_index;
  };
  out.storage = [base_storage, to_old_index](int n, std::int64_t msg) {
    return base_storage(n, to_old_index(msg));
  };
  out.query = [base_query, permv](int n, int k, std::int64_t f) {
    return base_query(n, permv[static_cast<std::size_t>(k)], f);
  };
  out.reconstruct = [base_recon, permv](const std::vector<std::vector<int>>& answers, int k,
                                        std::int64_t f) {
    return base_recon(answers, permv[static_cast<std::size_t>(k)], f);
  };
  if (s.routing) {
    SymbolRouting r = *s.routing;
    for (auto& per_db : r.storage_source)
      for (int& src : per_db) {
        const int old_k = src / L;
        src = inverse[static_cast<std::size_t>(old_k)] * L + src % L;
      }
    for (int k = 0; k < K; ++k)
      r.recon_source[static_cast<std::size_t>(k)] =
          s.routing->recon_source[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    out.routing = std::move(r);
    install_routing_functions(out);
  }
  return out;
}

BridgeVariable BridgeVariable::message(int k, std::string label) {
  return {Kind::Message, k, 0, 0, std::move(label)};
}
BridgeVariable BridgeVariable::storage(int n, std::string label) {
  return {Kind::Storage, n, 0, 0, std::move(label)};
}
BridgeVariable BridgeVariable::fixed_answer(int n, std::int64_t q, std::string label) {
  return {Kind::FixedAnswer, n, q, 0, std::move(label)};
}
BridgeVariable BridgeVariable::keyed_answer(int n, int k, std::string label) {
  return {Kind::KeyedAnswer, n, 0, k, std::move(label)};
}

EntropyVector scheme_entropy_bridge(const SchemeSpec& s,
                                    const std::vector<BridgeVariable>& selection,
                                    std::int64_t guard) {
  check_params(s.params);
  if (selection.empty()) throw std::invalid_argument("empty selection");

  std::vector<std::string> labels;
  std::vector<std::int64_t> alphabets;
  for (const auto& v : selection) {
    labels.push_back(v.label);
    switch (v.kind) {
      case BridgeVariable::Kind::Message:
        if (v.index < 1 || v.index > s.params.messages)
          throw std::invalid_argument("message index out of range");
        alphabets.push_back(checked_pow(s.params.message_alphabet, s.params.length, "message"));
        break;
      case BridgeVariable::Kind::Storage:
        if (v.index < 1 || v.index > s.params.databases)
          throw std::invalid_argument("database index out of range");
        alphabets.push_back(s.storage_alphabet[static_cast<std::size_t>(v.index - 1)]);
        break;
      case BridgeVariable::Kind::FixedAnswer: {
        if (v.index < 1 || v.index > s.params.databases)
          throw std::invalid_argument("database index out of range");
        const int len = s.answer_length(v.index - 1, v.query);
        alphabets.push_back(checked_pow(s.params.answer_alphabet, len, "answer"));
        break;
      }
      case BridgeVariable::Kind::KeyedAnswer:
        throw std::invalid_argument(
            "selection references a key-dependent answer; fix the query explicitly");
    }
  }

  const std::int64_t space = s.message_space();
  if (space > guard)
    throw SizeGuardError("bridge enumeration needs " + std::to_string(space) +
                             " message tuples, above the guard",
                         space);
  std::int64_t product = 1;
  for (std::int64_t a : alphabets) {
    if (product > guard / a)
      throw SizeGuardError("bridge outcome space exceeds the guard", product);
    product *= a;
  }

  std::vector<Rational> table(static_cast<std::size_t>(product), Rational(0));
  const Rational p(1, space);
  for (std::int64_t w = 0; w < space; ++w) {
    std::int64_t key = 0;
    for (std::size_t i = 0; i < selection.size(); ++i) {
      const auto& v = selection[i];
      std::int64_t value = 0;
      switch (v.kind) {
        case BridgeVariable::Kind::Message: {
          for (int symbol : s.message_symbols(w, v.index - 1))
            value = value * s.params.message_alphabet + symbol;
          break;
        }
        case BridgeVariable::Kind::Storage:
          value = s.storage(v.index - 1, w);
          break;
        case BridgeVariable::Kind::FixedAnswer: {
          const auto a = s.answer(v.index - 1, v.query, s.storage(v.index - 1, w));
          for (int symbol : a) value = value * s.params.answer_alphabet + symbol;
          break;
        }
        case BridgeVariable::Kind::KeyedAnswer:
          break;  // unreachable
      }
      key = key * alphabets[i] + value;
    }
    table[static_cast<std::size_t>(key)] += p;
  }

  JointDistribution d(GroundSet(labels), alphabets, std::move(table));
  const double unit_bits =
      s.params.length * std::log2(static_cast<double>(s.params.message_alphabet));
  return entropy_vector_from_distribution(d, unit_bits);
}

}  // namespace pirbound

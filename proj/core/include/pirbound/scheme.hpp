#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pirbound/joint_distribution.hpp"
#include "pirbound/rational.hpp"

namespace pirbound {

struct SchemeParams {
  int databases = 1;                 // N
  int messages = 1;                  // K
  int length = 1;                    // L symbols per message
  std::int64_t message_alphabet = 2; // |X| >= 2
  std::int64_t answer_alphabet = 2;  // |Y| >= 2
};

// Symbol-routing structure: every stored and shipped symbol is a copy of one
// message symbol. Present on projection-style schemes; lets the verifier prove
// correctness for the whole message space by composing routes, and lets the
// cost meter compute storage/answer entropies exactly.
struct SymbolRouting {
  // storage_source[n][j]: flat message-symbol index stored at slot j of db n
  std::vector<std::vector<int>> storage_source;
  // answer_source[n][q][i]: storage slot shipped as answer symbol i under query q
  std::vector<std::vector<std::vector<int>>> answer_source;
  // recon_source[k][f][l]: (database, answer position) yielding symbol l of message k
  std::vector<std::vector<std::vector<std::pair<int, int>>>> recon_source;
};

// Executable PIR storage code: storage/query/answer-length/answer functions
// plus reconstruction, over explicit finite domains. Message tuples are
// indexed big-endian: flat symbol j = k*L + l has place value |X|^(KL-1-j).
struct SchemeSpec {
  std::string name;
  SchemeParams params;
  std::int64_t key_count = 1;                 // |F|, uniform key
  std::vector<std::int64_t> storage_alphabet; // |S_n| per database
  std::vector<std::int64_t> query_count;      // |Q_n| per database

  std::function<std::int64_t(int n, std::int64_t msg)> storage;
  std::function<std::int64_t(int n, int k, std::int64_t f)> query;  // k is 0-based
  std::function<int(int n, std::int64_t q)> answer_length;
  std::function<std::vector<int>(int n, std::int64_t q, std::int64_t stored)> answer;
  std::function<std::vector<int>(const std::vector<std::vector<int>>& answers, int k,
                                 std::int64_t f)> reconstruct;

  std::optional<SymbolRouting> routing;

  std::int64_t message_space() const;  // |X|^(KL), overflow-checked
  std::vector<int> message_symbols(std::int64_t msg, int k) const;  // L symbols of message k
};

inline constexpr std::int64_t kDefaultEnumerationGuard = 10'000'000;

struct SizeGuardError : std::runtime_error {
  SizeGuardError(const std::string& what, std::int64_t count)
      : std::runtime_error(what), count(count) {}
  std::int64_t count;
};

struct Counterexample {
  std::int64_t message_index = 0;
  std::int64_t key = 0;
  int k = 0;  // 0-based desired index
  std::vector<int> expected;
  std::vector<int> got;
};

struct CorrectnessReport {
  bool passed = false;
  enum class Method { Enumeration, Structural } method = Method::Enumeration;
  std::int64_t cases_checked = 0;
  std::optional<Counterexample> counterexample;
};

// Exhaustive correctness: every (message tuple, key, desired index) must
// reconstruct exactly. Enumerates when |X|^(KL) * |F| * K fits the guard;
// falls back to the routing proof (equivalent to enumeration for projection
// schemes, where reconstruction correctness is per-symbol route identity);
// otherwise refuses, naming the count.
CorrectnessReport verify_correctness(const SchemeSpec& s,
                                     std::int64_t guard = kDefaultEnumerationGuard);

struct PrivacyReport {
  bool passed = false;
  // distributions[n][k]: exact query distribution of database n under index k
  std::vector<std::vector<std::map<std::int64_t, Rational>>> distributions;
  std::string detail;  // first mismatch, empty when passed
};

// Exact per-database query distributions over the uniform key, compared across
// desired indices as rationals.
PrivacyReport verify_privacy(const SchemeSpec& s,
                             std::int64_t guard = kDefaultEnumerationGuard);

// Operational cost: exact rational whenever the alphabets are compatible
// powers, plus a float rendering either way.
struct CostValue {
  std::optional<Rational> exact;
  double approx = 0.0;
};

struct CostReport {
  std::vector<CostValue> alpha_n;  // log2|S_n| / (L log2|X|)
  std::vector<CostValue> beta_n;   // log2|Y| E[len_n] / (L log2|X|)
  std::vector<double> alpha_info_n;  // H(S_n) / (L log2|X|)
  std::vector<double> beta_info_n;   // H(A_n | F) / (L log2|X|)
  CostValue alpha, beta;             // per-node averages
  double alpha_info = 0.0, beta_info = 0.0;
};

CostReport measure_costs(const SchemeSpec& s,
                         std::int64_t guard = kDefaultEnumerationGuard);

struct VerificationReport {
  CorrectnessReport correctness;
  PrivacyReport privacy;
  CostReport cost;
};

VerificationReport verify_scheme(const SchemeSpec& s,
                                 std::int64_t guard = kDefaultEnumerationGuard);

// Contiguous symbol partition of the concatenated messages across N databases
// (no redundancy), one constant query each, answers ship the stored block.
// Requires N | K*L; the error suggests a compatible L otherwise.
SchemeSpec builtin_download_all(int databases, int messages, int length,
                                std::int64_t message_alphabet = 2);

// Two-database XOR scheme over binary symbols: key = uniform subset T of
// {1..K}, queries (T, T xor {k}), answers = bitwise XOR of the indexed
// messages (fixed length L), reconstruction XORs the two answers. Storage is
// full replication.
SchemeSpec builtin_xor2(int messages, int length = 1);

// Message relabeling: new message k is old message perm[k] (0-based
// permutation). Costs and verification outcomes are invariant under this.
SchemeSpec relabel_messages(const SchemeSpec& s, const std::vector<int>& perm);

// Variable selection for the entropy bridge.
struct BridgeVariable {
  enum class Kind { Message, Storage, FixedAnswer, KeyedAnswer };
  Kind kind = Kind::Message;
  int index = 1;          // 1-based message or database number
  std::int64_t query = 0; // FixedAnswer only
  int k = 0;              // KeyedAnswer only (rejected by the bridge)
  std::string label;

  static BridgeVariable message(int k, std::string label);
  static BridgeVariable storage(int n, std::string label);
  static BridgeVariable fixed_answer(int n, std::int64_t q, std::string label);
  static BridgeVariable keyed_answer(int n, int k, std::string label);
};

// Exact joint distribution of the selected deterministic variables under
// uniform messages, folded into an entropy vector in message units
// (L log2|X| = 1). Key-dependent selections are rejected.
EntropyVector scheme_entropy_bridge(const SchemeSpec& s,
                                    const std::vector<BridgeVariable>& selection,
                                    std::int64_t guard = kDefaultEnumerationGuard);

}  // namespace pirbound

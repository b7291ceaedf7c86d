#include "pirbound/serialize.hpp"

#include <json.hpp>

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace pirbound {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

json form_to_json(const GroundSet& g, const LinearForm& f) {
  json out;
  json entropy = json::array();
  for (const auto& [id, coeff] : f.entropy)
    entropy.push_back({g.subset_name(id), rational_string(coeff)});
  json scalars = json::array();
  for (const auto& [name, coeff] : f.scalars)
    scalars.push_back({name, rational_string(coeff)});
  out["entropy"] = std::move(entropy);
  out["scalars"] = std::move(scalars);
  out["constant"] = rational_string(f.constant);
  return out;
}

LinearForm form_from_json(const GroundSet& g, const json& j) {
  LinearForm f;
  for (const auto& term : j.at("entropy"))
    f.add_entropy(SubsetId{g.parse_subset(term.at(0).get<std::string>())},
                  parse_rational(term.at(1).get<std::string>()));
  for (const auto& term : j.at("scalars"))
    f.add_scalar(term.at(0).get<std::string>(), parse_rational(term.at(1).get<std::string>()));
  f.constant = parse_rational(j.at("constant").get<std::string>());
  return f;
}

json parse_document(const std::string& text, const char* expected_type) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("document parse failure: ") + e.what());
  }
  if (!j.is_object() || j.value("type", "") != expected_type)
    throw std::invalid_argument(std::string("document is not a ") + expected_type);
  if (j.value("version", 0) != kSchemaVersion)
    throw std::invalid_argument("unsupported document version");
  return j;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string model_to_json(const LinearProgram& program) {
  json j;
  j["version"] = kSchemaVersion;
  j["type"] = "entropy-lp-model";
  j["ground_set"] = program.ground.names();
  j["scalars"] = program.scalars;
  j["objective"] = form_to_json(program.ground, program.objective);
  json rows = json::array();
  for (const auto& c : program.constraints) {
    json row;
    row["tag"] = c.tag;
    row["sense"] = c.sense == Sense::EqualZero ? "=0" : ">=0";
    const json form = form_to_json(program.ground, c.form);
    row["entropy"] = form.at("entropy");
    row["scalars"] = form.at("scalars");
    row["constant"] = form.at("constant");
    rows.push_back(std::move(row));
  }
  j["constraints"] = std::move(rows);
  return j.dump(1);
}

LinearProgram model_from_json(const std::string& text) {
  const json j = parse_document(text, "entropy-lp-model");
  LinearProgram p;
  try {
    p.ground = GroundSet(j.at("ground_set").get<std::vector<std::string>>());
    p.scalars = j.at("scalars").get<std::vector<std::string>>();
    p.objective = form_from_json(p.ground, j.at("objective"));
    for (const auto& row : j.at("constraints")) {
      Constraint c;
      c.tag = row.at("tag").get<std::string>();
      const std::string sense = row.at("sense").get<std::string>();
      if (sense == "=0") c.sense = Sense::EqualZero;
      else if (sense == ">=0") c.sense = Sense::GreaterEqualZero;
      else throw std::invalid_argument("unknown sense '" + sense + "'");
      c.form = form_from_json(p.ground, row);
      p.constraints.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed model document: ") + e.what());
  }
  p.validate();
  return p;
}

std::string model_hash(const LinearProgram& program) {
  const std::uint64_t h = fnv1a64(model_to_json(program));
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buffer;
}

std::string certificate_to_json(const DualCertificate& cert, const std::string& hash) {
  json j;
  j["version"] = kSchemaVersion;
  j["type"] = "entropy-lp-certificate";
  j["model_hash"] = hash;
  j["certified_bound"] = rational_string(cert.certified_bound);
  json weights = json::array();
  for (const auto& [tag, w] : cert.weights) {
    json entry;
    entry["tag"] = tag;
    entry["p"] = numerator(w).str();
    entry["q"] = denominator(w).str();
    weights.push_back(std::move(entry));
  }
  j["weights"] = std::move(weights);
  return j.dump(1);
}

LoadedCertificate certificate_from_json(const std::string& text) {
  const json j = parse_document(text, "entropy-lp-certificate");
  LoadedCertificate out;
  try {
    out.model_hash = j.at("model_hash").get<std::string>();
    out.certificate.certified_bound =
        parse_rational(j.at("certified_bound").get<std::string>());
    for (const auto& entry : j.at("weights")) {
      const Rational w(Int(entry.at("p").get<std::string>()),
                       Int(entry.at("q").get<std::string>()));
      const auto [it, inserted] =
          out.certificate.weights.emplace(entry.at("tag").get<std::string>(), w);
      if (!inserted) throw std::invalid_argument("duplicate weight tag '" + it->first + "'");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate document: ") + e.what());
  }
  return out;
}

namespace {

struct SchemeTables {
  SchemeParams params;
  std::int64_t key_count = 1;
  std::vector<std::int64_t> storage_alphabet;
  std::vector<std::int64_t> query_count;
  std::vector<std::vector<std::int64_t>> storage;              // [n][msg]
  std::vector<std::vector<std::vector<std::int64_t>>> query;   // [n][k][f]
  std::vector<std::vector<int>> answer_length;                 // [n][q]
  std::vector<std::vector<std::vector<std::vector<int>>>> answer;  // [n][q][stored]
  std::vector<std::vector<std::vector<std::int64_t>>> recon;   // [k][f][combo] -> message value
};

// big-endian value of a symbol string over the given radix
std::int64_t encode_symbols(const std::vector<int>& symbols, std::int64_t radix) {
  std::int64_t v = 0;
  for (int s : symbols) v = v * radix + s;
  return v;
}

std::vector<int> decode_symbols(std::int64_t value, std::int64_t radix, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int i = count - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(value % radix);
    value /= radix;
  }
  return out;
}

}  // namespace

std::string scheme_to_json(const SchemeSpec& s, std::int64_t guard) {
  const std::int64_t space = s.message_space();
  if (space * s.params.databases > guard)
    throw SizeGuardError("scheme tables need " + std::to_string(space * s.params.databases) +
                             " storage entries, above the guard",
                         space * s.params.databases);

  json j;
  j["version"] = kSchemaVersion;
  j["type"] = "pir-scheme";
  j["name"] = s.name;
  j["params"] = {{"databases", s.params.databases},
                 {"messages", s.params.messages},
                 {"length", s.params.length},
                 {"message_alphabet", s.params.message_alphabet},
                 {"answer_alphabet", s.params.answer_alphabet}};
  j["key_space"] = s.key_count;

  json tables;
  tables["storage_alphabet"] = s.storage_alphabet;
  tables["query_count"] = s.query_count;

  json storage = json::array();
  for (int n = 0; n < s.params.databases; ++n) {
    json per_db = json::array();
    for (std::int64_t w = 0; w < space; ++w) per_db.push_back(s.storage(n, w));
    storage.push_back(std::move(per_db));
  }
  tables["storage"] = std::move(storage);

  json query = json::array();
  for (int n = 0; n < s.params.databases; ++n) {
    json per_db = json::array();
    for (int k = 0; k < s.params.messages; ++k) {
      json per_k = json::array();
      for (std::int64_t f = 0; f < s.key_count; ++f) per_k.push_back(s.query(n, k, f));
      per_db.push_back(std::move(per_k));
    }
    query.push_back(std::move(per_db));
  }
  tables["query"] = std::move(query);

  json lengths = json::array();
  json answers = json::array();
  for (int n = 0; n < s.params.databases; ++n) {
    json per_db_len = json::array();
    json per_db_ans = json::array();
    const std::int64_t sn = s.storage_alphabet[static_cast<std::size_t>(n)];
    if (sn * s.query_count[static_cast<std::size_t>(n)] > guard)
      throw SizeGuardError("answer table exceeds the guard", sn);
    for (std::int64_t q = 0; q < s.query_count[static_cast<std::size_t>(n)]; ++q) {
      per_db_len.push_back(s.answer_length(n, q));
      json per_q = json::array();
      for (std::int64_t stored = 0; stored < sn; ++stored)
        per_q.push_back(s.answer(n, q, stored));
      per_db_ans.push_back(std::move(per_q));
    }
    lengths.push_back(std::move(per_db_len));
    answers.push_back(std::move(per_db_ans));
  }
  tables["answer_length"] = std::move(lengths);
  tables["answer"] = std::move(answers);

  json recon = json::array();
  for (int k = 0; k < s.params.messages; ++k) {
    json per_k = json::array();
    for (std::int64_t f = 0; f < s.key_count; ++f) {
      std::vector<std::int64_t> radices(static_cast<std::size_t>(s.params.databases));
      std::int64_t combos = 1;
      for (int n = 0; n < s.params.databases; ++n) {
        const int len = s.answer_length(n, s.query(n, k, f));
        radices[static_cast<std::size_t>(n)] = 1;
        for (int i = 0; i < len; ++i)
          radices[static_cast<std::size_t>(n)] *= s.params.answer_alphabet;
        if (combos > guard / radices[static_cast<std::size_t>(n)])
          throw SizeGuardError("reconstruction table exceeds the guard", combos);
        combos *= radices[static_cast<std::size_t>(n)];
      }
      json per_f = json::array();
      for (std::int64_t combo = 0; combo < combos; ++combo) {
        std::vector<std::vector<int>> answer_tuple(static_cast<std::size_t>(s.params.databases));
        std::int64_t rest = combo;
        for (int n = s.params.databases - 1; n >= 0; --n) {
          const std::int64_t radix = radices[static_cast<std::size_t>(n)];
          const int len = s.answer_length(n, s.query(n, k, f));
          answer_tuple[static_cast<std::size_t>(n)] =
              decode_symbols(rest % radix, s.params.answer_alphabet, len);
          rest /= radix;
        }
        per_f.push_back(encode_symbols(s.reconstruct(answer_tuple, k, f),
                                       s.params.message_alphabet));
      }
      per_k.push_back(std::move(per_f));
    }
    recon.push_back(std::move(per_k));
  }
  tables["reconstruct"] = std::move(recon);

  j["tables"] = std::move(tables);
  return j.dump(1);
}

SchemeSpec scheme_from_json(const std::string& text) {
  const json j = parse_document(text, "pir-scheme");
  auto t = std::make_shared<SchemeTables>();
  SchemeSpec s;
  try {
    const json& params = j.at("params");
    s.name = j.value("name", "scheme");
    s.params.databases = params.at("databases").get<int>();
    s.params.messages = params.at("messages").get<int>();
    s.params.length = params.at("length").get<int>();
    s.params.message_alphabet = params.at("message_alphabet").get<std::int64_t>();
    s.params.answer_alphabet = params.at("answer_alphabet").get<std::int64_t>();
    s.key_count = j.at("key_space").get<std::int64_t>();

    const json& tables = j.at("tables");
    s.storage_alphabet = tables.at("storage_alphabet").get<std::vector<std::int64_t>>();
    s.query_count = tables.at("query_count").get<std::vector<std::int64_t>>();
    t->params = s.params;
    t->key_count = s.key_count;
    t->storage = tables.at("storage").get<std::vector<std::vector<std::int64_t>>>();
    t->query = tables.at("query").get<std::vector<std::vector<std::vector<std::int64_t>>>>();
    t->answer_length = tables.at("answer_length").get<std::vector<std::vector<int>>>();
    t->answer =
        tables.at("answer").get<std::vector<std::vector<std::vector<std::vector<int>>>>>();
    t->recon = tables.at("reconstruct").get<std::vector<std::vector<std::vector<std::int64_t>>>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed scheme document: ") + e.what());
  }

  s.storage = [t](int n, std::int64_t msg) {
    return t->storage.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(msg));
  };
  s.query = [t](int n, int k, std::int64_t f) {
    return t->query.at(static_cast<std::size_t>(n))
        .at(static_cast<std::size_t>(k))
        .at(static_cast<std::size_t>(f));
  };
  s.answer_length = [t](int n, std::int64_t q) {
    return t->answer_length.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(q));
  };
  s.answer = [t](int n, std::int64_t q, std::int64_t stored) {
    return t->answer.at(static_cast<std::size_t>(n))
        .at(static_cast<std::size_t>(q))
        .at(static_cast<std::size_t>(stored));
  };
  s.reconstruct = [t](const std::vector<std::vector<int>>& answers, int k, std::int64_t f) {
    std::int64_t combo = 0;
    for (int n = 0; n < t->params.databases; ++n) {
      std::int64_t radix = 1;
      for (std::size_t i = 0; i < answers[static_cast<std::size_t>(n)].size(); ++i)
        radix *= t->params.answer_alphabet;
      combo = combo * radix +
              encode_symbols(answers[static_cast<std::size_t>(n)], t->params.answer_alphabet);
    }
    const std::int64_t value = t->recon.at(static_cast<std::size_t>(k))
                                   .at(static_cast<std::size_t>(f))
                                   .at(static_cast<std::size_t>(combo));
    return decode_symbols(value, t->params.message_alphabet, t->params.length);
  };
  return s;
}

}  // namespace pirbound

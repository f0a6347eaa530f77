#pragma once

// JSON reports and their offline re-verification.  Needs nlohmann/json.
//
// A classify report looks like
//   {"schema": 1, "tool": "sympl 1.0.0", "kind": "classify",
//    "config": {...}, "config_hash": "<16 hex digits>",
//    "status": "certified", "R": [...], "Lambda": [...],
//    "generators": [labels], "lower_certs": [{"root", "scalar", "word"}],
//    "upper_checks": [{"generator", "ok"}], "uniqueness": {...}, ...}
// Words are lists of signed generator numbers: +k is generator k-1 of
// "generators", -k its inverse.  Matrices are lists of rows of element
// names.

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympl/catalog.hpp"
#include "sympl/certificate.hpp"
#include "sympl/classify.hpp"
#include "sympl/closure.hpp"
#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/normalizer.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"
#include "sympl/symplectic.hpp"
#include "sympl/word.hpp"

namespace sympl {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
inline constexpr char const* kToolVersion = "sympl 1.0.0";

// ---------------------------------------------------------------------------
// Generator syntax
//
//   T(i,j,xi)        elementary transvection, i, j in ±1..±n
//   x(root,xi)       root element, root as in "e1-e2" or "2e3"
//   w(root)          Weyl element x_a(1) x_-a(1) x_a(1)
//   [a,b,..;c,d,..]  explicit matrix, rows separated by ';'
// Factors may be joined by '*'.

namespace detail {

inline std::string strip(std::string const& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_top(std::string const& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') {
      ++depth;
    } else if (c == ')' || c == ']') {
      --depth;
    }
    if (c == sep && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

inline int parse_index(std::string const& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) {
      throw ParseError("bad index '" + s + "'", 0);
    }
    return v;
  } catch (std::logic_error const&) {
    throw ParseError("bad index '" + s + "'", 0);
  }
}

inline Matrix parse_factor(SpGroup const& g, std::string const& f) {
  Ring const& r = g.ring();
  int n = g.rank();
  if (f.size() >= 2 && f.front() == '[' && f.back() == ']') {
    auto rows = split_top(f.substr(1, f.size() - 2), ';');
    if (static_cast<int>(rows.size()) != g.dim()) {
      throw ParseError("matrix needs " + std::to_string(g.dim()) + " rows", 0);
    }
    Matrix m(g.dim());
    for (int i = 0; i < g.dim(); ++i) {
      auto cells = split_top(rows[static_cast<std::size_t>(i)], ',');
      if (static_cast<int>(cells.size()) != g.dim()) {
        throw ParseError("matrix row " + std::to_string(i + 1) + " needs "
                             + std::to_string(g.dim()) + " entries",
                         0);
      }
      for (int j = 0; j < g.dim(); ++j) {
        m.set(i, j, r.parse(cells[static_cast<std::size_t>(j)]));
      }
    }
    return m;
  }
  auto open = f.find('(');
  if (open == std::string::npos || f.back() != ')') {
    throw ParseError("cannot read generator '" + f + "'", 0);
  }
  std::string head = strip(f.substr(0, open));
  auto args = split_top(f.substr(open + 1, f.size() - open - 2), ',');
  if (head == "T" && args.size() == 3) {
    int i = parse_index(args[0]);
    int j = parse_index(args[1]);
    check_index(i, n);
    check_index(j, n);
    if (i == j) {
      throw ParseError("T(i,j,xi) needs i != j", 0);
    }
    return g.transvection(i, j, r.parse(args[2]));
  }
  if (head == "x" && args.size() == 2) {
    return g.root_element(Root::parse(args[0], n), r.parse(args[1]));
  }
  if (head == "w" && args.size() == 1) {
    return g.weyl_element(Root::parse(args[0], n));
  }
  throw ParseError("unknown generator form '" + f + "'", 0);
}

}  // namespace detail

inline Matrix parse_generator(SpGroup const& g, std::string const& text) {
  std::string t = detail::strip(text);
  if (t.empty()) {
    throw ParseError("empty generator", 0);
  }
  Matrix m = g.identity();
  for (auto const& f : detail::split_top(t, '*')) {
    m = g.mul(m, detail::parse_factor(g, f));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Conversions

inline json matrix_to_json(Ring const& r, Matrix const& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) {
      row.push_back(r.format(m.at(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(Ring const& r, json const& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ValidationError("matrix must have " + std::to_string(dim) + " rows");
  }
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) {
    auto const& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ValidationError("matrix row has the wrong length");
    }
    for (int k = 0; k < dim; ++k) {
      m.set(i, k, r.parse(row[static_cast<std::size_t>(k)].get<std::string>()));
    }
  }
  return m;
}

inline json set_to_json(Ring const& r, ElementSet const& s) {
  json out = json::array();
  for (auto x : to_elements(s)) {
    out.push_back(r.format(x));
  }
  return out;
}

inline ElementSet set_from_json(Ring const& r, json const& j) {
  ElementSet s;
  for (auto const& x : j) {
    s.set(r.parse(x.get<std::string>()).bits);
  }
  return s;
}

inline json word_to_json(Word const& w) { return json(w.letters()); }

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string config_hash(json const& config) {
  return hex64(fnv1a(config.dump()));
}

// Configuration block of a classify run.  The ring definition is embedded
// so a report can be checked without the catalog it came from.
inline json classify_config(SubgroupInput const& in,
                            std::vector<std::string> const& k_gens,
                            ClassifyOptions const& opt) {
  Ring const& r = *in.A;
  json c;
  c["command"] = "classify";
  c["ring"] = r.name();
  c["ring_definition"] = r.to_catalog();
  c["n"] = in.n;
  c["k_gens"] = k_gens;
  c["K"] = set_to_json(r, in.K.elements());
  json ex = json::array();
  for (auto const& m : in.extras) {
    ex.push_back(matrix_to_json(r, m));
  }
  c["extras"] = ex;
  c["max_depth"] = opt.max_depth;
  c["pool_cap"] = opt.pool_cap;
  return c;
}

inline json classify_report(SubgroupInput const& in,
                            SandwichReport const& rep, json const& config) {
  Ring const& r = *in.A;
  SpGroup g(in.A, in.n);
  SubgroupContext ctx(g, in.K, in.extras);
  json j;
  j["schema"] = kReportSchema;
  j["tool"] = kToolVersion;
  j["kind"] = "classify";
  j["config"] = config;
  j["config_hash"] = config_hash(config);
  j["status"] = to_string(rep.status);
  j["depth_used"] = rep.depth_used;
  if (rep.form_ring) {
    j["R"] = set_to_json(r, rep.form_ring->R().elements());
    j["Lambda"] = set_to_json(r, rep.form_ring->Lambda().elements());
  } else {
    j["R"] = nullptr;
    j["Lambda"] = nullptr;
  }
  j["short_levels"] = set_to_json(r, rep.short_levels);
  j["long_levels"] = set_to_json(r, rep.long_levels);
  j["generators"] = ctx.labels();
  json lower = json::array();
  for (auto const& c : rep.lower_certs) {
    lower.push_back({{"root", c.root.to_string()},
                     {"scalar", r.format(c.scalar)},
                     {"word", word_to_json(c.word)}});
  }
  j["lower_certs"] = lower;
  json upper = json::array();
  for (auto const& u : rep.upper_checks) {
    upper.push_back({{"generator", ctx.labels()[u.generator]}, {"ok", u.ok}});
  }
  j["upper_checks"] = upper;
  j["uniqueness"] = {{"status", to_string(rep.uniqueness)},
                     {"note", rep.uniqueness_note}};
  j["diagnostics"] = rep.diagnostics;
  j["harvest"] = {{"pool", rep.stats.pool},
                  {"root_elements", rep.stats.root_elements},
                  {"u1_factorizations", rep.stats.u1_factorizations},
                  {"uncoupled", rep.stats.uncoupled}};
  return j;
}

inline std::string classify_text(SubgroupInput const& in,
                                 SandwichReport const& rep) {
  Ring const& r = *in.A;
  std::ostringstream out;
  out << "status: " << to_string(rep.status) << " (depth " << rep.depth_used
      << ")\n";
  out << "short levels: " << format_set(r, rep.short_levels) << "\n";
  out << "long levels:  " << format_set(r, rep.long_levels) << "\n";
  if (rep.status == Status::kCertified) {
    out << "R = " << format_set(r, rep.form_ring->R().elements()) << "\n";
    out << "Lambda = " << format_set(r, rep.form_ring->Lambda().elements())
        << "\n";
    out << "lower certificates: " << rep.lower_certs.size() << "\n";
    out << "upper checks: " << rep.upper_checks.size() << " passed\n";
    out << "uniqueness: " << to_string(rep.uniqueness);
    if (!rep.uniqueness_note.empty()) {
      out << " (" << rep.uniqueness_note << ")";
    }
    out << "\n";
  } else {
    out << rep.diagnostics << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Recheck

struct RecheckResult {
  bool ok = true;
  std::vector<std::string> problems;
  std::size_t certificates = 0;
  std::size_t upper_checks = 0;

  void fail(std::string msg) {
    ok = false;
    problems.push_back(std::move(msg));
  }
};

// Re-verifies a classify report using only matrix arithmetic: the config
// hash, every lower certificate word, coverage of all Ep(R, Λ) generators,
// and the normalizer test for every generator of H.
inline RecheckResult recheck_report(json const& j) {
  RecheckResult res;
  if (j.value("schema", 0) != kReportSchema) {
    throw ValidationError("unsupported report schema");
  }
  if (j.value("kind", "") != "classify") {
    throw UsageError("only classify reports carry certificates");
  }
  json const& config = j.at("config");
  if (config_hash(config) != j.at("config_hash").get<std::string>()) {
    res.fail("config hash mismatch");
  }
  auto specs = parse_catalog(config.at("ring_definition").get<std::string>());
  if (specs.size() != 1) {
    throw ValidationError("report must embed exactly one ring");
  }
  RingPtr A = make_ring(specs[0]);
  Ring const& r = *A;
  int n = config.at("n").get<int>();
  SpGroup g(A, n);
  Subring K(A, set_from_json(r, config.at("K")));
  std::vector<Matrix> extras;
  for (auto const& m : config.at("extras")) {
    extras.push_back(matrix_from_json(r, m, g.dim()));
  }
  SubgroupContext ctx(g, K, extras);
  if (j.at("generators").get<std::vector<std::string>>() != ctx.labels()) {
    res.fail("generator list differs from the configuration");
  }
  if (j.at("status").get<std::string>() != "certified") {
    res.fail("report is not certified");
    return res;
  }
  Subring R(A, set_from_json(r, j.at("R")));
  FormRing fr(FormParameter(R, set_from_json(r, j.at("Lambda"))));
  if (!fr.contains_base(K)) {
    res.fail("K is not contained in Lambda");
  }
  if (!fr.Lambda().contains(r.one())) {
    res.fail("1 is not in Lambda");
    return res;
  }

  std::vector<std::pair<Root, std::uint8_t>> covered;
  std::size_t num_gens = ctx.generators().size();
  for (auto const& c : j.at("lower_certs")) {
    Root root = Root::parse(c.at("root").get<std::string>(), n);
    RingElt s = r.parse(c.at("scalar").get<std::string>());
    std::vector<Letter> letters = c.at("word").get<std::vector<Letter>>();
    bool in_range = true;
    for (Letter l : letters) {
      if (l == 0 || static_cast<std::size_t>(l < 0 ? -l : l) > num_gens) {
        in_range = false;
      }
    }
    if (!in_range) {
      res.fail("certificate for x_" + root.to_string() + "(" + r.format(s)
               + ") uses an unknown generator");
      continue;
    }
    if (!(ctx.evaluate(Word(letters)) == g.root_element(root, s))) {
      res.fail("certificate for x_" + root.to_string() + "(" + r.format(s)
               + ") does not evaluate to it");
      continue;
    }
    covered.emplace_back(root, s.bits);
    ++res.certificates;
  }
  for (auto const& x : g.ep_generators_labelled(fr)) {
    bool found = false;
    for (auto const& [root, bits] : covered) {
      if (root == x.root && bits == x.scalar.bits) {
        found = true;
        break;
      }
    }
    if (!found) {
      res.fail("no certificate for x_" + x.root.to_string() + "("
               + r.format(x.scalar) + ")");
    }
  }

  NormalizerTest test(g, fr);
  for (std::size_t i = 0; i < num_gens; ++i) {
    if (!test(ctx.generators()[i])) {
      res.fail("generator " + ctx.labels()[i] + " does not normalize Ep(R, Lambda)");
    }
    ++res.upper_checks;
  }
  return res;
}

}  // namespace sympl

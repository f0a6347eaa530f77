#pragma once

// Ring catalog text format.
//
//   ring <name>
//   basis <id> <id> ...
//   unit <sum-of-ids>
//   mul <id>*<id>=<sum-of-ids|0>      (one line per unordered basis pair)
//
// '#' starts a comment.  Sums are written a+b.  Every unordered pair of basis
// ids needs a product; unknown ids are errors.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/ring.hpp"

namespace sympl {

inline constexpr std::string_view kDefaultCatalog = R"(# Rings shipped with sympl.
ring F2
basis e
unit e
mul e*e=e

# dual numbers F2[eps]/(eps^2)
ring F2eps
basis e eps
unit e
mul e*e=e
mul e*eps=eps
mul eps*eps=0

# field with four elements, x^2 = x + 1
ring F4
basis e x
unit e
mul e*e=e
mul e*x=x
mul x*x=x+e

# F2 x F2 on orthogonal idempotents
ring F2xF2
basis e1 e2
unit e1+e2
mul e1*e1=e1
mul e1*e2=0
mul e2*e2=e2

# truncated polynomials F2[t]/(t^3)
ring F2t3
basis e t t2
unit e
mul e*e=e
mul e*t=t
mul e*t2=t2
mul t*t=t2
mul t*t2=0
mul t2*t2=0
)";

namespace detail {

inline std::vector<std::string> split_sum(std::string const& s, int line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find('+', start);
    std::string term =
        s.substr(start, end == std::string::npos ? std::string::npos
                                                 : end - start);
    if (term.empty()) {
      throw ParseError("empty summand in '" + s + "'", line);
    }
    out.push_back(term);
    if (end == std::string::npos) {
      break;
    }
    start = end + 1;
  }
  return out;
}

}  // namespace detail

inline std::vector<RingSpec> parse_catalog(std::string_view text) {
  std::vector<RingSpec> specs;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream words(raw);
    std::string keyword;
    if (!(words >> keyword)) {
      continue;
    }
    std::vector<std::string> rest;
    for (std::string w; words >> w;) {
      rest.push_back(w);
    }
    if (keyword == "ring") {
      if (rest.size() != 1) {
        throw ParseError("expected 'ring <name>'", line_no);
      }
      specs.push_back(RingSpec{});
      specs.back().name = rest[0];
      continue;
    }
    if (specs.empty()) {
      throw ParseError("'" + keyword + "' before any 'ring' line", line_no);
    }
    RingSpec& spec = specs.back();
    if (keyword == "basis") {
      if (rest.empty() || !spec.basis.empty()) {
        throw ParseError("expected exactly one non-empty 'basis' line",
                         line_no);
      }
      spec.basis = rest;
    } else if (keyword == "unit") {
      if (rest.size() != 1 || !spec.unit.empty()) {
        throw ParseError("expected exactly one 'unit <sum>' line", line_no);
      }
      spec.unit = detail::split_sum(rest[0], line_no);
    } else if (keyword == "mul") {
      std::string joined;
      for (auto const& w : rest) {
        joined += w;
      }
      auto star = joined.find('*');
      auto eq = joined.find('=');
      if (star == std::string::npos || eq == std::string::npos || eq < star) {
        throw ParseError("expected 'mul a*b=c'", line_no);
      }
      RingSpec::Product p;
      p.lhs = joined.substr(0, star);
      p.rhs = joined.substr(star + 1, eq - star - 1);
      p.line = line_no;
      if (p.lhs.empty() || p.rhs.empty()) {
        throw ParseError("expected 'mul a*b=c'", line_no);
      }
      std::string value = joined.substr(eq + 1);
      if (value.empty()) {
        throw ParseError("missing product value", line_no);
      }
      if (value != "0") {
        p.value = detail::split_sum(value, line_no);
      }
      spec.products.push_back(std::move(p));
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line_no);
    }
  }
  return specs;
}

class Catalog {
 public:
  Catalog() = default;

  static Catalog from_text(std::string_view text) {
    Catalog c;
    for (auto const& spec : parse_catalog(text)) {
      c.add(make_ring(spec));
    }
    return c;
  }

  // Parsed once; the reference stays valid for the whole program.
  static Catalog const& builtin() {
    static Catalog const c = from_text(kDefaultCatalog);
    return c;
  }

  // SYMPL_CATALOG, when set, names a catalog file to use instead of the
  // built-in one.
  static Catalog from_environment() {
    if (char const* path = std::getenv("SYMPL_CATALOG");
        path != nullptr && *path != '\0') {
      return from_file(path);
    }
    return builtin();
  }

  static Catalog from_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot open catalog file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
  }

  void add(RingPtr ring) {
    for (auto const& r : rings_) {
      if (r->name() == ring->name()) {
        throw ValidationError("duplicate ring name " + ring->name());
      }
    }
    rings_.push_back(std::move(ring));
  }

  RingPtr const& get(std::string_view name) const {
    for (auto const& r : rings_) {
      if (r->name() == name) {
        return r;
      }
    }
    throw UsageError("unknown ring '" + std::string(name) + "'");
  }

  bool contains(std::string_view name) const {
    for (auto const& r : rings_) {
      if (r->name() == name) {
        return true;
      }
    }
    return false;
  }

  std::vector<RingPtr> const& rings() const noexcept { return rings_; }

 private:
  std::vector<RingPtr> rings_;
};

}  // namespace sympl

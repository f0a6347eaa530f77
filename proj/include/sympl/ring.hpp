#pragma once

// Finite commutative F2-algebras presented by structure constants, their
// subrings and symplectic form parameters.
//
// Elements are coordinate bit-vectors over the basis, so a ring of dimension
// d has 2^d elements and addition is XOR.  All rings here have 1 + 1 = 0.

#include <algorithm>
#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sympl/errors.hpp"

namespace sympl {

inline constexpr int kMaxRingDim = 8;
inline constexpr std::size_t kMaxRingSize = std::size_t{1} << kMaxRingDim;

struct RingElt {
  std::uint8_t bits = 0;

  friend constexpr bool operator==(RingElt, RingElt) = default;
  friend constexpr auto operator<=>(RingElt, RingElt) = default;
};

using ElementSet = std::bitset<kMaxRingSize>;

// Plain-data form of a catalog record.  Names are resolved by Ring::from_spec.
struct RingSpec {
  struct Product {
    std::string lhs;
    std::string rhs;
    std::vector<std::string> value;  // summands; empty means 0
    int line = 0;
  };
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::string> unit;
  std::vector<Product> products;
};

class Ring {
 public:
  static Ring from_spec(RingSpec const& spec);

  std::string const& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return std::size_t{1} << dim_; }
  std::vector<std::string> const& basis_names() const noexcept {
    return names_;
  }

  RingElt zero() const noexcept { return {}; }
  RingElt one() const noexcept { return unit_; }
  RingElt basis(int i) const { return element(std::uint32_t{1} << i); }

  // Checked conversion from raw coordinates.
  RingElt element(std::uint32_t bits) const {
    if (bits >= size()) {
      throw UsageError("coordinates " + std::to_string(bits)
                       + " do not belong to ring " + name_);
    }
    return RingElt{static_cast<std::uint8_t>(bits)};
  }

  RingElt add(RingElt a, RingElt b) const {
    check(a);
    check(b);
    return RingElt{static_cast<std::uint8_t>(a.bits ^ b.bits)};
  }

  RingElt mul(RingElt a, RingElt b) const {
    check(a);
    check(b);
    return RingElt{table_[a.bits * size() + b.bits]};
  }

  RingElt square(RingElt a) const { return mul(a, a); }

  // Unchecked product on raw coordinates; hot loops in matrix code use this.
  std::uint8_t mul_raw(std::uint8_t a, std::uint8_t b) const noexcept {
    return table_[a * size() + b];
  }
  std::uint8_t const* table() const noexcept { return table_.data(); }

  std::vector<RingElt> elements() const {
    std::vector<RingElt> out;
    out.reserve(size());
    for (std::size_t x = 0; x < size(); ++x) {
      out.push_back(RingElt{static_cast<std::uint8_t>(x)});
    }
    return out;
  }

  bool has_zero_divisors() const {
    for (std::size_t a = 1; a < size(); ++a) {
      for (std::size_t b = 1; b < size(); ++b) {
        if (table_[a * size() + b] == 0) {
          return true;
        }
      }
    }
    return false;
  }

  // "0", or basis ids joined by '+', in basis order.
  std::string format(RingElt x) const {
    check(x);
    if (x.bits == 0) {
      return "0";
    }
    std::string out;
    for (int i = 0; i < dim_; ++i) {
      if ((x.bits >> i) & 1U) {
        if (!out.empty()) {
          out += '+';
        }
        out += names_[i];
      }
    }
    return out;
  }

  // Inverse of format().  Accepts "1" for the unit when no basis element is
  // called "1"; repeated summands cancel.
  RingElt parse(std::string_view text) const {
    std::uint32_t bits = 0;
    std::size_t start = 0;
    bool any = false;
    while (start <= text.size()) {
      std::size_t end = text.find('+', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string term = trim(text.substr(start, end - start));
      if (term.empty()) {
        throw ParseError("empty summand in '" + std::string(text) + "'", 0);
      }
      any = true;
      if (term != "0") {
        bits ^= resolve(term);
      }
      start = end + 1;
    }
    if (!any) {
      throw ParseError("empty ring element", 0);
    }
    return RingElt{static_cast<std::uint8_t>(bits)};
  }

  // Coordinates of basis_i * basis_j.
  RingElt basis_product(int i, int j) const {
    return RingElt{basis_products_.at(static_cast<std::size_t>(i * dim_ + j))};
  }

  // Canonical catalog record for this ring.
  std::string to_catalog() const;

 private:
  Ring() = default;

  void check(RingElt x) const {
    if (x.bits >= size()) {
      throw UsageError("element does not belong to ring " + name_);
    }
  }

  std::uint32_t resolve(std::string const& id) const {
    for (int i = 0; i < dim_; ++i) {
      if (names_[i] == id) {
        return std::uint32_t{1} << i;
      }
    }
    if (id == "1") {
      return unit_.bits;
    }
    throw ParseError("unknown basis id '" + id + "' in ring " + name_, 0);
  }

  static std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
      return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
  }

  std::string name_;
  int dim_ = 0;
  std::vector<std::string> names_;
  RingElt unit_;
  std::vector<std::uint8_t> basis_products_;
  std::vector<std::uint8_t> table_;
};

using RingPtr = std::shared_ptr<Ring const>;

inline RingPtr make_ring(RingSpec const& spec) {
  return std::make_shared<Ring const>(Ring::from_spec(spec));
}

inline Ring Ring::from_spec(RingSpec const& spec) {
  Ring r;
  r.name_ = spec.name;
  r.dim_ = static_cast<int>(spec.basis.size());
  if (r.dim_ == 0) {
    throw ValidationError("ring " + spec.name + " has an empty basis");
  }
  if (r.dim_ > kMaxRingDim) {
    throw CapacityError("ring " + spec.name + " has dimension "
                        + std::to_string(r.dim_) + " > "
                        + std::to_string(kMaxRingDim));
  }
  r.names_ = spec.basis;
  for (int i = 0; i < r.dim_; ++i) {
    if (r.names_[i] == "0" || r.names_[i].empty()
        || r.names_[i].find('+') != std::string::npos) {
      throw ValidationError("invalid basis id '" + r.names_[i] + "'");
    }
    for (int j = 0; j < i; ++j) {
      if (r.names_[i] == r.names_[j]) {
        throw ValidationError("duplicate basis id '" + r.names_[i] + "'");
      }
    }
  }
  auto index_of = [&](std::string const& id, int line) -> int {
    for (int i = 0; i < r.dim_; ++i) {
      if (r.names_[i] == id) {
        return i;
      }
    }
    throw ValidationError("ring " + spec.name + ", line "
                          + std::to_string(line) + ": unknown basis id '" + id
                          + "'");
  };
  auto sum_of = [&](std::vector<std::string> const& ids, int line) {
    std::uint8_t bits = 0;
    for (auto const& id : ids) {
      if (id == "0") {
        continue;
      }
      bits ^= static_cast<std::uint8_t>(1U << index_of(id, line));
    }
    return bits;
  };

  if (spec.unit.empty()) {
    throw ValidationError("ring " + spec.name + " has no unit");
  }
  r.unit_ = RingElt{sum_of(spec.unit, 0)};

  int const d = r.dim_;
  std::vector<int> seen(static_cast<std::size_t>(d * d), 0);
  r.basis_products_.assign(static_cast<std::size_t>(d * d), 0);
  for (auto const& p : spec.products) {
    int i = index_of(p.lhs, p.line);
    int j = index_of(p.rhs, p.line);
    std::uint8_t v = sum_of(p.value, p.line);
    auto ij = static_cast<std::size_t>(i * d + j);
    auto ji = static_cast<std::size_t>(j * d + i);
    if (seen[ij] != 0) {
      if (r.basis_products_[ij] != v) {
        if (i != j && seen[ij] == 2) {
          throw ValidationError("ring " + spec.name
                                + ": table is not commutative at ("
                                + p.lhs + "," + p.rhs + ")");
        }
        throw ValidationError("ring " + spec.name
                              + ": conflicting products for (" + p.lhs + ","
                              + p.rhs + ")");
      }
      continue;
    }
    r.basis_products_[ij] = v;
    r.basis_products_[ji] = v;
    seen[ij] = 1;
    seen[ji] = (i == j) ? 1 : 2;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      if (seen[static_cast<std::size_t>(i * d + j)] == 0) {
        throw ValidationError("ring " + spec.name + ": missing product "
                              + r.names_[i] + "*" + r.names_[j]);
      }
    }
  }

  // Bilinear extension to all pairs of elements.
  std::size_t const n = r.size();
  r.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::uint8_t acc = 0;
      for (int i = 0; i < d; ++i) {
        if (((a >> i) & 1U) == 0) {
          continue;
        }
        for (int j = 0; j < d; ++j) {
          if ((b >> j) & 1U) {
            acc ^= r.basis_products_[static_cast<std::size_t>(i * d + j)];
          }
        }
      }
      r.table_[a * n + b] = acc;
    }
  }

  // Associativity on basis triples implies it everywhere by trilinearity.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        std::uint8_t bi = static_cast<std::uint8_t>(1U << i);
        std::uint8_t bj = static_cast<std::uint8_t>(1U << j);
        std::uint8_t bk = static_cast<std::uint8_t>(1U << k);
        std::uint8_t left = r.mul_raw(r.mul_raw(bi, bj), bk);
        std::uint8_t right = r.mul_raw(bi, r.mul_raw(bj, bk));
        if (left != right) {
          throw ValidationError("ring " + spec.name
                                + ": multiplication is not associative at ("
                                + r.names_[i] + "," + r.names_[j] + ","
                                + r.names_[k] + ")");
        }
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (r.mul_raw(r.unit_.bits, static_cast<std::uint8_t>(x)) != x) {
      throw ValidationError("ring " + spec.name + ": unit law fails for "
                            + r.format(RingElt{static_cast<std::uint8_t>(x)}));
    }
  }
  return r;
}

inline std::string Ring::to_catalog() const {
  std::string out = "ring " + name_ + "\nbasis";
  for (auto const& b : names_) {
    out += ' ' + b;
  }
  out += "\nunit " + format(unit_) + '\n';
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      out += "mul " + names_[i] + '*' + names_[j] + '='
             + format(basis_product(i, j)) + '\n';
    }
  }
  return out;
}

// Ordered key for sets of elements so that enumerations are deterministic.
inline std::array<std::uint64_t, 4> set_key(ElementSet const& s) {
  std::array<std::uint64_t, 4> k{};
  for (std::size_t i = 0; i < kMaxRingSize; ++i) {
    if (s.test(i)) {
      k[i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  return k;
}

inline std::vector<RingElt> to_elements(ElementSet const& s) {
  std::vector<RingElt> out;
  for (std::size_t i = 0; i < kMaxRingSize; ++i) {
    if (s.test(i)) {
      out.push_back(RingElt{static_cast<std::uint8_t>(i)});
    }
  }
  return out;
}

namespace detail {

inline bool additively_closed(ElementSet const& s) {
  auto elems = to_elements(s);
  for (auto a : elems) {
    for (auto b : elems) {
      if (!s.test(a.bits ^ b.bits)) {
        return false;
      }
    }
  }
  return s.test(0);
}

inline bool compare_sets(ElementSet const& a, ElementSet const& b) {
  if (a.count() != b.count()) {
    return a.count() < b.count();
  }
  return set_key(a) < set_key(b);
}

}  // namespace detail

class Subring {
 public:
  Subring(RingPtr parent, ElementSet elements)
      : parent_(std::move(parent)), elements_(elements) {
    if (!parent_) {
      throw UsageError("subring without a parent ring");
    }
    auto const& r = *parent_;
    for (std::size_t i = r.size(); i < kMaxRingSize; ++i) {
      if (elements_.test(i)) {
        throw ValidationError("subring element outside ring " + r.name());
      }
    }
    if (!elements_.test(0) || !elements_.test(r.one().bits)) {
      throw ValidationError("subring must contain 0 and 1");
    }
    auto elems = to_elements(elements_);
    for (auto a : elems) {
      for (auto b : elems) {
        if (!elements_.test(a.bits ^ b.bits)
            || !elements_.test(r.mul_raw(a.bits, b.bits))) {
          throw ValidationError("set is not closed under + and * in "
                                + r.name());
        }
      }
    }
  }

  static Subring whole(RingPtr ring) {
    ElementSet s;
    for (std::size_t i = 0; i < ring->size(); ++i) {
      s.set(i);
    }
    return Subring(std::move(ring), s);
  }

  static Subring prime(RingPtr ring) {
    ElementSet s;
    s.set(0);
    s.set(ring->one().bits);
    return Subring(std::move(ring), s);
  }

  Ring const& ring() const noexcept { return *parent_; }
  RingPtr const& parent() const noexcept { return parent_; }
  ElementSet const& elements() const noexcept { return elements_; }
  bool contains(RingElt x) const { return elements_.test(x.bits); }
  std::size_t size() const { return elements_.count(); }
  std::vector<RingElt> to_vector() const { return to_elements(elements_); }

  bool subset_of(Subring const& other) const {
    return (elements_ & ~other.elements_).none();
  }

  friend bool operator==(Subring const& a, Subring const& b) {
    return a.parent_.get() == b.parent_.get() && a.elements_ == b.elements_;
  }

 private:
  RingPtr parent_;
  ElementSet elements_;
};

// Additive subgroup of R, closed under multiplication by squares of R.
// In characteristic 2 the condition 2R ⊆ Λ reduces to 0 ∈ Λ.
class FormParameter {
 public:
  FormParameter(Subring ring, ElementSet elements)
      : ring_(std::move(ring)), elements_(elements) {
    if (!is_form_parameter(ring_, elements_)) {
      throw ValidationError("set is not a form parameter of the given ring");
    }
  }

  static bool is_form_parameter(Subring const& R, ElementSet const& s) {
    if ((s & ~R.elements()).any() || !detail::additively_closed(s)) {
      return false;
    }
    auto const& ring = R.ring();
    for (auto mu : R.to_vector()) {
      std::uint8_t sq = ring.mul_raw(mu.bits, mu.bits);
      for (auto lam : to_elements(s)) {
        if (!s.test(ring.mul_raw(sq, lam.bits))) {
          return false;
        }
      }
    }
    return true;
  }

  Subring const& ring() const noexcept { return ring_; }
  ElementSet const& elements() const noexcept { return elements_; }
  bool contains(RingElt x) const { return elements_.test(x.bits); }
  std::size_t size() const { return elements_.count(); }
  std::vector<RingElt> to_vector() const { return to_elements(elements_); }

  friend bool operator==(FormParameter const& a, FormParameter const& b) {
    return a.ring_ == b.ring_ && a.elements_ == b.elements_;
  }

 private:
  Subring ring_;
  ElementSet elements_;
};

// A pair (R, Λ); Λ carries R.
class FormRing {
 public:
  explicit FormRing(FormParameter lambda) : lambda_(std::move(lambda)) {}

  Subring const& R() const noexcept { return lambda_.ring(); }
  FormParameter const& Lambda() const noexcept { return lambda_; }
  Ring const& ambient() const noexcept { return R().ring(); }

  bool contains_base(Subring const& K) const {
    return (K.elements() & ~lambda_.elements()).none();
  }

  friend bool operator==(FormRing const& a, FormRing const& b) {
    return a.lambda_ == b.lambda_;
  }

 private:
  FormParameter lambda_;
};

// Smallest subring containing gens; plain fixpoint iteration.
inline Subring subring_generated(RingPtr const& ring,
                                 std::span<RingElt const> gens) {
  Ring const& r = *ring;
  ElementSet s;
  s.set(0);
  s.set(r.one().bits);
  for (auto g : gens) {
    s.set(r.element(g.bits).bits);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto elems = to_elements(s);
    for (auto a : elems) {
      for (auto b : elems) {
        for (std::uint8_t c : {static_cast<std::uint8_t>(a.bits ^ b.bits),
                               r.mul_raw(a.bits, b.bits)}) {
          if (!s.test(c)) {
            s.set(c);
            changed = true;
          }
        }
      }
    }
  }
  return Subring(ring, s);
}

inline Subring subring_generated(RingPtr const& ring,
                                 std::initializer_list<RingElt> gens) {
  return subring_generated(ring, std::span<RingElt const>(gens.begin(),
                                                          gens.size()));
}

// Subring R0 generated by all squares.  In characteristic 2 squaring is a
// ring endomorphism, so R0 is exactly the set of squares.
inline Subring squares_subring(Subring const& R) {
  Ring const& r = R.ring();
  std::vector<RingElt> squares;
  ElementSet square_set;
  for (auto x : R.to_vector()) {
    RingElt sq = r.square(x);
    squares.push_back(sq);
    square_set.set(sq.bits);
  }
  Subring out = subring_generated(R.parent(), squares);
  if (out.elements() != square_set) {
    throw std::logic_error("square map image is not a subring");
  }
  return out;
}

// Smallest form parameter of R containing gens.
inline FormParameter form_param_generated(Subring const& R,
                                          std::span<RingElt const> gens) {
  Ring const& r = R.ring();
  ElementSet s;
  s.set(0);
  for (auto g : gens) {
    if (!R.contains(g)) {
      throw UsageError("form parameter generator " + r.format(g)
                       + " is not in R");
    }
    s.set(g.bits);
  }
  std::vector<std::uint8_t> squares;
  for (auto mu : R.to_vector()) {
    squares.push_back(r.mul_raw(mu.bits, mu.bits));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto elems = to_elements(s);
    for (auto a : elems) {
      for (auto b : elems) {
        auto c = static_cast<std::uint8_t>(a.bits ^ b.bits);
        if (!s.test(c)) {
          s.set(c);
          changed = true;
        }
      }
      for (auto sq : squares) {
        auto c = r.mul_raw(sq, a.bits);
        if (!s.test(c)) {
          s.set(c);
          changed = true;
        }
      }
    }
  }
  return FormParameter(R, s);
}

inline FormParameter form_param_generated(Subring const& R,
                                          std::initializer_list<RingElt> gens) {
  return form_param_generated(
      R, std::span<RingElt const>(gens.begin(), gens.size()));
}

// All subrings of A, ordered by (size, element key).
inline std::vector<Subring> enumerate_subrings(RingPtr const& A) {
  if (A->dim() > kMaxRingDim) {
    throw CapacityError("subring enumeration limited to dimension 8");
  }
  std::map<std::array<std::uint64_t, 4>, Subring> found;
  std::vector<Subring> frontier{Subring::prime(A)};
  found.emplace(set_key(frontier.front().elements()), frontier.front());
  while (!frontier.empty()) {
    std::vector<Subring> next;
    for (auto const& S : frontier) {
      for (auto x : A->elements()) {
        if (S.contains(x)) {
          continue;
        }
        auto gens = S.to_vector();
        gens.push_back(x);
        Subring T = subring_generated(A, gens);
        if (found.emplace(set_key(T.elements()), T).second) {
          next.push_back(T);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subring> out;
  for (auto& [k, s] : found) {
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](Subring const& a, Subring const& b) {
    return detail::compare_sets(a.elements(), b.elements());
  });
  return out;
}

// All form parameters of R, ordered by (size, element key).
inline std::vector<FormParameter> enumerate_form_params(Subring const& R) {
  if (R.ring().dim() > kMaxRingDim) {
    throw CapacityError("form parameter enumeration limited to dimension 8");
  }
  std::map<std::array<std::uint64_t, 4>, FormParameter> found;
  FormParameter zero = form_param_generated(R, {});
  found.emplace(set_key(zero.elements()), zero);
  std::vector<FormParameter> frontier{zero};
  while (!frontier.empty()) {
    std::vector<FormParameter> next;
    for (auto const& L : frontier) {
      for (auto x : R.to_vector()) {
        if (L.contains(x)) {
          continue;
        }
        auto gens = L.to_vector();
        gens.push_back(x);
        FormParameter M = form_param_generated(R, gens);
        if (found.emplace(set_key(M.elements()), M).second) {
          next.push_back(M);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<FormParameter> out;
  for (auto& [k, p] : found) {
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](FormParameter const& a, FormParameter const& b) {
              return detail::compare_sets(a.elements(), b.elements());
            });
  return out;
}

// Form rings (R, Λ) with K ⊆ Λ ⊆ R ⊆ A.
inline std::vector<FormRing> enumerate_form_rings(RingPtr const& A,
                                                  Subring const& K) {
  std::vector<FormRing> out;
  for (auto const& R : enumerate_subrings(A)) {
    if (!K.subset_of(R)) {
      continue;
    }
    for (auto const& L : enumerate_form_params(R)) {
      if ((K.elements() & ~L.elements()).none()) {
        out.emplace_back(L);
      }
    }
  }
  return out;
}

inline FormRing make_form_ring(Subring const& R,
                               std::span<RingElt const> lambda_gens) {
  return FormRing(form_param_generated(R, lambda_gens));
}

inline std::string format_set(Ring const& r, ElementSet const& s) {
  std::string out = "{";
  bool first = true;
  for (auto x : to_elements(s)) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += r.format(x);
  }
  return out + "}";
}

}  // namespace sympl

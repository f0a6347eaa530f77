#pragma once

// Index set I = (1, ..., n, -n, ..., -1) and the root system C_n.
//
// Rows and columns of 2n x 2n matrices are labelled by I.  Label k > 0 is
// stored at position k - 1 and label -k at position 2n - k, so the storage
// order is the linear order of I and the positions of k and -k are mirror
// images across the antidiagonal.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympl/errors.hpp"

namespace sympl {

inline constexpr int kMaxRank = 4;

inline void check_rank(int n) {
  if (n < 1 || n > kMaxRank) {
    throw UsageError("rank " + std::to_string(n) + " outside 1.."
                     + std::to_string(kMaxRank));
  }
}

inline void check_index(int k, int n) {
  if (k == 0 || std::abs(k) > n) {
    throw UsageError("index " + std::to_string(k) + " not in I for n = "
                     + std::to_string(n));
  }
}

inline int index_pos(int k, int n) {
  check_index(k, n);
  return k > 0 ? k - 1 : 2 * n + k;
}

inline int index_at(int pos, int n) {
  return pos < n ? pos + 1 : pos - 2 * n;
}

// I in its linear order.
inline std::vector<int> index_order(int n) {
  std::vector<int> out;
  for (int p = 0; p < 2 * n; ++p) {
    out.push_back(index_at(p, n));
  }
  return out;
}

// Successor of k in I; k must not be -1.
inline int index_successor(int k, int n) {
  int p = index_pos(k, n);
  if (p + 1 >= 2 * n) {
    throw UsageError("-1 has no successor in I");
  }
  return index_at(p + 1, n);
}

inline bool index_less(int a, int b, int n) {
  return index_pos(a, n) < index_pos(b, n);
}

// A root of C_n as an integer vector in the basis e_1..e_n.
class Root {
 public:
  Root() = default;

  // Validates that coeffs describe a root of C_n.
  static std::optional<Root> from_coeffs(std::array<int, kMaxRank> coeffs,
                                         int n) {
    Root r;
    r.rank_ = static_cast<std::int8_t>(n);
    int nonzero = 0;
    int twos = 0;
    for (int k = 0; k < kMaxRank; ++k) {
      int c = coeffs[static_cast<std::size_t>(k)];
      if (k >= n && c != 0) {
        return std::nullopt;
      }
      if (c != 0) {
        ++nonzero;
      }
      if (std::abs(c) == 2) {
        ++twos;
      } else if (std::abs(c) > 2) {
        return std::nullopt;
      }
      r.c_[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(c);
    }
    bool is_short = nonzero == 2 && twos == 0;
    bool is_long = nonzero == 1 && twos == 1;
    if (!is_short && !is_long) {
      return std::nullopt;
    }
    return r;
  }

  // s*e_i + t*e_j with i != j and s, t in {+1, -1}.
  static Root short_root(int i, int s, int j, int t, int n) {
    std::array<int, kMaxRank> c{};
    if (i == j || i < 1 || j < 1 || i > n || j > n) {
      throw UsageError("bad short root indices");
    }
    c[static_cast<std::size_t>(i - 1)] = s;
    c[static_cast<std::size_t>(j - 1)] = t;
    return *from_coeffs(c, n);
  }

  // s * 2e_k.
  static Root long_root(int k, int s, int n) {
    std::array<int, kMaxRank> c{};
    if (k < 1 || k > n) {
      throw UsageError("bad long root index");
    }
    c[static_cast<std::size_t>(k - 1)] = 2 * s;
    return *from_coeffs(c, n);
  }

  int rank() const noexcept { return rank_; }
  int coeff(int k) const { return c_.at(static_cast<std::size_t>(k - 1)); }

  bool is_long() const noexcept {
    for (auto c : c_) {
      if (std::abs(c) == 2) {
        return true;
      }
    }
    return false;
  }
  bool is_short() const noexcept { return !is_long(); }

  Root operator-() const {
    Root r = *this;
    for (auto& c : r.c_) {
      c = static_cast<std::int8_t>(-c);
    }
    return r;
  }

  // Sum as a vector; nullopt unless it is a root.
  friend std::optional<Root> add(Root const& a, Root const& b) {
    std::array<int, kMaxRank> c{};
    for (std::size_t k = 0; k < kMaxRank; ++k) {
      c[k] = a.c_[k] + b.c_[k];
    }
    return from_coeffs(c, a.rank_);
  }

  // a + m*b, when that is a root.
  friend std::optional<Root> add_multiple(Root const& a, int m, Root const& b) {
    std::array<int, kMaxRank> c{};
    for (std::size_t k = 0; k < kMaxRank; ++k) {
      c[k] = a.c_[k] + m * b.c_[k];
    }
    return from_coeffs(c, a.rank_);
  }

  friend int dot(Root const& a, Root const& b) {
    int s = 0;
    for (std::size_t k = 0; k < kMaxRank; ++k) {
      s += a.c_[k] * b.c_[k];
    }
    return s;
  }

  // Weyl reflection s_a(b) = b - 2(b,a)/(a,a) a.
  friend Root reflect(Root const& a, Root const& b) {
    int m = 2 * dot(b, a) / dot(a, a);
    std::array<int, kMaxRank> c{};
    for (std::size_t k = 0; k < kMaxRank; ++k) {
      c[k] = b.c_[k] - m * a.c_[k];
    }
    return *from_coeffs(c, a.rank_);
  }

  friend bool operator==(Root const&, Root const&) = default;
  friend auto operator<=>(Root const&, Root const&) = default;

  // "e1-e2", "-e1-e3", "2e2", "-2e1".
  std::string to_string() const {
    std::string out;
    for (int k = 1; k <= rank_; ++k) {
      int c = coeff(k);
      if (c == 0) {
        continue;
      }
      if (c < 0) {
        out += '-';
      } else if (!out.empty()) {
        out += '+';
      }
      if (std::abs(c) == 2) {
        out += '2';
      }
      out += 'e' + std::to_string(k);
    }
    return out;
  }

  static Root parse(std::string const& text, int n) {
    std::array<int, kMaxRank> c{};
    std::size_t i = 0;
    while (i < text.size()) {
      int sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
      }
      int mult = 1;
      if (i < text.size() && text[i] == '2') {
        mult = 2;
        ++i;
      }
      if (i >= text.size() || text[i] != 'e') {
        throw ParseError("bad root '" + text + "'", 0);
      }
      ++i;
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        ++i;
      }
      if (start == i) {
        throw ParseError("bad root '" + text + "'", 0);
      }
      int k = std::stoi(text.substr(start, i - start));
      if (k < 1 || k > n) {
        throw ParseError("bad root '" + text + "'", 0);
      }
      c[static_cast<std::size_t>(k - 1)] += sign * mult;
    }
    auto r = from_coeffs(c, n);
    if (!r) {
      throw ParseError("'" + text + "' is not a root of C_"
                       + std::to_string(n), 0);
    }
    return *r;
  }

 private:
  std::array<std::int8_t, kMaxRank> c_{};
  std::int8_t rank_ = 0;
};

// The map p from non-diagonal positions to roots: p(i,j) = sgn(i) e_|i| -
// sgn(j) e_|j|, which covers the five displayed families at once.
inline Root root_of_position(int i, int j, int n) {
  check_index(i, n);
  check_index(j, n);
  if (i == j) {
    throw UsageError("diagonal position has no root");
  }
  std::array<int, kMaxRank> c{};
  c[static_cast<std::size_t>(std::abs(i) - 1)] += i > 0 ? 1 : -1;
  c[static_cast<std::size_t>(std::abs(j) - 1)] -= j > 0 ? 1 : -1;
  return *Root::from_coeffs(c, n);
}

// A position (i, j) with p(i, j) = root; the other one in the fiber is
// (-j, -i).
inline std::pair<int, int> position_of_root(Root const& r) {
  int n = r.rank();
  if (r.is_long()) {
    for (int k = 1; k <= n; ++k) {
      if (r.coeff(k) == 2) {
        return {k, -k};
      }
      if (r.coeff(k) == -2) {
        return {-k, k};
      }
    }
  }
  int a = 0;
  int b = 0;
  for (int k = 1; k <= n; ++k) {
    if (r.coeff(k) != 0) {
      (a == 0 ? a : b) = k;
    }
  }
  // i carries the sign of e_a, j the opposite sign of e_b.
  return {r.coeff(a) * a, -r.coeff(b) * b};
}

// All 2n^2 roots: short roots first (e_i - e_j, e_i + e_j, -e_i - e_j), then
// long roots (2e_k, -2e_k).
inline std::vector<Root> all_roots(int n) {
  check_rank(n);
  std::vector<Root> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) {
        out.push_back(Root::short_root(i, 1, j, -1, n));
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      out.push_back(Root::short_root(i, 1, j, 1, n));
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      out.push_back(Root::short_root(i, -1, j, -1, n));
    }
  }
  for (int k = 1; k <= n; ++k) {
    out.push_back(Root::long_root(k, 1, n));
  }
  for (int k = 1; k <= n; ++k) {
    out.push_back(Root::long_root(k, -1, n));
  }
  return out;
}

inline int root_index(std::vector<Root> const& roots, Root const& r) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] == r) {
      return static_cast<int>(i);
    }
  }
  throw UsageError("root " + r.to_string() + " not in list");
}

// Simple roots e_i - e_{i+1} and 2e_n.
inline std::vector<Root> simple_roots(int n) {
  std::vector<Root> out;
  for (int i = 1; i < n; ++i) {
    out.push_back(Root::short_root(i, 1, i + 1, -1, n));
  }
  out.push_back(Root::long_root(n, 1, n));
  return out;
}

}  // namespace sympl

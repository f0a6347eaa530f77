#pragma once

// Small square matrices over a finite F2-algebra.  Storage is a fixed array
// large enough for 2n x 2n with n <= kMaxRank; entries are raw coordinates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"

namespace sympl {

inline constexpr int kMaxMatrixSize = 2 * kMaxRank;

class Matrix {
 public:
  Matrix() = default;

  explicit Matrix(int size) : size_(static_cast<std::uint8_t>(size)) {
    if (size < 1 || size > kMaxMatrixSize) {
      throw UsageError("matrix size " + std::to_string(size)
                       + " out of range");
    }
  }

  static Matrix identity(int size, RingElt one) {
    Matrix m(size);
    for (int i = 0; i < size; ++i) {
      m.set(i, i, one);
    }
    return m;
  }

  int size() const noexcept { return size_; }

  RingElt at(int r, int c) const noexcept {
    return RingElt{a_[static_cast<std::size_t>(r * size_ + c)]};
  }
  void set(int r, int c, RingElt v) noexcept {
    a_[static_cast<std::size_t>(r * size_ + c)] = v.bits;
  }

  std::uint8_t raw(int r, int c) const noexcept {
    return a_[static_cast<std::size_t>(r * size_ + c)];
  }
  std::uint8_t& raw(int r, int c) noexcept {
    return a_[static_cast<std::size_t>(r * size_ + c)];
  }

  bool is_zero() const noexcept {
    for (int i = 0; i < size_ * size_; ++i) {
      if (a_[static_cast<std::size_t>(i)] != 0) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(Matrix const&, Matrix const&) = default;

 private:
  std::uint8_t size_ = 0;
  std::array<std::uint8_t, kMaxMatrixSize * kMaxMatrixSize> a_{};
};

inline Matrix mat_add(Matrix const& a, Matrix const& b) {
  if (a.size() != b.size()) {
    throw UsageError("matrix sizes differ");
  }
  Matrix out(a.size());
  for (int r = 0; r < a.size(); ++r) {
    for (int c = 0; c < a.size(); ++c) {
      out.raw(r, c) = static_cast<std::uint8_t>(a.raw(r, c) ^ b.raw(r, c));
    }
  }
  return out;
}

inline Matrix mat_mul(Ring const& ring, Matrix const& a, Matrix const& b) {
  if (a.size() != b.size()) {
    throw UsageError("matrix sizes differ");
  }
  int const s = a.size();
  std::uint8_t const* t = ring.table();
  std::size_t const q = ring.size();
  Matrix out(s);
  for (int r = 0; r < s; ++r) {
    for (int k = 0; k < s; ++k) {
      std::uint8_t x = a.raw(r, k);
      if (x == 0) {
        continue;
      }
      std::uint8_t const* row = t + x * q;
      for (int c = 0; c < s; ++c) {
        out.raw(r, c) ^= row[b.raw(k, c)];
      }
    }
  }
  return out;
}

inline Matrix transpose(Matrix const& a) {
  Matrix out(a.size());
  for (int r = 0; r < a.size(); ++r) {
    for (int c = 0; c < a.size(); ++c) {
      out.raw(c, r) = a.raw(r, c);
    }
  }
  return out;
}

// a* = J^T a J: reflection across the antidiagonal.
inline Matrix star(Matrix const& a) {
  int const s = a.size();
  Matrix out(s);
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      out.raw(r, c) = a.raw(s - 1 - c, s - 1 - r);
    }
  }
  return out;
}

// Antidiagonal all-ones matrix.
inline Matrix antidiagonal(int size, RingElt one) {
  Matrix j(size);
  for (int r = 0; r < size; ++r) {
    j.set(r, size - 1 - r, one);
  }
  return j;
}

// a ∈ M_n(R, Λ): a = a* and every antidiagonal entry lies in Λ.
inline bool in_mn_form_param(Matrix const& a, FormParameter const& lambda) {
  if (!(a == star(a))) {
    return false;
  }
  int const s = a.size();
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      if (!lambda.ring().contains(a.at(r, c))) {
        return false;
      }
    }
    if (!lambda.contains(a.at(r, s - 1 - r))) {
      return false;
    }
  }
  return true;
}

// Min(R) = M_n(R, 2R); in characteristic 2 these are the antidiagonally
// symmetric matrices with zero antidiagonal.
inline bool in_min(Matrix const& a) {
  if (!(a == star(a))) {
    return false;
  }
  for (int r = 0; r < a.size(); ++r) {
    if (a.raw(r, a.size() - 1 - r) != 0) {
      return false;
    }
  }
  return true;
}

inline bool equal_mod_min(Matrix const& a, Matrix const& b) {
  return in_min(mat_add(a, b));
}

// a ∘ b = a b a*, a representative of the class modulo Min(R).
inline Matrix circle_action(Ring const& ring, Matrix const& a,
                            Matrix const& b) {
  return mat_mul(ring, mat_mul(ring, a, b), star(a));
}

// Sparse form of (g - e): the nonzero entries of g minus the identity.
// Left multiplication by g then costs one row update per entry.
class SparseDelta {
 public:
  struct Entry {
    std::uint8_t row;
    std::uint8_t col;
    std::uint8_t value;
  };

  SparseDelta() = default;

  SparseDelta(Matrix const& g, RingElt one) {
    for (int r = 0; r < g.size(); ++r) {
      for (int c = 0; c < g.size(); ++c) {
        std::uint8_t v = g.raw(r, c);
        if (r == c) {
          v ^= one.bits;
        }
        if (v != 0) {
          entries_.push_back({static_cast<std::uint8_t>(r),
                              static_cast<std::uint8_t>(c), v});
        }
      }
    }
  }

  std::vector<Entry> const& entries() const noexcept { return entries_; }

  // g * m.
  Matrix apply_left(Ring const& ring, Matrix const& m) const {
    Matrix out = m;
    std::uint8_t const* t = ring.table();
    std::size_t const q = ring.size();
    int const s = m.size();
    for (auto const& e : entries_) {
      std::uint8_t const* row = t + e.value * q;
      for (int c = 0; c < s; ++c) {
        out.raw(e.row, c) ^= row[m.raw(e.col, c)];
      }
    }
    return out;
  }

  // m * g.
  Matrix apply_right(Ring const& ring, Matrix const& m) const {
    Matrix out = m;
    std::uint8_t const* t = ring.table();
    std::size_t const q = ring.size();
    int const s = m.size();
    for (auto const& e : entries_) {
      std::uint8_t const* row = t + e.value * q;
      for (int r = 0; r < s; ++r) {
        out.raw(r, e.col) ^= row[m.raw(r, e.row)];
      }
    }
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace sympl

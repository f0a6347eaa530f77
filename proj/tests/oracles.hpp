#pragma once

// Reference computations that share no code with the closure engine or the
// block criterion.

#include <cstdint>
#include <functional>
#include <vector>

#include "sympl/catalog.hpp"
#include "sympl/matrix.hpp"
#include "sympl/ring.hpp"

namespace oracle {

// |Sp_2n(F_q)| = q^(n^2) prod_{i=1..n} (q^(2i) - 1).
inline std::uint64_t sp_order(std::uint64_t q, int n) {
  std::uint64_t out = 1;
  for (int i = 0; i < n * n; ++i) {
    out *= q;
  }
  std::uint64_t qi = 1;
  for (int i = 1; i <= n; ++i) {
    qi *= q * q;
    out *= qi - 1;
  }
  return out;
}

// Bilinear form B(u, v) = sum_k u_k v_{mirror(k)} for the antidiagonal Gram
// matrix, computed by explicit element-wise sums.
inline std::uint8_t form(sympl::Ring const& r, std::vector<std::uint8_t> const& u,
                         std::vector<std::uint8_t> const& v) {
  std::size_t s = u.size();
  std::uint8_t acc = 0;
  for (std::size_t k = 0; k < s; ++k) {
    acc = r.add(sympl::RingElt{acc},
                r.mul(sympl::RingElt{u[k]}, sympl::RingElt{v[s - 1 - k]}))
              .bits;
  }
  return acc;
}

// Visits every matrix of Sp_2n over the subset `entries` of r by choosing
// columns one at a time and keeping only those with B(c_i, c_j) = F_ij.
inline void for_each_symplectic(
    sympl::Ring const& r, int n, std::vector<sympl::RingElt> const& entries,
    std::function<void(sympl::Matrix const&)> const& visit) {
  int s = 2 * n;
  std::vector<std::vector<std::uint8_t>> vectors;
  std::vector<std::uint8_t> cur(static_cast<std::size_t>(s), 0);
  std::function<void(int)> gen = [&](int k) {
    if (k == s) {
      vectors.push_back(cur);
      return;
    }
    for (auto e : entries) {
      cur[static_cast<std::size_t>(k)] = e.bits;
      gen(k + 1);
    }
  };
  gen(0);
  std::vector<std::size_t> chosen;
  std::uint8_t one = r.one().bits;
  std::function<void()> rec = [&]() {
    int col = static_cast<int>(chosen.size());
    if (col == s) {
      sympl::Matrix m(s);
      for (int c = 0; c < s; ++c) {
        auto const& v = vectors[chosen[static_cast<std::size_t>(c)]];
        for (int row = 0; row < s; ++row) {
          m.raw(row, c) = v[static_cast<std::size_t>(row)];
        }
      }
      visit(m);
      return;
    }
    for (std::size_t vi = 0; vi < vectors.size(); ++vi) {
      bool ok = true;
      for (int prev = 0; prev < col && ok; ++prev) {
        std::uint8_t want = (prev == s - 1 - col) ? one : 0;
        ok = form(r, vectors[chosen[static_cast<std::size_t>(prev)]],
                  vectors[vi]) == want;
      }
      if (ok) {
        chosen.push_back(vi);
        rec();
        chosen.pop_back();
      }
    }
  };
  rec();
}

inline std::vector<sympl::Matrix> all_symplectic(sympl::Ring const& r, int n) {
  std::vector<sympl::Matrix> out;
  for_each_symplectic(r, n, r.elements(),
                      [&](sympl::Matrix const& m) { out.push_back(m); });
  return out;
}

}  // namespace oracle

#pragma once

// The matrix model of Sp_2n over a finite F2-algebra, its elementary root
// elements and the Bak groups Sp_2n(R, Λ).
//
// Everything is characteristic 2, so every sign in the classical formulas is
// +1 and the implementation stores none of them.  The identities that would
// involve signs are checked by direct matrix evaluation in the tests.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"

namespace sympl {

struct RootFactor {
  Root root;
  RingElt scalar;

  friend bool operator==(RootFactor const&, RootFactor const&) = default;
};

enum class CommutatorCase {
  kTrivial,      // α + β not a root
  kShortSum,     // short, short, α + β short: angle 2π/3
  kOrthogonal,   // short, short, α + β long: angle π/2
  kLongShort,    // long α, short β: angle 3π/4, two factors
  kShortLong,    // short α, long β: the same case with the roles swapped
};

struct CommutatorExpansion {
  CommutatorCase kind;
  std::vector<RootFactor> factors;
};

// An elementary generator x_root(scalar) together with its matrix.
struct LabelledGenerator {
  Root root;
  RingElt scalar;
  Matrix matrix;
};

class SpGroup {
 public:
  SpGroup(RingPtr ring, int n) : ring_(std::move(ring)), n_(n) {
    if (!ring_) {
      throw UsageError("SpGroup needs a ring");
    }
    check_rank(n);
  }

  Ring const& ring() const noexcept { return *ring_; }
  RingPtr const& ring_ptr() const noexcept { return ring_; }
  int rank() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_; }

  Matrix identity() const { return Matrix::identity(dim(), ring_->one()); }

  // F = [[0, J], [-J, 0]]; with -1 = 1 this is the antidiagonal of size 2n.
  Matrix gram() const { return antidiagonal(dim(), ring_->one()); }

  RingElt entry(Matrix const& g, int i, int j) const {
    return g.at(index_pos(i, n_), index_pos(j, n_));
  }

  Matrix mul(Matrix const& a, Matrix const& b) const {
    check_shape(a);
    check_shape(b);
    return mat_mul(*ring_, a, b);
  }

  bool is_symplectic(Matrix const& g) const {
    if (g.size() != dim()) {
      return false;
    }
    for (int r = 0; r < g.size(); ++r) {
      for (int c = 0; c < g.size(); ++c) {
        if (g.raw(r, c) >= ring_->size()) {
          return false;
        }
      }
    }
    Matrix f = gram();
    return mat_mul(*ring_, mat_mul(*ring_, transpose(g), f), g) == f;
  }

  // For symplectic g, g^-1 = F^-1 g^T F, which in characteristic 2 is the
  // reflection of g across the antidiagonal.
  Matrix inverse(Matrix const& g) const {
    check_shape(g);
    return star(g);
  }

  Matrix commutator(Matrix const& a, Matrix const& b) const {
    return mul(mul(a, b), mul(inverse(a), inverse(b)));
  }

  // x^y = y^-1 x y.
  Matrix conj(Matrix const& x, Matrix const& y) const {
    return mul(mul(inverse(y), x), y);
  }

  // T_ij(ξ) = e + ξ e_ij + ξ e_{-j,-i}, collapsing to e + ξ e_{k,-k} when
  // j = -i.
  Matrix transvection(int i, int j, RingElt xi) const {
    check_index(i, n_);
    check_index(j, n_);
    if (i == j) {
      throw UsageError("transvection needs i != j");
    }
    ring_->element(xi.bits);
    Matrix m = identity();
    m.set(index_pos(i, n_), index_pos(j, n_), xi);
    m.set(index_pos(-j, n_), index_pos(-i, n_), xi);
    return m;
  }

  Matrix root_element(Root const& r, RingElt xi) const {
    check_root(r);
    auto [i, j] = position_of_root(r);
    return transvection(i, j, xi);
  }

  // w_α = x_α(1) x_{-α}(1) x_α(1); a permutation matrix.
  Matrix weyl_element(Root const& r) const {
    Matrix x = root_element(r, ring_->one());
    Matrix y = root_element(-r, ring_->one());
    return mul(mul(x, y), x);
  }

  // Predicted right-hand side of [x_α(λ), x_β(μ)].
  CommutatorExpansion chevalley_commutator(Root const& a, RingElt lambda,
                                           Root const& b, RingElt mu) const {
    check_root(a);
    check_root(b);
    if (a == b || a == -b) {
      throw UsageError("commutator formula needs α != ±β");
    }
    Ring const& R = *ring_;
    auto sum = add(a, b);
    if (!sum) {
      return {CommutatorCase::kTrivial, {}};
    }
    RingElt lm = R.mul(lambda, mu);
    if (a.is_short() && b.is_short()) {
      if (sum->is_short()) {
        return {CommutatorCase::kShortSum, {{*sum, lm}}};
      }
      return {CommutatorCase::kOrthogonal, {{*sum, R.add(lm, lm)}}};
    }
    if (a.is_long()) {
      auto second = add_multiple(a, 2, b);
      return {CommutatorCase::kLongShort,
              {{*sum, lm}, {*second, R.mul(lm, mu)}}};
    }
    auto second = add_multiple(b, 2, a);
    return {CommutatorCase::kShortLong,
            {{*sum, lm}, {*second, R.mul(lm, lambda)}}};
  }

  Matrix evaluate(std::vector<RootFactor> const& factors) const {
    Matrix m = identity();
    for (auto const& f : factors) {
      m = mul(m, root_element(f.root, f.scalar));
    }
    return m;
  }

  // Block criterion for Sp_2n(R, Λ): entries in R, a*d - c*b = e and
  // c*a, d*b ∈ M_n(R, Λ).
  bool in_bak_sp(Matrix const& g, FormRing const& fr) const {
    check_shape(g);
    if (fr.R().parent().get() != ring_.get()) {
      throw UsageError("form ring lives in a different ring");
    }
    Subring const& R = fr.R();
    for (int r = 0; r < g.size(); ++r) {
      for (int c = 0; c < g.size(); ++c) {
        if (!R.contains(g.at(r, c))) {
          return false;
        }
      }
    }
    auto [a, b, c, d] = blocks(g);
    Matrix lhs =
        mat_add(mat_mul(*ring_, star(a), d), mat_mul(*ring_, star(c), b));
    if (!(lhs == Matrix::identity(n_, ring_->one()))) {
      return false;
    }
    return in_mn_form_param(mat_mul(*ring_, star(c), a), fr.Lambda())
           && in_mn_form_param(mat_mul(*ring_, star(d), b), fr.Lambda());
  }

  struct Blocks {
    Matrix a;
    Matrix b;
    Matrix c;
    Matrix d;
  };

  Blocks blocks(Matrix const& g) const {
    Blocks out{Matrix(n_), Matrix(n_), Matrix(n_), Matrix(n_)};
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < n_; ++c) {
        out.a.raw(r, c) = g.raw(r, c);
        out.b.raw(r, c) = g.raw(r, c + n_);
        out.c.raw(r, c) = g.raw(r + n_, c);
        out.d.raw(r, c) = g.raw(r + n_, c + n_);
      }
    }
    return out;
  }

  // P_1: g_{i1} = g_{-1,-i} = 0 for all i != 1.
  bool in_p1(Matrix const& g) const {
    require_symplectic(g);
    for (int i : index_order(n_)) {
      if (i == 1) {
        continue;
      }
      if (entry(g, i, 1).bits != 0 || entry(g, -1, -i).bits != 0) {
        return false;
      }
    }
    return true;
  }

  // U_1: identity outside row 1 and column -1, with unit diagonal.
  bool in_u1(Matrix const& g) const {
    require_symplectic(g);
    for (int i : index_order(n_)) {
      for (int j : index_order(n_)) {
        RingElt v = entry(g, i, j);
        if (i == j) {
          if (v != ring_->one()) {
            return false;
          }
        } else if (i != 1 && j != -1 && v.bits != 0) {
          return false;
        }
      }
    }
    return true;
  }

  // L_1: g ∈ P_1 with g_{1i} = g_{-i,-1} = 0 for all i != 1.
  bool in_l1(Matrix const& g) const {
    if (!in_p1(g)) {
      return false;
    }
    for (int i : index_order(n_)) {
      if (i == 1) {
        continue;
      }
      if (entry(g, 1, i).bits != 0 || entry(g, -i, -1).bits != 0) {
        return false;
      }
    }
    return true;
  }

  // Short-root generators with scalars in R \ 0 followed by long-root
  // generators with scalars in Λ \ 0; roots in all_roots order, scalars
  // ascending.
  std::vector<LabelledGenerator> ep_generators_labelled(
      FormRing const& fr) const {
    if (fr.R().parent().get() != ring_.get()) {
      throw UsageError("form ring lives in a different ring");
    }
    std::vector<LabelledGenerator> out;
    for (auto const& r : all_roots(n_)) {
      auto scalars =
          r.is_short() ? fr.R().to_vector() : fr.Lambda().to_vector();
      for (auto s : scalars) {
        if (s.bits != 0) {
          out.push_back({r, s, root_element(r, s)});
        }
      }
    }
    return out;
  }

  std::vector<Matrix> ep_generators(FormRing const& fr) const {
    std::vector<Matrix> out;
    for (auto& g : ep_generators_labelled(fr)) {
      out.push_back(g.matrix);
    }
    return out;
  }

  // The root and scalar of a matrix that is a single root element, if any.
  std::optional<RootFactor> as_root_element(Matrix const& g) const {
    check_shape(g);
    for (auto const& r : all_roots(n_)) {
      auto [i, j] = position_of_root(r);
      RingElt v = entry(g, i, j);
      if (v.bits != 0 && root_element(r, v) == g) {
        return RootFactor{r, v};
      }
    }
    return std::nullopt;
  }

  void check_shape(Matrix const& g) const {
    if (g.size() != dim()) {
      throw UsageError("matrix of size " + std::to_string(g.size())
                       + " used in Sp_" + std::to_string(dim()));
    }
  }

  void require_symplectic(Matrix const& g) const {
    if (!is_symplectic(g)) {
      throw UsageError("matrix is not symplectic");
    }
  }

 private:
  void check_root(Root const& r) const {
    if (r.rank() != n_) {
      throw UsageError("root of rank " + std::to_string(r.rank())
                       + " used at rank " + std::to_string(n_));
    }
  }

  RingPtr ring_;
  int n_;
};

// g x g^-1 for symplectic g when x = e + N is sparse: e + g N g^-1.
inline Matrix conjugate_sparse(Ring const& ring, Matrix const& g,
                               Matrix const& g_inv, SparseDelta const& x) {
  int const s = g.size();
  std::uint8_t const* t = ring.table();
  std::size_t const q = ring.size();
  Matrix out = Matrix::identity(s, ring.one());
  for (auto const& e : x.entries()) {
    // column e.row of g, scaled by e.value, times row e.col of g^-1
    for (int r = 0; r < s; ++r) {
      std::uint8_t gv = t[g.raw(r, e.row) * q + e.value];
      if (gv == 0) {
        continue;
      }
      std::uint8_t const* row = t + gv * q;
      for (int c = 0; c < s; ++c) {
        out.raw(r, c) ^= row[g_inv.raw(e.col, c)];
      }
    }
  }
  return out;
}

}  // namespace sympl

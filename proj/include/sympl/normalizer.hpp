#pragma once

// Polynomial normalizer test for Ep(R, Λ) when 1 ∈ Λ and the ring is
// finite: there Ep(R, Λ) = Sp(R, Λ), so g normalizes it iff conjugating
// each elementary generator by g^±1 lands in the block-criterion set.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/ring.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

struct NormalizerVerdict {
  bool ok = true;
  // First Ep(R, Λ) generator whose conjugate fails, and which side:
  // inverse_side = false for g x g^-1, true for g^-1 x g.
  std::optional<std::size_t> failing_generator;
  bool inverse_side = false;
};

class NormalizerTest {
 public:
  NormalizerTest(SpGroup const& group, FormRing fr)
      : group_(group), fr_(std::move(fr)) {
    if (!fr_.Lambda().contains(group_.ring().one())) {
      throw UsageError("normalizer test needs 1 in Λ");
    }
    for (auto& x : group_.ep_generators_labelled(fr_)) {
      labels_.push_back(x);
      deltas_.emplace_back(x.matrix, group_.ring().one());
    }
  }

  FormRing const& form_ring() const noexcept { return fr_; }
  std::vector<LabelledGenerator> const& generators() const noexcept {
    return labels_;
  }

  NormalizerVerdict check(Matrix const& g) const {
    group_.check_shape(g);
    Matrix gi = group_.inverse(g);
    for (bool inv_side : {false, true}) {
      Matrix const& a = inv_side ? gi : g;
      Matrix const& b = inv_side ? g : gi;
      for (std::size_t k = 0; k < deltas_.size(); ++k) {
        Matrix y = conjugate_sparse(group_.ring(), a, b, deltas_[k]);
        if (!group_.in_bak_sp(y, fr_)) {
          return {false, k, inv_side};
        }
      }
    }
    return {};
  }

  bool operator()(Matrix const& g) const { return check(g).ok; }

 private:
  SpGroup const& group_;
  FormRing fr_;
  std::vector<LabelledGenerator> labels_;
  std::vector<SparseDelta> deltas_;
};

inline bool normalizes(SpGroup const& group, Matrix const& g,
                       FormRing const& fr) {
  return NormalizerTest(group, fr)(g);
}

// Smallest subring containing K and every product g_ij g_kl of entries of a
// generator or its inverse.
inline Subring entry_product_ring(SpGroup const& group,
                                  std::vector<Matrix> const& gens,
                                  Subring const& K) {
  Ring const& r = group.ring();
  std::vector<RingElt> seeds = K.to_vector();
  ElementSet seen = K.elements();
  for (auto const& g0 : gens) {
    group.check_shape(g0);
    for (Matrix const& g : {g0, group.inverse(g0)}) {
      ElementSet entries;
      for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j) {
          entries.set(g.at(i, j).bits);
        }
      }
      auto es = to_elements(entries);
      for (auto a : es) {
        for (auto b : es) {
          RingElt p = r.mul(a, b);
          if (!seen.test(p.bits)) {
            seen.set(p.bits);
            seeds.push_back(p);
          }
        }
      }
    }
  }
  return subring_generated(group.ring_ptr(), seeds);
}

}  // namespace sympl

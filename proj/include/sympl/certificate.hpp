#pragma once

// Subgroups H = <Ep(K) ∪ extra generators> and matrices carried together
// with a word over H's generators that evaluates to them.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"
#include "sympl/symplectic.hpp"
#include "sympl/word.hpp"

namespace sympl {

struct Certified {
  Matrix value;
  Word word;
};

// Reference roots for level sets: ε1 - ε2 (short) and 2ε1 (long).
inline Root reference_root(bool is_long, int n) {
  return is_long ? Root::long_root(1, 1, n) : Root::short_root(1, 1, 2, -1, n);
}

class SubgroupContext {
 public:
  // Generators are ep_generators((K, K)) in their usual order followed by
  // the extra generators.
  SubgroupContext(SpGroup group, Subring K, std::vector<Matrix> extras)
      : group_(std::move(group)), K_(std::move(K)) {
    if (K_.parent().get() != group_.ring_ptr().get()) {
      throw UsageError("K is not a subring of the group's ring");
    }
    FormRing kk(FormParameter(K_, K_.elements()));
    for (auto const& x : group_.ep_generators_labelled(kk)) {
      ep_index_[{x.root, x.scalar.bits}] = gens_.size();
      gens_.push_back(x.matrix);
      labels_.push_back("x_" + x.root.to_string() + "("
                        + group_.ring().format(x.scalar) + ")");
    }
    num_ep_ = gens_.size();
    for (std::size_t i = 0; i < extras.size(); ++i) {
      if (!group_.is_symplectic(extras[i])) {
        throw ValidationError("extra generator " + std::to_string(i)
                              + " is not symplectic");
      }
      gens_.push_back(extras[i]);
      labels_.push_back("extra[" + std::to_string(i) + "]");
    }
    build_weyl_table();
  }

  SpGroup const& group() const noexcept { return group_; }
  Ring const& ring() const noexcept { return group_.ring(); }
  Subring const& K() const noexcept { return K_; }
  int rank() const noexcept { return group_.rank(); }
  std::vector<Matrix> const& generators() const noexcept { return gens_; }
  std::vector<std::string> const& labels() const noexcept { return labels_; }
  std::size_t num_ep() const noexcept { return num_ep_; }
  std::size_t num_extra() const noexcept { return gens_.size() - num_ep_; }

  Certified identity() const { return {group_.identity(), Word()}; }

  Certified generator(std::size_t i) const {
    return {gens_.at(i), Word::letter(i)};
  }

  Certified extra(std::size_t i) const { return generator(num_ep_ + i); }

  // x_α(k) for k ∈ K as a single letter; the identity for k = 0.
  Certified root_letter(Root const& a, RingElt k) const {
    if (k.bits == 0) {
      return identity();
    }
    auto it = ep_index_.find({a, k.bits});
    if (it == ep_index_.end()) {
      throw UsageError("x_" + a.to_string() + "(" + ring().format(k)
                       + ") is not a generator of Ep(K)");
    }
    return generator(it->second);
  }

  Certified one_letter(Root const& a) const {
    return root_letter(a, ring().one());
  }

  // w_α = x_α(1) x_{-α}(1) x_α(1).
  Certified weyl(Root const& a) const {
    Certified x = one_letter(a);
    return mul(mul(x, one_letter(-a)), x);
  }

  Certified mul(Certified const& a, Certified const& b) const {
    return {group_.mul(a.value, b.value), a.word * b.word};
  }

  Certified inv(Certified const& a) const {
    return {group_.inverse(a.value), a.word.inverse()};
  }

  Certified comm(Certified const& a, Certified const& b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }

  // a^b = b^-1 a b.
  Certified conj(Certified const& a, Certified const& b) const {
    return mul(mul(inv(b), a), b);
  }

  // W a W^-1 where W carries root β to the reference root of its length.
  Certified to_reference(Root const& beta, Certified const& a) const {
    Certified const& w = weyl_to_ref_.at(beta);
    return mul(mul(w, a), inv(w));
  }

  // W^-1 a W: a root element at the reference root moved to β.
  Certified from_reference(Root const& beta, Certified const& a) const {
    Certified const& w = weyl_to_ref_.at(beta);
    return mul(mul(inv(w), a), w);
  }

  Matrix evaluate(Word const& w) const {
    return sympl::evaluate(group_, gens_, w);
  }

 private:
  void build_weyl_table() {
    int n = rank();
    auto simple = simple_roots(n);
    for (bool is_long : {false, true}) {
      Root ref = reference_root(is_long, n);
      weyl_to_ref_[ref] = identity();
      std::vector<Root> frontier{ref};
      while (!frontier.empty()) {
        std::vector<Root> next;
        for (auto const& r : frontier) {
          for (auto const& s : simple) {
            Root t = reflect(s, r);
            if (weyl_to_ref_.count(t) != 0) {
              continue;
            }
            // W_t = W_r w_s: w_s moves t to r, W_r moves r to ref.
            weyl_to_ref_[t] = mul(weyl_to_ref_.at(r), weyl(s));
            next.push_back(t);
          }
        }
        frontier = std::move(next);
      }
    }
  }

  SpGroup group_;
  Subring K_;
  std::vector<Matrix> gens_;
  std::vector<std::string> labels_;
  std::size_t num_ep_ = 0;
  std::map<std::pair<Root, std::uint8_t>, std::size_t> ep_index_;
  std::map<Root, Certified> weyl_to_ref_;
};

}  // namespace sympl

#pragma once

// Executable checks of the structural results at desk scale: the
// normalizer description at rank 2, the small unipotent identity, normal
// generation, generation from parabolic pieces and the commutator formulas.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sympl/closure.hpp"
#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/normalizer.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

// Product of len generators drawn uniformly.
inline Matrix random_element(SpGroup const& group,
                             std::vector<Matrix> const& gens, int len,
                             std::mt19937_64& rng) {
  Matrix m = group.identity();
  if (gens.empty()) {
    return m;
  }
  for (int k = 0; k < len; ++k) {
    m = group.mul(m, gens[rng() % gens.size()]);
  }
  return m;
}

// Ep(A, A) with Λ = A.
inline FormRing full_form_ring(RingPtr const& A) {
  Subring R = Subring::whole(A);
  return FormRing(FormParameter(R, R.elements()));
}

// ---------------------------------------------------------------------------
// Commutator formulas

struct CommutatorSuiteReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t per_case[5] = {0, 0, 0, 0, 0};
  std::string first_failure;
};

// Every root pair α ≠ ±β and every scalar pair: the matrix commutator
// against the expansion.
inline CommutatorSuiteReport commutator_suite(SpGroup const& group) {
  CommutatorSuiteReport rep;
  Ring const& r = group.ring();
  auto roots = all_roots(group.rank());
  auto elems = r.elements();
  for (auto const& a : roots) {
    for (auto const& b : roots) {
      if (a == b || a == -b) {
        continue;
      }
      for (auto s : elems) {
        Matrix xa = group.root_element(a, s);
        for (auto t : elems) {
          Matrix xb = group.root_element(b, t);
          auto exp = group.chevalley_commutator(a, s, b, t);
          ++rep.checked;
          ++rep.per_case[static_cast<int>(exp.kind)];
          if (!(group.commutator(xa, xb) == group.evaluate(exp.factors))) {
            if (rep.failures == 0) {
              rep.first_failure = "[x_" + a.to_string() + "(" + r.format(s)
                                  + "), x_" + b.to_string() + "("
                                  + r.format(t) + ")]";
            }
            ++rep.failures;
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Normalizer description at rank 2

struct Theorem2Report {
  bool skipped = false;
  std::string reason;
  std::size_t group_order = 0;
  std::size_t normalizer_size = 0;
  std::size_t bak_size = 0;
  bool part1 = false;
  bool part2 = false;
  bool part3 = false;
  bool part2_exhaustive = false;
  bool part3_exhaustive = false;
  std::size_t part2_checks = 0;
  std::size_t part3_checks = 0;
  std::size_t failures = 0;

  bool ok() const { return !skipped && part1 && part2 && part3; }
};

struct Theorem2Options {
  std::size_t cap = kDefaultCap;
  std::uint64_t seed = 1;
  std::size_t full_sweep_limit = 20'000'000;  // |N| * |B| for part 2
  std::size_t part2_samples = 100'000;
  std::size_t pair_sweep_limit = 1000;  // |N| for part 3
  std::size_t part3_samples = 10'000;
};

// Enumerates Sp_4(A), computes N = {g : g normalizes Ep(R, Λ)} and checks
// (1) Sp(R, Λ) = Sp(R) ∩ N, (2) N normalizes Sp(R, Λ) and (3)
// [N, N] <= Sp(R, Λ).
inline Theorem2Report verify_theorem2(SpGroup const& group, FormRing const& fr,
                                      Theorem2Options const& opt = {}) {
  Theorem2Report rep;
  if (group.rank() != 2) {
    throw UsageError("this check enumerates Sp_4 and needs rank 2");
  }
  GroupClosure all(group, group.ep_generators(full_form_ring(group.ring_ptr())),
                   opt.cap);
  if (!all.complete()) {
    rep.skipped = true;
    rep.reason = "Sp_4 enumeration stopped at the cap of "
                 + std::to_string(opt.cap) + " elements";
    return rep;
  }
  rep.group_order = all.size();
  NormalizerTest test(group, fr);
  Subring const& R = fr.R();
  std::vector<Matrix> N;
  std::vector<Matrix> B;
  rep.part1 = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Matrix g = all.element(i);
    bool in_n = test(g);
    bool in_b = group.in_bak_sp(g, fr);
    bool entries_in_r = true;
    for (int r = 0; r < g.size() && entries_in_r; ++r) {
      for (int c = 0; c < g.size(); ++c) {
        if (!R.contains(g.at(r, c))) {
          entries_in_r = false;
          break;
        }
      }
    }
    if ((in_n && entries_in_r) != in_b) {
      rep.part1 = false;
      ++rep.failures;
    }
    if (in_n) {
      N.push_back(g);
    }
    if (in_b) {
      B.push_back(g);
    }
  }
  rep.normalizer_size = N.size();
  rep.bak_size = B.size();

  std::mt19937_64 rng(opt.seed);
  auto stable = [&](Matrix const& g, Matrix const& b) {
    ++rep.part2_checks;
    Matrix y = group.mul(group.mul(g, b), group.inverse(g));
    if (!group.in_bak_sp(y, fr)) {
      ++rep.failures;
      return false;
    }
    return true;
  };
  rep.part2 = true;
  if (N.size() * B.size() <= opt.full_sweep_limit) {
    rep.part2_exhaustive = true;
    for (auto const& g : N) {
      for (auto const& b : B) {
        rep.part2 = stable(g, b) && rep.part2;
      }
    }
  } else {
    auto gens = group.ep_generators(fr);
    for (auto const& g : N) {
      for (auto const& b : gens) {
        rep.part2 = stable(g, b) && rep.part2;
      }
    }
    for (std::size_t k = 0; k < opt.part2_samples; ++k) {
      rep.part2 = stable(N[rng() % N.size()], B[rng() % B.size()]) && rep.part2;
    }
  }

  auto comm_ok = [&](Matrix const& g, Matrix const& h) {
    ++rep.part3_checks;
    if (!group.in_bak_sp(group.commutator(g, h), fr)) {
      ++rep.failures;
      return false;
    }
    return true;
  };
  rep.part3 = true;
  if (N.size() <= opt.pair_sweep_limit) {
    rep.part3_exhaustive = true;
    for (auto const& g : N) {
      for (auto const& h : N) {
        rep.part3 = comm_ok(g, h) && rep.part3;
      }
    }
  } else {
    for (std::size_t k = 0; k < opt.part3_samples; ++k) {
      rep.part3 = comm_ok(N[rng() % N.size()], N[rng() % N.size()]) && rep.part3;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Small unipotent identity

// True iff [x_α(s)^{h^g}, x_α(t)] = e for all s, t in the ring.
inline bool small_unipotent_identity(SpGroup const& group, Matrix const& g,
                                     Matrix const& h, Root const& alpha) {
  if (!alpha.is_long()) {
    throw UsageError("the identity is stated for a long root");
  }
  Matrix hg = group.conj(h, g);
  Matrix hg_inv = group.inverse(hg);
  auto elems = group.ring().elements();
  std::vector<Matrix> xs;
  for (auto s : elems) {
    xs.push_back(group.root_element(alpha, s));
  }
  for (auto const& xs_s : xs) {
    // x^{hg} = (hg)^-1 x (hg)
    Matrix y = group.mul(group.mul(hg_inv, xs_s), hg);
    for (auto const& xt : xs) {
      if (!(group.commutator(y, xt) == group.identity())) {
        return false;
      }
    }
  }
  return true;
}

// Random search for g making the identity fail when h is the long
// transvection T_{1,-1}(1).  No claim is made either way.
inline std::optional<Matrix> search_long_counterexample(
    SpGroup const& group, std::size_t trials, std::mt19937_64& rng,
    int len = 12) {
  auto gens = group.ep_generators(full_form_ring(group.ring_ptr()));
  Matrix h = group.transvection(1, -1, group.ring().one());
  Root alpha = Root::long_root(1, 1, group.rank());
  for (std::size_t k = 0; k < trials; ++k) {
    Matrix g = random_element(group, gens, len, rng);
    if (!small_unipotent_identity(group, g, h, alpha)) {
      return g;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generation checks

struct ClosureComparison {
  bool skipped = false;
  std::string reason;
  std::size_t expected = 0;
  std::size_t actual = 0;
  bool equal = false;
};

// {T_1i(μ), T_i1(μ) : i ≠ ±1, μ ∈ R} ∪ {T_{1,-1}(λ), T_{-1,1}(λ) : λ ∈ Λ}.
inline std::vector<Matrix> p1_generators(SpGroup const& group,
                                         FormRing const& fr) {
  std::vector<Matrix> out;
  int n = group.rank();
  for (int i : index_order(n)) {
    if (i == 1 || i == -1) {
      continue;
    }
    for (auto mu : fr.R().to_vector()) {
      if (mu.bits != 0) {
        out.push_back(group.transvection(1, i, mu));
        out.push_back(group.transvection(i, 1, mu));
      }
    }
  }
  for (auto lam : fr.Lambda().to_vector()) {
    if (lam.bits != 0) {
      out.push_back(group.transvection(1, -1, lam));
      out.push_back(group.transvection(-1, 1, lam));
    }
  }
  return out;
}

inline ClosureComparison compare_closures(GroupClosure const& expected,
                                          GroupClosure const& actual) {
  ClosureComparison c;
  if (!expected.complete() || !actual.complete()) {
    c.skipped = true;
    c.reason = "closure stopped at the cap";
    return c;
  }
  c.expected = expected.size();
  c.actual = actual.size();
  c.equal = c.expected == c.actual
            && expected.sorted_keys() == actual.sorted_keys();
  return c;
}

inline ClosureComparison verify_ep_generation_from_p1(
    SpGroup const& group, FormRing const& fr, std::size_t cap = kDefaultCap) {
  GroupClosure ep(group, group.ep_generators(fr), cap);
  GroupClosure restricted(group, p1_generators(group, fr), cap);
  return compare_closures(ep, restricted);
}

// Normal closure of seed under conjugation by Ep(R, Λ), against Ep(R, Λ).
inline ClosureComparison verify_normal_generation(
    SpGroup const& group, FormRing const& fr, std::vector<Matrix> const& seed,
    std::size_t cap = kDefaultCap) {
  auto gens = group.ep_generators(fr);
  GroupClosure ep(group, gens, cap);
  GroupClosure nc = normal_closure(group, seed, gens, cap);
  return compare_closures(ep, nc);
}

}  // namespace sympl

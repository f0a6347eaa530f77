#pragma once

// Finds the form ring (R, Λ) with Ep(R, Λ) <= H <= N_A(R, Λ) for
// H = <Ep(K) ∪ extras>, together with certificates for both inclusions.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sympl/certificate.hpp"
#include "sympl/errors.hpp"
#include "sympl/harvest.hpp"
#include "sympl/matrix.hpp"
#include "sympl/normalizer.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"
#include "sympl/symplectic.hpp"
#include "sympl/word.hpp"

namespace sympl {

struct SubgroupInput {
  RingPtr A;
  Subring K;
  int n = 3;
  std::vector<Matrix> extras;
};

enum class Status { kCertified, kInconclusive };
enum class Uniqueness { kVerified, kSkipped };

inline char const* to_string(Status s) {
  return s == Status::kCertified ? "certified" : "inconclusive";
}

inline char const* to_string(Uniqueness u) {
  return u == Uniqueness::kVerified ? "verified" : "skipped";
}

// x_root(scalar) ∈ H, witnessed by word.
struct LowerCert {
  Root root;
  RingElt scalar;
  Word word;
};

struct UpperCheck {
  std::size_t generator;
  bool ok;
};

struct SandwichReport {
  Status status = Status::kInconclusive;
  std::optional<FormRing> form_ring;
  std::vector<LowerCert> lower_certs;
  std::vector<UpperCheck> upper_checks;
  Uniqueness uniqueness = Uniqueness::kSkipped;
  std::string uniqueness_note;
  std::string diagnostics;
  int depth_used = 0;
  ElementSet short_levels;
  ElementSet long_levels;
  HarvestStats stats;
};

struct ClassifyOptions {
  int max_depth = 6;
  std::size_t pool_cap = 256;
  // Uniqueness is checked against every other form ring between K and A
  // when |A| is at most this.
  std::size_t uniqueness_limit = 16;
  bool allow_rank2 = false;
};

namespace detail {

inline ElementSet with_zero(ElementSet s) {
  s.set(0);
  return s;
}

// Another sandwich (R', Λ') is ruled out when Ep(R', Λ') does not
// normalize Ep(R, Λ) or Ep(R, Λ) does not normalize Ep(R', Λ'); either
// would contradict the two inclusions.
inline bool refuted(SpGroup const& grp, FormRing const& mine,
                    FormRing const& other) {
  NormalizerTest into_mine(grp, mine);
  for (auto const& x : grp.ep_generators(other)) {
    if (!into_mine(x)) {
      return true;
    }
  }
  NormalizerTest into_other(grp, other);
  for (auto const& x : grp.ep_generators(mine)) {
    if (!into_other(x)) {
      return true;
    }
  }
  return false;
}

inline void check_uniqueness(SpGroup const& grp, Subring const& K,
                             FormRing const& fr, ClassifyOptions const& opt,
                             SandwichReport& rep) {
  Ring const& A = grp.ring();
  if (A.size() > opt.uniqueness_limit) {
    rep.uniqueness = Uniqueness::kSkipped;
    rep.uniqueness_note = "ring has " + std::to_string(A.size())
                          + " elements, above the limit of "
                          + std::to_string(opt.uniqueness_limit);
    return;
  }
  for (auto const& other : enumerate_form_rings(grp.ring_ptr(), K)) {
    if (other == fr) {
      continue;
    }
    if (!refuted(grp, fr, other)) {
      rep.uniqueness = Uniqueness::kSkipped;
      rep.uniqueness_note =
          "could not rule out R = " + format_set(A, other.R().elements())
          + ", Λ = " + format_set(A, other.Lambda().elements());
      return;
    }
  }
  rep.uniqueness = Uniqueness::kVerified;
  rep.uniqueness_note.clear();
}

}  // namespace detail

inline SandwichReport classify(SubgroupInput const& input,
                               ClassifyOptions const& opt = {}) {
  if (input.K.parent().get() != input.A.get()) {
    throw UsageError("K is not a subring of A");
  }
  if (input.n < 3 && !(input.n == 2 && opt.allow_rank2)) {
    throw RankError("classification needs rank at least 3");
  }
  SpGroup grp(input.A, input.n);
  SubgroupContext ctx(grp, input.K, input.extras);
  Subring E = entry_product_ring(grp, input.extras, input.K);
  Harvester harvester(ctx, opt.pool_cap);
  SandwichReport rep;
  Ring const& A = grp.ring();

  for (int d = 1; d <= opt.max_depth; ++d) {
    harvester.deepen();
    LevelStore const& store = harvester.store();
    rep.depth_used = d;
    rep.stats = harvester.harvest().stats;
    rep.short_levels = detail::with_zero(store.elements(false));
    rep.long_levels = detail::with_zero(store.elements(true));
    if ((E.elements() & ~rep.short_levels).any()) {
      rep.diagnostics = "short levels " + format_set(A, rep.short_levels)
                        + " miss entry products "
                        + format_set(A, E.elements() & ~rep.short_levels);
      continue;
    }
    Subring R(input.A, rep.short_levels);
    FormRing fr(FormParameter(R, rep.long_levels));
    rep.form_ring = fr;
    NormalizerTest test(grp, fr);
    rep.upper_checks.clear();
    std::optional<std::size_t> failing;
    for (std::size_t i = 0; i < ctx.generators().size(); ++i) {
      bool ok = test(ctx.generators()[i]);
      rep.upper_checks.push_back({i, ok});
      if (!ok && !failing) {
        failing = i;
      }
    }
    if (failing) {
      rep.diagnostics = "generator " + ctx.labels()[*failing]
                        + " does not normalize Ep(R, Λ) with R = "
                        + format_set(A, R.elements()) + ", Λ = "
                        + format_set(A, fr.Lambda().elements());
      continue;
    }
    rep.lower_certs.clear();
    for (auto const& x : grp.ep_generators_labelled(fr)) {
      Certified c = level_certificate(ctx, store, x.root, x.scalar);
      rep.lower_certs.push_back({x.root, x.scalar, c.word});
    }
    rep.status = Status::kCertified;
    rep.diagnostics.clear();
    detail::check_uniqueness(grp, input.K, fr, opt, rep);
    return rep;
  }
  rep.status = Status::kInconclusive;
  return rep;
}

}  // namespace sympl

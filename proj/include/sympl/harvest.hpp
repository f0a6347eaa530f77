#pragma once

// Constructive extraction of root elements from a subgroup
// H = <Ep(K) ∪ extras>: every harvested scalar t comes with a word over H's
// generators that evaluates to x_α(t).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympl/certificate.hpp"
#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/ring.hpp"
#include "sympl/root.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

// ---------------------------------------------------------------------------
// uncouple

struct Uncoupled {
  RingElt mu;
  RingElt lambda;
  Certified short_factor;  // x_α(μ)
  Certified long_factor;   // x_β(λ)
};

// g = x_α(μ) x_β(λ) with α short, β long and α + β not a root.  The short
// factor is isolated as [g, x_γ(1)] = x_{α+γ}(μ) for a short γ with α + γ
// short and β + γ not a root, then moved back by w_γ.  The long factor is
// x_α(μ)^-1 g.
inline Uncoupled uncouple(SubgroupContext const& ctx, Certified const& g,
                          Root const& alpha, Root const& beta) {
  SpGroup const& grp = ctx.group();
  int n = grp.rank();
  if (!alpha.is_short() || !beta.is_long()) {
    throw UsageError("uncouple needs a short and a long root");
  }
  if (add(alpha, beta)) {
    throw UsageError("uncouple needs α + β not to be a root");
  }
  auto [ai, aj] = position_of_root(alpha);
  auto [bi, bj] = position_of_root(beta);
  RingElt mu = grp.entry(g.value, ai, aj);
  RingElt lambda = grp.entry(g.value, bi, bj);
  if (!(grp.mul(grp.root_element(alpha, mu), grp.root_element(beta, lambda))
        == g.value)) {
    throw PatternError("matrix is not x_" + alpha.to_string() + "(μ) x_"
                       + beta.to_string() + "(λ)");
  }
  if (mu.bits == 0) {
    return {mu, lambda, ctx.identity(), g};
  }
  std::optional<Root> gamma;
  for (auto const& r : all_roots(n)) {
    if (!r.is_short() || r == -beta) {
      continue;
    }
    auto ag = add(alpha, r);
    if (ag && ag->is_short() && !add(beta, r)) {
      gamma = r;
      break;
    }
  }
  if (!gamma) {
    throw RankError("uncouple needs rank at least 3");
  }
  Certified c = ctx.comm(g, ctx.one_letter(*gamma));
  Certified w = ctx.weyl(*gamma);
  Certified xa = ctx.mul(ctx.mul(w, c), ctx.inv(w));
  if (!(xa.value == grp.root_element(alpha, mu))) {
    throw std::logic_error("uncouple: isolated factor has the wrong shape");
  }
  Certified xb = ctx.mul(ctx.inv(xa), g);
  return {mu, lambda, xa, xb};
}

// ---------------------------------------------------------------------------
// U_1 coordinates and factorization

// μ_j for j ∈ I \ {1}, keyed by j.  U_1 is abelian in characteristic 2 and
// g = prod_j T_1j(μ_j) in any order; the long coordinate is
// μ_{-1} = g_{1,-1} + sum_{j=2..n} μ_j μ_{-j}.
inline std::map<int, RingElt> u1_coordinates(SpGroup const& grp,
                                             Matrix const& g) {
  if (!grp.in_u1(g)) {
    throw UsageError("matrix is not in U_1");
  }
  Ring const& r = grp.ring();
  int n = grp.rank();
  std::map<int, RingElt> mu;
  for (int j : index_order(n)) {
    if (j != 1 && j != -1) {
      mu[j] = grp.entry(g, 1, j);
    }
  }
  RingElt lng = grp.entry(g, 1, -1);
  for (int j = 2; j <= n; ++j) {
    lng = r.add(lng, r.mul(mu[j], mu[-j]));
  }
  mu[-1] = lng;
  return mu;
}

struct U1Factor {
  int j;
  RingElt mu;
  Certified cert;  // T_1j(μ_j)
};

// Certified factorization g = prod_j T_1j(μ_j) for g ∈ U_1 ∩ H, n >= 3.
// Each short coordinate μ_j is exposed by [g, T_{j,-j}(1)], which equals
// T_{1,-j}(μ_j) T_{1,-1}(μ_j^2); uncouple splits it, w_{2ε_j} moves the
// short factor back to position (1, j), and the long remainder is what is
// left after peeling the short factors.
inline std::vector<U1Factor> u1_factorize(SubgroupContext const& ctx,
                                          Certified const& g) {
  SpGroup const& grp = ctx.group();
  int n = grp.rank();
  auto mu = u1_coordinates(grp, g.value);
  Root top = Root::long_root(1, 1, n);
  std::vector<U1Factor> out;
  Certified rest = g;
  for (int j : index_order(n)) {
    if (j == 1 || j == -1 || mu[j].bits == 0) {
      continue;
    }
    Root lj = root_of_position(j, -j, n);
    Certified v = ctx.comm(g, ctx.one_letter(lj));
    Root side = root_of_position(1, -j, n);
    Uncoupled parts = uncouple(ctx, v, side, top);
    if (parts.mu != mu[j]) {
      throw std::logic_error("u1_factorize: exposed coordinate mismatch");
    }
    Certified w = ctx.weyl(lj);
    Certified t = ctx.mul(ctx.mul(w, parts.short_factor), ctx.inv(w));
    if (!(t.value == grp.transvection(1, j, mu[j]))) {
      throw std::logic_error("u1_factorize: Weyl move failed");
    }
    out.push_back({j, mu[j], t});
    rest = ctx.mul(ctx.inv(t), rest);
  }
  if (!(rest.value == grp.transvection(1, -1, mu[-1]))) {
    throw std::logic_error("u1_factorize: long remainder mismatch");
  }
  if (mu[-1].bits != 0) {
    out.push_back({-1, mu[-1], rest});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Level stores

// Certificates for x_ref(t), one per scalar, at the two reference roots.
class LevelStore {
 public:
  explicit LevelStore(int n) : n_(n) {}

  bool has(bool is_long, RingElt t) const {
    return entries(is_long).count(t.bits) != 0;
  }

  Certified const& get(bool is_long, RingElt t) const {
    return entries(is_long).at(t.bits);
  }

  ElementSet elements(bool is_long) const {
    ElementSet s;
    for (auto const& [bits, c] : entries(is_long)) {
      s.set(bits);
    }
    return s;
  }

  std::size_t size(bool is_long) const { return entries(is_long).size(); }

  // Records a certificate for x_ref(t); keeps the shorter word.  Returns
  // true when t is new at this length.
  bool record(bool is_long, RingElt t, Certified c) {
    auto& m = side(is_long);
    auto it = m.find(t.bits);
    if (it == m.end()) {
      m.emplace(t.bits, std::move(c));
      return true;
    }
    if (c.word.size() < it->second.word.size()) {
      it->second = std::move(c);
    }
    return false;
  }

  std::map<std::uint8_t, Certified> const& entries(bool is_long) const {
    return is_long ? long_ : short_;
  }

  int rank() const noexcept { return n_; }

 private:
  std::map<std::uint8_t, Certified>& side(bool is_long) {
    return is_long ? long_ : short_;
  }

  int n_;
  std::map<std::uint8_t, Certified> short_;
  std::map<std::uint8_t, Certified> long_;
};

// Records a certified root element x_β(t) after moving it to the reference
// root.  Zero scalars are ignored.
inline bool record_root_element(SubgroupContext const& ctx, LevelStore& store,
                                Root const& beta, RingElt t,
                                Certified const& c) {
  if (t.bits == 0) {
    return false;
  }
  Certified moved = ctx.to_reference(beta, c);
  Root ref = reference_root(beta.is_long(), ctx.rank());
  if (!(moved.value == ctx.group().root_element(ref, t))) {
    throw std::logic_error("Weyl move to the reference root failed");
  }
  return store.record(beta.is_long(), t, std::move(moved));
}

// Certificate for x_β(t) from the store.
inline Certified level_certificate(SubgroupContext const& ctx,
                                   LevelStore const& store, Root const& beta,
                                   RingElt t) {
  if (t.bits == 0) {
    return ctx.identity();
  }
  return ctx.from_reference(beta, store.get(beta.is_long(), t));
}

// Closes the store: short levels under + and ·, long levels under + and
// λ -> μ²λ, and long into short.  Every new entry is composed from existing
// certificates.  Returns the number of new scalars.
inline std::size_t close_levels(SubgroupContext const& ctx, LevelStore& store) {
  SpGroup const& grp = ctx.group();
  Ring const& r = grp.ring();
  int n = grp.rank();
  Root s12 = Root::short_root(1, 1, 2, -1, n);
  Root s13 = Root::short_root(1, 1, 3, -1, n);
  Root s32 = Root::short_root(3, 1, 2, -1, n);
  Root p12 = Root::short_root(1, 1, 2, 1, n);
  Root l1 = Root::long_root(1, 1, n);
  Root l2 = Root::long_root(2, 1, n);
  std::size_t added = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    auto shorts = store.entries(false);
    auto longs = store.entries(true);
    // additive closure
    for (bool is_long : {false, true}) {
      auto const& m = is_long ? longs : shorts;
      for (auto const& [a, ca] : m) {
        for (auto const& [b, cb] : m) {
          RingElt s = r.add(RingElt{a}, RingElt{b});
          if (s.bits != 0 && !store.has(is_long, s)) {
            store.record(is_long, s, ctx.mul(ca, cb));
            ++added;
            changed = true;
          }
        }
      }
    }
    // products: [x_{ε1-ε3}(s), x_{ε3-ε2}(t)] = x_{ε1-ε2}(st)
    for (auto const& [a, ca] : shorts) {
      for (auto const& [b, cb] : shorts) {
        RingElt p = r.mul(RingElt{a}, RingElt{b});
        if (p.bits == 0 || store.has(false, p)) {
          continue;
        }
        Certified c = ctx.comm(ctx.from_reference(s13, ca),
                               ctx.from_reference(s32, cb));
        if (!(c.value == grp.root_element(s12, p))) {
          throw std::logic_error("short product identity failed");
        }
        store.record(false, p, std::move(c));
        ++added;
        changed = true;
      }
    }
    // λ -> μ²λ: [x_{2ε2}(λ), x_{ε1-ε2}(μ)] = x_{ε1+ε2}(λμ) x_{2ε1}(λμ²)
    for (auto const& [a, ca] : longs) {
      for (auto const& [b, cb] : shorts) {
        RingElt lam{a};
        RingElt mu{b};
        RingElt v = r.mul(r.square(mu), lam);
        if (v.bits == 0 || store.has(true, v)) {
          continue;
        }
        Certified c = ctx.comm(ctx.from_reference(l2, ca), cb);
        Uncoupled parts = uncouple(ctx, c, p12, l1);
        if (parts.lambda != v) {
          throw std::logic_error("square multiple identity failed");
        }
        store.record(true, v, std::move(parts.long_factor));
        ++added;
        changed = true;
      }
    }
    // long into short: [x_{2ε1}(λ), x_{ε2-ε1}(1)] = x_{ε1+ε2}(λ) x_{2ε2}(λ)
    for (auto const& [a, ca] : longs) {
      RingElt lam{a};
      if (store.has(false, lam)) {
        continue;
      }
      Certified c = ctx.comm(ca, ctx.one_letter(-s12));
      Uncoupled parts = uncouple(ctx, c, p12, l2);
      if (parts.mu != lam) {
        throw std::logic_error("long to short identity failed");
      }
      record_root_element(ctx, store, p12, lam, parts.short_factor);
      ++added;
      changed = true;
    }
  }
  return added;
}

// ---------------------------------------------------------------------------
// Harvesting

struct HarvestStats {
  std::size_t pool = 0;
  std::size_t root_elements = 0;
  std::size_t u1_factorizations = 0;
  std::size_t uncoupled = 0;
  std::size_t parabolic_failures = 0;
};

struct Harvest {
  LevelStore store;
  int depth_used = 0;
  HarvestStats stats;
};

namespace detail {

inline void harvest_u1(SubgroupContext const& ctx, LevelStore& store,
                       Certified const& u, HarvestStats& stats) {
  for (auto const& f : u1_factorize(ctx, u)) {
    record_root_element(ctx, store,
                        root_of_position(1, f.j, ctx.rank()), f.mu, f.cert);
  }
  ++stats.u1_factorizations;
}

// Direct sources for one pool element p.
inline void harvest_element(SubgroupContext const& ctx, LevelStore& store,
                            Certified const& p, HarvestStats& stats) {
  SpGroup const& grp = ctx.group();
  int n = grp.rank();
  if (p.value == grp.identity()) {
    return;
  }
  if (auto rf = grp.as_root_element(p.value)) {
    record_root_element(ctx, store, rf->root, rf->scalar, p);
    ++stats.root_elements;
    return;
  }
  if (grp.in_u1(p.value)) {
    harvest_u1(ctx, store, p, stats);
    return;
  }
  // two-factor shape x_α(μ) x_β(λ)
  auto roots = all_roots(n);
  for (auto const& a : roots) {
    if (!a.is_short()) {
      continue;
    }
    for (auto const& b : roots) {
      if (!b.is_long() || add(a, b)) {
        continue;
      }
      auto [ai, aj] = position_of_root(a);
      auto [bi, bj] = position_of_root(b);
      RingElt mu = grp.entry(p.value, ai, aj);
      RingElt lam = grp.entry(p.value, bi, bj);
      if (mu.bits == 0 || lam.bits == 0) {
        continue;
      }
      if (grp.mul(grp.root_element(a, mu), grp.root_element(b, lam))
          == p.value) {
        Uncoupled parts = uncouple(ctx, p, a, b);
        record_root_element(ctx, store, a, mu, parts.short_factor);
        record_root_element(ctx, store, b, lam, parts.long_factor);
        ++stats.uncoupled;
        return;
      }
    }
  }
}

// For y ∈ H: z = y^-1 x_γ(1) y with γ short and c = z^-1 x_{2ε1}(1) z.
// Conjugates of short root elements commute with x_{2ε1}(1) after
// conjugation, so c ∈ P_1, and c^-1 T_1j(1) c ∈ U_1 ∩ H for every short j.
inline void harvest_parabolic(SubgroupContext const& ctx, LevelStore& store,
                              Certified const& y, HarvestStats& stats) {
  SpGroup const& grp = ctx.group();
  int n = grp.rank();
  Certified top = ctx.one_letter(Root::long_root(1, 1, n));
  for (auto const& gamma : all_roots(n)) {
    if (!gamma.is_short()) {
      continue;
    }
    Certified z = ctx.conj(ctx.one_letter(gamma), y);
    Certified c = ctx.conj(top, z);
    if (!grp.in_p1(c.value)) {
      ++stats.parabolic_failures;
      continue;
    }
    for (int j : index_order(n)) {
      if (j == 1 || j == -1) {
        continue;
      }
      Certified d = ctx.one_letter(root_of_position(1, j, n));
      Certified u = ctx.conj(d, c);
      if (u.value == d.value) {
        continue;
      }
      harvest_u1(ctx, store, u, stats);
    }
  }
}

}  // namespace detail

// Pool at depth d: depth 1 holds the extra generators and their inverses;
// depth d + 1 adds products of depth-d elements with depth-1 elements and
// commutators of depth-d elements with x_γ(1).  Each depth adds at most
// pool_cap elements, in a fixed order.
class Harvester {
 public:
  Harvester(SubgroupContext const& ctx, std::size_t pool_cap = 256)
      : ctx_(ctx), harvest_{LevelStore(ctx.rank()), 0, {}}, pool_cap_(pool_cap) {
    if (ctx.rank() < 3) {
      throw RankError("harvesting needs rank at least 3");
    }
    // Ep(K) generators give K at every root.
    for (std::size_t i = 0; i < ctx.num_ep(); ++i) {
      Certified g = ctx.generator(i);
      auto rf = ctx.group().as_root_element(g.value);
      record_root_element(ctx, harvest_.store, rf->root, rf->scalar, g);
    }
  }

  Harvest const& harvest() const noexcept { return harvest_; }
  LevelStore const& store() const noexcept { return harvest_.store; }

  // Runs one more depth and closes the levels.
  void deepen() {
    int d = ++harvest_.depth_used;
    std::vector<Certified> fresh;
    if (d == 1) {
      for (std::size_t i = 0; i < ctx_.num_extra(); ++i) {
        fresh.push_back(ctx_.extra(i));
        fresh.push_back(ctx_.inv(ctx_.extra(i)));
      }
      base_ = fresh;
    } else {
      for (auto const& p : last_) {
        for (auto const& b : base_) {
          push_unique(fresh, ctx_.mul(p, b));
        }
      }
      for (auto const& p : last_) {
        for (auto const& gamma : all_roots(ctx_.rank())) {
          push_unique(fresh, ctx_.comm(p, ctx_.one_letter(gamma)));
        }
      }
    }
    if (fresh.size() > pool_cap_) {
      fresh.resize(pool_cap_);
    }
    for (auto const& p : fresh) {
      detail::harvest_element(ctx_, harvest_.store, p, harvest_.stats);
      detail::harvest_parabolic(ctx_, harvest_.store, p, harvest_.stats);
    }
    harvest_.stats.pool += fresh.size();
    last_ = std::move(fresh);
    close_levels(ctx_, harvest_.store);
  }

 private:
  void push_unique(std::vector<Certified>& v, Certified c) {
    if (c.value == ctx_.group().identity()) {
      return;
    }
    for (auto const& x : v) {
      if (x.value == c.value) {
        return;
      }
    }
    for (auto const& x : last_) {
      if (x.value == c.value) {
        return;
      }
    }
    v.push_back(std::move(c));
  }

  SubgroupContext const& ctx_;
  Harvest harvest_;
  std::size_t pool_cap_;
  std::vector<Certified> base_;
  std::vector<Certified> last_;
};

// Harvest to a fixed depth.
inline Harvest harvest_levels(SubgroupContext const& ctx, int depth,
                              std::size_t pool_cap = 256) {
  Harvester h(ctx, pool_cap);
  for (int d = 0; d < depth; ++d) {
    h.deepen();
  }
  Harvest out = h.harvest();
  close_levels(ctx, out.store);
  return out;
}

}  // namespace sympl

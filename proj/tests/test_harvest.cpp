#include <catch_amalgamated.hpp>

#include <random>

#include "sympl/catalog.hpp"
#include "sympl/closure.hpp"
#include "sympl/harvest.hpp"

using namespace sympl;

namespace {

RingPtr ring(char const* name) { return Catalog::builtin().get(name); }

FormRing everything(RingPtr const& A) {
  Subring R = Subring::whole(A);
  return FormRing(FormParameter(R, R.elements()));
}

ElementSet with_zero(ElementSet s) {
  s.set(0);
  return s;
}

void check_cert(SubgroupContext const& ctx, Certified const& c) {
  REQUIRE(ctx.evaluate(c.word) == c.value);
}

}  // namespace

TEST_CASE("certified arithmetic tracks words", "[harvest]") {
  auto D = ring("F2eps");
  SpGroup g(D, 3);
  SubgroupContext ctx(g, Subring::prime(D), {g.transvection(1, 2, D->parse("eps"))});
  CHECK(ctx.num_ep() == 18);
  CHECK(ctx.num_extra() == 1);
  CHECK(ctx.labels().back() == "extra[0]");
  auto a = ctx.one_letter(Root::parse("e1-e2", 3));
  auto b = ctx.extra(0);
  check_cert(ctx, ctx.comm(a, b));
  check_cert(ctx, ctx.conj(b, ctx.weyl(Root::parse("2e3", 3))));
  CHECK_THROWS_AS(ctx.root_letter(Root::parse("e1-e2", 3), D->parse("eps")),
                  UsageError);
  // Weyl moves reach every root from the reference roots
  for (auto const& r : all_roots(3)) {
    Certified at_ref = ctx.one_letter(reference_root(r.is_long(), 3));
    Certified moved = ctx.from_reference(r, at_ref);
    CHECK(moved.value == g.root_element(r, D->one()));
    check_cert(ctx, moved);
    CHECK(ctx.to_reference(r, moved).value == at_ref.value);
  }
}

TEST_CASE("uncouple", "[harvest]") {
  auto D = ring("F2eps");
  RingElt eps = D->parse("eps");
  SpGroup g(D, 3);
  SubgroupContext ctx(g, Subring::prime(D), {});
  Root a = Root::parse("e1-e2", 3);
  Root b = Root::parse("2e3", 3);

  SECTION("both factors") {
    Matrix m = g.mul(g.transvection(1, 2, eps), g.transvection(3, -3, D->one()));
    SubgroupContext with(g, Subring::prime(D), {m});
    auto u = uncouple(with, with.extra(0), a, b);
    CHECK(u.mu == eps);
    CHECK(u.lambda == D->one());
    CHECK(u.short_factor.value == g.root_element(a, eps));
    CHECK(u.long_factor.value == g.root_element(b, D->one()));
    check_cert(with, u.short_factor);
    check_cert(with, u.long_factor);
  }
  SECTION("second factor trivial") {
    Matrix m = g.transvection(1, 2, eps);
    SubgroupContext with(g, Subring::prime(D), {m});
    auto u = uncouple(with, with.extra(0), a, b);
    CHECK(u.mu == eps);
    CHECK(u.lambda.bits == 0);
    CHECK(u.long_factor.value == g.identity());
  }
  SECTION("identity") {
    auto u = uncouple(ctx, ctx.identity(), a, b);
    CHECK(u.mu.bits == 0);
    CHECK(u.lambda.bits == 0);
  }
  SECTION("wrong shape") {
    Certified t = ctx.one_letter(Root::parse("e2-e3", 3));
    CHECK_THROWS_AS(uncouple(ctx, t, a, b), PatternError);
    CHECK_THROWS_AS(uncouple(ctx, t, a, Root::parse("2e2", 3)), UsageError);
  }
  SECTION("rank 2") {
    SpGroup g2(D, 2);
    SubgroupContext c2(g2, Subring::prime(D), {});
    Certified t = c2.one_letter(Root::parse("e1-e2", 2));
    CHECK_THROWS_AS(uncouple(c2, t, Root::parse("e1-e2", 2),
                             Root::parse("-2e2", 2)),
                    RankError);
  }
}

TEST_CASE("U1 coordinates", "[harvest]") {
  auto D = ring("F2eps");
  RingElt eps = D->parse("eps");
  RingElt one = D->one();
  SpGroup g(D, 3);
  auto id = u1_coordinates(g, g.identity());
  for (auto const& [j, mu] : id) {
    CHECK(mu.bits == 0);
  }
  auto c = u1_coordinates(g, g.transvection(1, 2, eps));
  for (auto const& [j, mu] : c) {
    CHECK(mu == (j == 2 ? eps : RingElt{}));
  }
  Matrix m = g.mul(g.transvection(1, 2, one), g.transvection(1, -1, eps));
  auto d = u1_coordinates(g, m);
  CHECK(d[2] == one);
  CHECK(d[-1] == eps);
  CHECK(d[3].bits == 0);
  CHECK_THROWS_AS(u1_coordinates(g, g.transvection(2, 1, one)), UsageError);

  // coordinates rebuild the matrix, over random products
  std::mt19937_64 rng(17);
  auto elems = D->elements();
  for (int t = 0; t < 200; ++t) {
    Matrix u = g.identity();
    for (int k = 0; k < 6; ++k) {
      int j = index_order(3)[1 + rng() % 5];
      u = g.mul(u, g.transvection(1, j, elems[rng() % elems.size()]));
    }
    auto mu = u1_coordinates(g, u);
    Matrix back = g.identity();
    for (auto const& [j, v] : mu) {
      back = g.mul(back, g.transvection(1, j, v));
    }
    REQUIRE(back == u);
  }
}

TEST_CASE("U1 factorization carries certificates", "[harvest]") {
  auto D = ring("F2eps");
  RingElt eps = D->parse("eps");
  SpGroup g(D, 3);
  Matrix m = g.mul(g.transvection(1, 2, D->one()), g.transvection(1, -1, eps));
  SubgroupContext ctx(g, Subring::prime(D), {m});
  auto f = u1_factorize(ctx, ctx.extra(0));
  REQUIRE(f.size() == 2);
  CHECK(f[0].j == 2);
  CHECK(f[0].mu == D->one());
  CHECK(f[1].j == -1);
  CHECK(f[1].mu == eps);
  for (auto const& x : f) {
    CHECK(x.cert.value == g.transvection(1, x.j, x.mu));
    check_cert(ctx, x.cert);
  }
  CHECK(u1_factorize(ctx, ctx.identity()).empty());

  std::mt19937_64 rng(23);
  auto elems = D->elements();
  for (int t = 0; t < 50; ++t) {
    Matrix u = g.identity();
    for (int j : index_order(3)) {
      if (j != 1) {
        u = g.mul(u, g.transvection(1, j, elems[rng() % elems.size()]));
      }
    }
    SubgroupContext c(g, Subring::prime(D), {u});
    Matrix back = g.identity();
    for (auto const& x : u1_factorize(c, c.extra(0))) {
      check_cert(c, x.cert);
      back = g.mul(back, x.cert.value);
    }
    REQUIRE(back == u);
  }
}

TEST_CASE("harvest without extras gives K", "[harvest]") {
  for (char const* name : {"F2", "F2eps", "F4"}) {
    auto A = ring(name);
    SpGroup g(A, 3);
    SubgroupContext ctx(g, Subring::prime(A), {});
    auto h = harvest_levels(ctx, 3);
    ElementSet k;
    k.set(A->one().bits);
    CHECK(h.store.elements(false) == k);
    CHECK(h.store.elements(true) == k);
  }
}

TEST_CASE("harvest with a short epsilon transvection", "[harvest]") {
  auto D = ring("F2eps");
  RingElt eps = D->parse("eps");
  SpGroup g(D, 3);
  SubgroupContext ctx(g, Subring::prime(D), {g.transvection(1, 2, eps)});
  auto h = harvest_levels(ctx, 3);
  CHECK(h.store.has(false, eps));
  CHECK(h.store.size(false) == 3);
  CHECK(h.store.size(true) == 1);
  for (bool is_long : {false, true}) {
    for (auto const& [bits, c] : h.store.entries(is_long)) {
      CHECK(c.value == g.root_element(reference_root(is_long, 3), RingElt{bits}));
      check_cert(ctx, c);
    }
  }

  // Same levels as the closure of the analogous subgroup at rank 2, where
  // every element can be enumerated.
  SpGroup g2(D, 2);
  FormRing kk(FormParameter(Subring::prime(D), Subring::prime(D).elements()));
  auto gens = g2.ep_generators(kk);
  gens.push_back(g2.transvection(1, 2, eps));
  GroupClosure c(g2, gens);
  REQUIRE(c.complete());
  auto sl = level_set(c, Root::parse("e1-e2", 2));
  auto ll = level_set(c, Root::parse("2e1", 2));
  CHECK(*sl == with_zero(h.store.elements(false)));
  CHECK(*ll == with_zero(h.store.elements(true)));
}

TEST_CASE("harvest with a long epsilon transvection", "[harvest]") {
  auto D = ring("F2eps");
  RingElt eps = D->parse("eps");
  SpGroup g(D, 3);
  SubgroupContext ctx(g, Subring::prime(D), {g.transvection(1, -1, eps)});
  auto h = harvest_levels(ctx, 3);
  CHECK(h.store.has(true, eps));
  CHECK(h.store.has(false, eps));
  CHECK(h.store.size(true) == 3);
}

TEST_CASE("closed levels are a form ring over random extras", "[harvest]") {
  auto D = ring("F2eps");
  SpGroup g(D, 3);
  auto full = g.ep_generators(everything(D));
  std::mt19937_64 rng(29);
  for (int t = 0; t < 10; ++t) {
    Matrix m = g.identity();
    for (int k = 0; k < 10; ++k) {
      m = g.mul(m, full[rng() % full.size()]);
    }
    SubgroupContext ctx(g, Subring::prime(D), {m});
    auto h = harvest_levels(ctx, 2);
    ElementSet s = h.store.elements(false);
    ElementSet l = h.store.elements(true);
    s.set(0);
    l.set(0);
    Subring R(D, s);
    CHECK(FormParameter::is_form_parameter(R, l));
    for (bool is_long : {false, true}) {
      for (auto const& [bits, c] : h.store.entries(is_long)) {
        check_cert(ctx, c);
      }
    }
  }
}

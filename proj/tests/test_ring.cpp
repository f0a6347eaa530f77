#include <catch_amalgamated.hpp>

#include "sympl/catalog.hpp"
#include "sympl/ring.hpp"

using namespace sympl;

namespace {

RingPtr ring(char const* name) { return Catalog::builtin().get(name); }

ElementSet set_of(std::initializer_list<unsigned> bits) {
  ElementSet s;
  for (auto b : bits) {
    s.set(b);
  }
  return s;
}

}  // namespace

TEST_CASE("catalog rings satisfy the ring axioms exhaustively", "[ring]") {
  for (auto const& A : Catalog::builtin().rings()) {
    auto elems = A->elements();
    CAPTURE(A->name());
    for (auto a : elems) {
      CHECK(A->add(a, a) == A->zero());
      CHECK(A->mul(A->one(), a) == a);
      for (auto b : elems) {
        CHECK(A->mul(a, b) == A->mul(b, a));
        for (auto c : elems) {
          CHECK(A->mul(A->mul(a, b), c) == A->mul(a, A->mul(b, c)));
          CHECK(A->mul(a, A->add(b, c))
                == A->add(A->mul(a, b), A->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("F4 has no zero divisors", "[ring]") {
  auto F4 = ring("F4");
  REQUIRE(F4->size() == 4);
  for (unsigned a = 1; a < 4; ++a) {
    for (unsigned b = 1; b < 4; ++b) {
      CHECK(F4->mul(F4->element(a), F4->element(b)).bits != 0);
    }
  }
  CHECK_FALSE(F4->has_zero_divisors());
  CHECK(ring("F2eps")->has_zero_divisors());
}

TEST_CASE("element arithmetic", "[ring]") {
  auto D = ring("F2eps");
  RingElt eps = D->parse("eps");
  RingElt one_eps = D->parse("e+eps");
  CHECK(D->add(eps, eps) == D->zero());
  CHECK(D->mul(one_eps, one_eps) == D->one());
  auto F4 = ring("F4");
  RingElt x = F4->parse("x");
  CHECK(F4->mul(x, F4->add(x, F4->one())) == F4->one());
  CHECK(D->format(one_eps) == "e+eps");
  CHECK(D->format(D->zero()) == "0");
  CHECK_THROWS_AS(D->element(4), UsageError);
}

TEST_CASE("subring_generated", "[ring]") {
  auto D = ring("F2eps");
  CHECK(subring_generated(D, {}).elements() == set_of({0, 1}));
  CHECK(subring_generated(D, {D->parse("eps")}).size() == 4);
  auto F4 = ring("F4");
  CHECK(subring_generated(F4, {F4->parse("x")}).size() == 4);
}

TEST_CASE("subring_generated is monotone and idempotent", "[ring]") {
  for (auto const& A : Catalog::builtin().rings()) {
    for (auto x : A->elements()) {
      Subring S = subring_generated(A, {x});
      CHECK(subring_generated(A, S.to_vector()) == S);
      for (auto y : A->elements()) {
        Subring T = subring_generated(A, {x, y});
        CHECK(S.subset_of(T));
      }
    }
  }
}

TEST_CASE("squares_subring", "[ring]") {
  auto D = ring("F2eps");
  CHECK(squares_subring(Subring::whole(D)).elements() == set_of({0, 1}));
  auto F4 = ring("F4");
  CHECK(squares_subring(Subring::whole(F4)).size() == 4);
  auto F2 = ring("F2");
  CHECK(squares_subring(Subring::whole(F2)).size() == 2);
  for (auto const& A : Catalog::builtin().rings()) {
    Subring R0 = squares_subring(Subring::whole(A));
    CHECK(R0.contains(A->zero()));
    for (auto x : A->elements()) {
      CHECK(R0.contains(A->square(x)));
    }
  }
}

TEST_CASE("form_param_generated", "[ring]") {
  auto D = ring("F2eps");
  Subring R = Subring::whole(D);
  CHECK(form_param_generated(R, {D->one()}).elements() == set_of({0, 1}));
  auto F4 = ring("F4");
  CHECK(form_param_generated(Subring::whole(F4), {F4->one()}).size() == 4);
  CHECK(form_param_generated(R, {}).elements() == set_of({0}));
  for (auto const& A : Catalog::builtin().rings()) {
    Subring W = Subring::whole(A);
    for (auto x : A->elements()) {
      FormParameter L = form_param_generated(W, {x});
      CHECK(FormParameter::is_form_parameter(W, L.elements()));
      for (auto mu : A->elements()) {
        for (auto lam : L.to_vector()) {
          CHECK(L.contains(A->mul(A->square(mu), lam)));
        }
      }
    }
  }
}

TEST_CASE("enumerate subrings and form parameters", "[ring]") {
  auto F4 = ring("F4");
  auto subs = enumerate_subrings(F4);
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].size() == 2);
  CHECK(subs[1].size() == 4);

  auto D = ring("F2eps");
  auto params = enumerate_form_params(Subring::whole(D));
  REQUIRE(params.size() == 5);
  std::vector<ElementSet> expect{set_of({0}), set_of({0, 1}), set_of({0, 2}),
                                 set_of({0, 3}), set_of({0, 1, 2, 3})};
  for (auto const& e : expect) {
    bool found = false;
    for (auto const& p : params) {
      found = found || p.elements() == e;
    }
    CHECK(found);
  }
  CHECK(enumerate_form_params(Subring::whole(ring("F2"))).size() == 2);
}

TEST_CASE("enumerated form parameters match a subset filter", "[ring]") {
  for (auto const& A : Catalog::builtin().rings()) {
    if (A->size() > 4) {
      continue;
    }
    Subring W = Subring::whole(A);
    std::size_t count = 0;
    for (unsigned mask = 0; mask < (1U << A->size()); ++mask) {
      ElementSet s;
      for (unsigned i = 0; i < A->size(); ++i) {
        if ((mask >> i) & 1U) {
          s.set(i);
        }
      }
      if (s.test(0) && FormParameter::is_form_parameter(W, s)) {
        ++count;
      }
    }
    CHECK(enumerate_form_params(W).size() == count);
  }
}

TEST_CASE("ring_from_spec rejects malformed tables", "[ring]") {
  RingSpec noncomm;
  noncomm.name = "bad";
  noncomm.basis = {"e", "a"};
  noncomm.unit = {"e"};
  noncomm.products = {{"e", "e", {"e"}, 1},
                      {"e", "a", {"a"}, 2},
                      {"a", "e", {"e"}, 3},
                      {"a", "a", {}, 4}};
  CHECK_THROWS_AS(Ring::from_spec(noncomm), ValidationError);

  RingSpec nonassoc;
  nonassoc.name = "bad2";
  nonassoc.basis = {"e", "a", "b"};
  nonassoc.unit = {"e"};
  nonassoc.products = {{"e", "e", {"e"}, 1}, {"e", "a", {"a"}, 2},
                       {"e", "b", {"b"}, 3}, {"a", "a", {"b"}, 4},
                       {"a", "b", {"e"}, 5}, {"b", "b", {}, 6}};
  try {
    (void)Ring::from_spec(nonassoc);
    FAIL("expected a validation error");
  } catch (ValidationError const& e) {
    CHECK(std::string(e.what()).find("(") != std::string::npos);
  }

  RingSpec missing;
  missing.name = "bad3";
  missing.basis = {"e", "a"};
  missing.unit = {"e"};
  missing.products = {{"e", "e", {"e"}, 1}, {"e", "a", {"a"}, 2}};
  CHECK_THROWS_AS(Ring::from_spec(missing), ValidationError);
}

TEST_CASE("dimension guard", "[ring]") {
  RingSpec big;
  big.name = "big";
  for (int i = 0; i < 9; ++i) {
    big.basis.push_back("b" + std::to_string(i));
  }
  big.unit = {"b0"};
  CHECK_THROWS_AS(Ring::from_spec(big), CapacityError);
}

TEST_CASE("form rings over F2eps containing F2", "[ring]") {
  auto D = ring("F2eps");
  auto frs = enumerate_form_rings(D, Subring::prime(D));
  // (F2, F2), (F2eps, F2), (F2eps, F2eps)
  CHECK(frs.size() == 3);
  for (auto const& fr : frs) {
    CHECK(fr.Lambda().contains(D->one()));
  }
}

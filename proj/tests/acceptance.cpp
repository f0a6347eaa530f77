// Acceptance suite: one PASS/FAIL line per criterion.  Every criterion is
// exact; the tolerances below are failure counts and stay at zero.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sympl/catalog.hpp"
#include "sympl/classify.hpp"
#include "sympl/closure.hpp"
#include "sympl/normalizer.hpp"
#include "sympl/report.hpp"
#include "sympl/theorems.hpp"

using namespace sympl;

namespace {

constexpr std::size_t kMaxFailures = 0;
constexpr std::size_t kRandomTrials = 100;        // criterion 6
constexpr std::size_t kIdentityTrials = 1000;     // criterion 8
constexpr std::size_t kSampledNormalizerG = 20000;  // criterion 10, large rings
constexpr std::uint64_t kSeed = 20240601;

RingPtr ring(char const* name) { return Catalog::builtin().get(name); }

FormRing minimal(Subring const& R) {
  return FormRing(form_param_generated(R, {R.ring().one()}));
}

std::string fr_name(FormRing const& fr) {
  Ring const& r = fr.ambient();
  return "(" + format_set(r, fr.R().elements()) + ", "
         + format_set(r, fr.Lambda().elements()) + ")";
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, std::string const& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// ---------------------------------------------------------------------------

void ac1(Outcome& o) {
  for (char const* name : {"F2", "F2eps"}) {
    SpGroup g(ring(name), 3);
    auto rep = commutator_suite(g);
    o.detail << " " << name << ": " << rep.checked << " checked, "
             << rep.failures << " failures;";
    o.require(rep.failures <= kMaxFailures, rep.first_failure);
  }
}

void ac2(Outcome& o) {
  auto F2 = ring("F2");
  for (int n : {2, 3}) {
    SpGroup g(F2, n);
    GroupClosure c(g, g.ep_generators(minimal(Subring::whole(F2))));
    std::uint64_t expect = oracle::sp_order(2, n);
    o.detail << " n=" << n << ": " << c.size() << " (oracle " << expect
             << ");";
    o.require(c.complete() && c.size() == expect,
              "order at n=" + std::to_string(n));
  }
}

void ac3(Outcome& o) {
  for (char const* name : {"F2", "F2eps", "F4"}) {
    auto A = ring(name);
    SpGroup g(A, 2);
    Subring R = Subring::whole(A);
    for (auto const& L : enumerate_form_params(R)) {
      if (!L.contains(A->one())) {
        continue;
      }
      FormRing fr(L);
      GroupClosure ep(g, g.ep_generators(fr));
      std::size_t bak = 0;
      std::size_t bak_not_ep = 0;
      oracle::for_each_symplectic(*A, 2, A->elements(), [&](Matrix const& m) {
        if (g.in_bak_sp(m, fr)) {
          ++bak;
          if (ep.contains(m) != Membership::kYes) {
            ++bak_not_ep;
          }
        }
      });
      // every closure element passes the block criterion
      std::size_t ep_not_bak = 0;
      for (std::size_t i = 0; i < ep.size(); ++i) {
        if (!g.in_bak_sp(ep.element(i), fr)) {
          ++ep_not_bak;
        }
      }
      bool equal = ep.complete() && bak_not_ep == 0 && ep_not_bak == 0
                   && bak == ep.size();
      o.detail << " " << name << " " << fr_name(fr) << ": block set " << bak
               << ", closure " << ep.size() << ";";
      o.require(equal, std::string(name) + " " + fr_name(fr)
                           + " differ by " + std::to_string(bak_not_ep)
                           + " + " + std::to_string(ep_not_bak));
    }
  }
}

void ac4(Outcome& o) {
  struct Inst {
    char const* A;
    bool whole_r;
  };
  for (auto const& in : {Inst{"F2eps", false}, Inst{"F4", false},
                         Inst{"F2eps", true}}) {
    auto A = ring(in.A);
    Subring R = in.whole_r ? Subring::whole(A) : Subring::prime(A);
    FormRing fr = minimal(R);
    SpGroup g(A, 2);
    Theorem2Options opt;
    opt.seed = kSeed;
    auto rep = verify_theorem2(g, fr, opt);
    o.detail << " " << in.A << " " << fr_name(fr) << ": |N|="
             << rep.normalizer_size << " (1)" << rep.part1 << " (2)"
             << rep.part2 << (rep.part2_exhaustive ? "full" : "sampled")
             << " (3)" << rep.part3
             << (rep.part3_exhaustive ? "full" : "sampled") << ";";
    o.require(rep.ok() && rep.failures <= kMaxFailures,
              std::string(in.A) + " " + fr_name(fr));
  }
}

bool covers_all(SpGroup const& g, SubgroupContext const& ctx,
                FormRing const& fr, std::vector<LowerCert> const& certs) {
  auto gens = g.ep_generators_labelled(fr);
  if (certs.size() != gens.size()) {
    return false;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!(certs[i].root == gens[i].root) || certs[i].scalar != gens[i].scalar
        || !(ctx.evaluate(certs[i].word) == gens[i].matrix)) {
      return false;
    }
  }
  return true;
}

void ac5(Outcome& o) {
  for (char const* name : {"F2eps", "F4"}) {
    auto A = ring(name);
    SpGroup g(A, 3);
    Subring K = Subring::prime(A);
    std::size_t count = 0;
    for (auto const& fr : enumerate_form_rings(A, K)) {
      if (!fr.Lambda().contains(A->one())) {
        continue;
      }
      SubgroupInput in{A, K, 3, g.ep_generators(fr)};
      auto rep = classify(in);
      SubgroupContext ctx(g, K, in.extras);
      bool ok = rep.status == Status::kCertified && *rep.form_ring == fr
                && covers_all(g, ctx, fr, rep.lower_certs);
      o.require(ok, std::string(name) + " " + fr_name(fr));
      ++count;
    }
    o.detail << " " << name << ": " << count << " form rings;";
  }
}

void ac6(Outcome& o) {
  auto D = ring("F2eps");
  SpGroup g(D, 3);
  Subring K = Subring::prime(D);
  auto gens = g.ep_generators(full_form_ring(D));
  std::mt19937_64 rng(kSeed);
  std::size_t certified = 0;
  std::size_t rechecked = 0;
  for (std::size_t t = 0; t < kRandomTrials; ++t) {
    std::size_t k = 1 + rng() % 2;
    std::vector<Matrix> extras;
    for (std::size_t e = 0; e < k; ++e) {
      extras.push_back(random_element(g, gens, 12, rng));
    }
    SubgroupInput in{D, K, 3, extras};
    ClassifyOptions opt;
    opt.max_depth = 6;
    auto rep = classify(in, opt);
    if (rep.status != Status::kCertified) {
      o.require(false, "trial " + std::to_string(t) + ": " + rep.diagnostics);
      continue;
    }
    FormRing const& fr = *rep.form_ring;
    bool chain = fr.contains_base(K) && fr.Lambda().contains(D->one());
    o.require(chain, "trial " + std::to_string(t) + " chain");
    ++certified;
    json doc = classify_report(in, rep, classify_config(in, {}, opt));
    auto res = recheck_report(json::parse(doc.dump()));
    o.require(res.ok, "trial " + std::to_string(t) + " recheck");
    rechecked += res.ok ? 1 : 0;
  }
  o.detail << " " << certified << "/" << kRandomTrials << " certified, "
           << rechecked << " rechecked;";
}

void ac7(Outcome& o) {
  auto F2 = ring("F2");
  SpGroup g(F2, 3);
  FormRing fr = minimal(Subring::whole(F2));
  for (int j : {2, -1}) {
    auto c = verify_normal_generation(g, fr, {g.transvection(1, j, F2->one())});
    o.detail << " T(1," << j << "): " << c.actual << " of " << c.expected
             << ";";
    o.require(!c.skipped && c.equal && c.expected == 1451520,
              "normal closure of T(1," + std::to_string(j) + ")");
  }
}

void ac8(Outcome& o) {
  auto D = ring("F2eps");
  SpGroup g(D, 3);
  auto gens = g.ep_generators(full_form_ring(D));
  Matrix h = g.transvection(1, 2, D->parse("eps"));
  Root alpha = Root::parse("2e1", 3);
  std::mt19937_64 rng(kSeed);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kIdentityTrials; ++t) {
    if (!small_unipotent_identity(g, random_element(g, gens, 12, rng), h,
                                  alpha)) {
      ++bad;
    }
  }
  o.detail << " " << kIdentityTrials << " trials, " << bad << " failures;";
  o.require(bad <= kMaxFailures, "identity");
}

void ac9(Outcome& o) {
  auto F2 = ring("F2");
  auto D = ring("F2eps");
  struct Inst {
    RingPtr A;
    int n;
  };
  for (auto const& in : {Inst{F2, 3}, Inst{D, 2}}) {
    SpGroup g(in.A, in.n);
    FormRing fr = minimal(Subring::whole(in.A));
    auto c = verify_ep_generation_from_p1(g, fr);
    o.detail << " " << in.A->name() << " n=" << in.n << ": " << c.actual
             << " vs " << c.expected << ";";
    o.require(!c.skipped && c.equal, in.A->name());
  }
}

void ac10(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  for (auto const& A : Catalog::builtin().rings()) {
    SpGroup g(A, 2);
    auto full_gens = g.ep_generators(full_form_ring(A));
    GroupClosure all(g, full_gens);
    std::vector<Matrix> sample;
    bool exhaustive = all.complete();
    if (!exhaustive) {
      for (std::size_t k = 0; k < kSampledNormalizerG; ++k) {
        sample.push_back(random_element(g, full_gens, 16, rng));
      }
    }
    std::size_t instances = 0;
    std::size_t skipped = 0;
    std::size_t disagreements = 0;
    for (auto const& fr : enumerate_form_rings(A, Subring::prime(A))) {
      if (!fr.Lambda().contains(A->one())) {
        continue;
      }
      auto gens = g.ep_generators(fr);
      GroupClosure ep(g, gens);
      if (!ep.complete()) {
        ++skipped;
        continue;
      }
      ++instances;
      NormalizerTest test(g, fr);
      auto check = [&](Matrix const& x) {
        Matrix xi = g.inverse(x);
        bool brute = true;
        for (auto const& y : gens) {
          if (ep.contains(g.mul(g.mul(x, y), xi)) != Membership::kYes) {
            brute = false;
            break;
          }
        }
        if (brute != test(x)) {
          ++disagreements;
        }
      };
      if (exhaustive) {
        for (std::size_t i = 0; i < all.size(); ++i) {
          check(all.element(i));
        }
      } else {
        for (auto const& x : sample) {
          check(x);
        }
        for (std::size_t i = 0; i < ep.size(); ++i) {
          check(ep.element(i));
        }
      }
    }
    o.detail << " " << A->name() << ": " << instances << " form rings"
             << (exhaustive ? "" : " sampled") << ", " << disagreements
             << " disagreements";
    if (skipped > 0) {
      o.detail << ", " << skipped << " with Ep over the cap";
    }
    o.detail << ";";
    o.require(disagreements <= kMaxFailures, A->name());
  }
}

}  // namespace

int main() {
  struct Criterion {
    char const* id;
    char const* title;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> all = {
      {"AC1", "commutator formulas, n=3", ac1},
      {"AC2", "closure orders of Ep(F2,F2)", ac2},
      {"AC3", "block criterion equals elementary closure, n=2", ac3},
      {"AC4", "normalizer description, n=2", ac4},
      {"AC5", "classifier fixed points, n=3", ac5},
      {"AC6", "random classifier runs, n=3", ac6},
      {"AC7", "normal generation by one transvection, n=3", ac7},
      {"AC8", "small unipotent identity", ac8},
      {"AC9", "generation from parabolic pieces", ac9},
      {"AC10", "normalizer test against brute force, n=2", ac10},
  };
  int failed = 0;
  for (auto const& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (std::exception const& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.title
              << " (" << buf << "):" << o.detail.str() << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (all.size() - static_cast<std::size_t>(failed)) << "/"
            << all.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

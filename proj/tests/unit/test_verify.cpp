#include <doctest.h>

#include <random>

#include "crfolio/verify.hpp"

using namespace crfolio;

TEST_SUITE("verify") {

TEST_CASE("symmetry relation on the synthetic J = zeta instance") {
  auto fam = build_rotating_circles(1, 2, 128);
  auto J = synthetic_J(fam, [](double) { return Poly{0.0, 1.0}; });
  auto chain = track_zeros(J);
  auto rep = symmetry_relation(J, chain, fam, cx(0));
  CHECK(rep.admissible);
  CHECK(rep.lhs == doctest::Approx(2.0).epsilon(0.025));
  CHECK(rep.rhs == doctest::Approx(2.0).epsilon(0.025));
  CHECK(rep.abs_gap < 0.05);
}

TEST_CASE("symmetry relation vanishes for far probes") {
  auto fam = build_rotating_circles(1, 2, 128);
  auto ext = analyze(make_function("globevnik_2", 1), fam, 256);
  auto J = compute_J(ext);
  auto chain = track_zeros(J);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    cx b = (3.5 + u(rng)) * std::exp(cx(0, kTwoPi * u(rng)));
    auto rep = symmetry_relation(J, chain, fam, b);
    CHECK(rep.admissible);
    CHECK(std::abs(rep.lhs) < 0.05);
    CHECK(std::abs(rep.rhs) < 0.05);
    CHECK(rep.abs_gap < 0.05);
  }
}

TEST_CASE("jump profile along a path outside the swept region") {
  auto fam = build_translated_circles(1.0, {cx(0), cx(3, 0)}, 128);
  auto J = synthetic_J(fam, [](double) { return Poly{-0.1, 1.0}; });
  auto chain = track_zeros(J);
  // vertical path far to the right of the stadium |z| <= 4
  auto prof = jump_profile(J, chain, fam, {cx(6, -2), cx(6, 2)}, 10);
  for (size_t i = 0; i < prof.probes.size(); ++i) {
    CHECK(prof.admissible[i]);
    CHECK(std::abs(prof.Z[i]) < 0.05);
  }
  CHECK(prof.jump_events.empty());
}

TEST_CASE("jump events appear at transversal chain crossings") {
  auto fam = build_translated_circles(1.0, {cx(0), cx(3, 0)}, 128);
  auto J = synthetic_J(fam, [](double) { return Poly{-0.1, 1.0}; });
  auto chain = track_zeros(J);
  // the chain image G(C) is the segment [-0.1, 2.9] shifted by 0.1... its
  // image under g_t(zeta)=a(t)+zeta at zeta=0.1 is [0.1, 3.1]; a vertical
  // path at x=1.6 crosses it exactly once
  auto prof = jump_profile(J, chain, fam, {cx(1.6, -2), cx(1.6, 2)}, 20);
  double total = 0.0;
  for (const auto& e : prof.jump_events) total += e.signed_kappa;
  CHECK(std::abs(std::abs(total) - 1.0) < 1e-9);
}

TEST_CASE("verdict: holomorphic input is confirmed") {
  auto fam = build_translated_circles(1.0, {cx(0), cx(1.5, 0), cx(3, 0)}, 64);
  VerdictOptions opts;
  opts.circle_n = 128;
  auto rep = run_verdict(make_function("z_sq", 1), fam, opts);
  CHECK(rep.verdict == Verdict::HolomorphicConfirmed);
  CHECK(rep.j_max_rel < 1e-8);
  CHECK(rep.fiber_spread < 1e-6);
  CHECK(rep.cr_residual < 1e-6);
}

TEST_CASE("verdict: zbar fails the extension condition") {
  auto fam = build_translated_circles(1.0, {cx(0), cx(1.5, 0), cx(3, 0)}, 64);
  VerdictOptions opts;
  opts.circle_n = 128;
  auto rep = run_verdict(make_function("zbar", 1), fam, opts);
  CHECK(rep.verdict == Verdict::ConditionStarFails);
  CHECK(rep.extension_residual == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("verdict: the counterexample fails the intersection precondition") {
  auto fam = build_rotating_circles(1, 2, 64);
  VerdictOptions opts;
  opts.circle_n = 128;
  auto rep = run_verdict(make_function("globevnik_2", 1), fam, opts);
  CHECK(rep.verdict == Verdict::PreconditionFails);
  REQUIRE(rep.homology.has_value());
  CHECK_FALSE(rep.homology->condition_a);
}

TEST_CASE("verdict names are stable strings") {
  CHECK(std::string(verdict_name(Verdict::HolomorphicConfirmed)) ==
        "HOLOMORPHIC_CONFIRMED");
  CHECK(std::string(verdict_name(Verdict::NondegenerateWitness)) ==
        "NONDEGENERATE_WITNESS");
  CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("counterexample suite passes end to end") {
  auto suite = counterexample_suite();
  for (const auto& a : suite.assertions) {
    INFO(a.name, " value=", a.value);
    CHECK(a.pass);
  }
  CHECK(suite.all_pass);
}

}  // TEST_SUITE

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "elop/witnesses.hpp"
#include "oracles.hpp"

using elop::Dyadic;
using elop::ElementarySystem;
using elop::FiniteRankOperator;
using elop::Index;
using elop::NormKind;
using elop::Scalar;
using elop::SubspaceSpec;
using elop::Verdict;
using elop::scalar_mode;

namespace {

ElementarySystem example_system() {
  return ElementarySystem(elop::build_aperiodic_shift(), elop::build_example_w());
}

std::vector<std::int64_t> offset_schedule(std::int64_t offset, int count) {
  std::vector<std::int64_t> v;
  for (int k = 1; k <= count; ++k) v.push_back(k + offset);
  return v;
}

}  // namespace

TEST_CASE("transitive witness decays within its proof bounds") {
  const auto sys = example_system();
  const auto p2 = elop::projection_operator(SubspaceSpec::leading(2));
  const auto run = transitive_witness(sys, p2, p2, 2, offset_schedule(3, 24));
  CHECK(run.verdict == Verdict::pass);
  REQUIRE(run.records.size() == 24);
  for (const auto& rec : run.records) {
    REQUIRE(rec.value("residual1") <= rec.value("bound1") + 1e-12);
    REQUIRE(rec.value("residual2") <= rec.value("bound2") + 1e-12);
  }
  int first_small = 0;
  for (const auto& rec : run.records) {
    if (rec.value("residual1") < 1e-6 && rec.value("residual2") < 1e-6) {
      first_small = rec.k;
      break;
    }
  }
  REQUIRE(first_small > 0);
  REQUIRE(first_small <= 25);
}

TEST_CASE("transitive witness trivial and mixed operands") {
  const auto sys = example_system();
  const auto zero = FiniteRankOperator(scalar_mode::exact);
  const auto zrun = transitive_witness(sys, zero, zero, 2, offset_schedule(3, 5));
  for (const auto& rec : zrun.records) {
    CHECK(rec.value("residual1") == 0.0);
    CHECK(rec.value("residual2") == 0.0);
  }

  const auto p1 = elop::projection_operator(SubspaceSpec::leading(1));
  const auto e22 = elop::rank_one(2, 2, Scalar::exact(1));
  const auto run = transitive_witness(sys, p1, e22, 2, offset_schedule(3, 24));
  CHECK(run.verdict == Verdict::pass);
  for (const auto& rec : run.records) {
    REQUIRE(rec.value("residual1") <= rec.value("bound1") + 1e-12);
  }
}

TEST_CASE("leading-block truncation reports its error") {
  const auto sys = example_system();
  std::mt19937_64 rng(83);
  const auto f = elop_tests::random_sparse(rng, 10, 12);
  const auto full = elop::truncate_to_leading(f, 10);
  CHECK(full.truncated == f);
  CHECK(full.error == 0.0);

  const auto cut = elop::truncate_to_leading(f, 3);
  CHECK(cut.truncated.supported_in(SubspaceSpec::leading(3)));
  const double recomputed = distance(cut.truncated, f, elop::NormKind::op);
  CHECK(cut.error == Catch::Approx(recomputed).margin(1e-15));

  // The truncated operand is a valid witness target.
  CHECK_NOTHROW(transitive_witness(sys, cut.truncated, cut.truncated, 3, offset_schedule(3, 6)));
  CHECK_THROWS_AS(elop::truncate_to_leading(f, 0), elop::precondition_error);
}

TEST_CASE("transitive witness enforces its preconditions") {
  const auto sys = example_system();
  const auto p4 = elop::projection_operator(SubspaceSpec::leading(4));
  CHECK_THROWS_AS(transitive_witness(sys, p4, p4, 2, offset_schedule(3, 5)),
                  elop::precondition_error);
  const auto p2 = elop::projection_operator(SubspaceSpec::leading(2));
  CHECK_THROWS_AS(transitive_witness(sys, p2, p2, 2, {1, 2, 3}), elop::precondition_error);

  // A periodic unitary never clears its orthogonality horizon.
  const auto c = elop::build_cyclic_unitary(4);
  ElementarySystem cyc(c, elop::build_example_w());
  CHECK_THROWS_AS(transitive_witness(cyc, p2, p2, 2, offset_schedule(3, 5)),
                  elop::precondition_error);
}

TEST_CASE("periodic witness exact boundary identity") {
  const auto sys = example_system();
  const auto p2 = elop::projection_operator(SubspaceSpec::leading(2));
  const double tol = std::ldexp(1.0, -40);
  const auto run = periodic_witness(sys, p2, 8, tol);
  REQUIRE(run.verdict == Verdict::pass);
  const auto& rec = run.records.front();
  CHECK(rec.value("boundary_identity") == 1.0);
  CHECK(rec.value("period_residual") <= 2.0 * rec.value("tail_bound"));
  CHECK(rec.value("tail_bound") < tol);
  REQUIRE(rec.exact.count("period_residual") == 1);

  // The recorded exact residual is itself the dyadic norm of the boundary
  // operator: max of the two boundary compression norms.
  const int lf = static_cast<int>(rec.value("forward_terms"));
  const int lb = static_cast<int>(rec.value("backward_terms"));
  const Scalar fwd = sys.w().norm_power_proj(static_cast<std::int64_t>(lf + 1) * 8,
                                             SubspaceSpec::leading(2));
  const Scalar bwd = sys.w().norm_power_proj(-static_cast<std::int64_t>(lb) * 8,
                                             SubspaceSpec::leading(2));
  CHECK(rec.exact.at("period_residual") == elop::max(fwd, bwd).text());

  // Proximity is dominated by the two geometric sums of the decay identities.
  double bound = 0.0;
  for (int l = 1; l <= 64; ++l) {
    bound += std::ldexp(1.0, -(8 * l - 1)) + std::ldexp(1.0, -(8 * l - 3));
  }
  CHECK(rec.value("proximity") <= bound + 1e-15);
}

TEST_CASE("periodic witness trivial and non-decaying cases") {
  const auto sys = example_system();
  const auto zero = FiniteRankOperator(scalar_mode::exact);
  const auto zrun = periodic_witness(sys, zero, 8, 1e-9);
  CHECK(zrun.verdict == Verdict::pass);
  CHECK(zrun.records.front().value("period_residual") == 0.0);

  const auto c = elop::build_cyclic_unitary(4);
  ElementarySystem cyc(c, c);
  const auto p2 = elop::projection_operator(SubspaceSpec::leading(2));
  CHECK(periodic_witness(cyc, p2, 8, 1e-9).verdict == Verdict::inconclusive);
}

TEST_CASE("cosine witness residuals decay and are eventually monotone") {
  const auto sys = example_system();
  const auto p4 = elop::projection_operator(SubspaceSpec::leading(4));
  const auto split = find_cosine_split(sys.w(), 4, offset_schedule(3, 20));
  REQUIRE(split.verdict == Verdict::pass);
  const auto run = cosine_witness_run(sys, p4, p4, split, 1e-4);
  CHECK(run.verdict == Verdict::pass);
  REQUIRE(run.records.size() == 20);
  int first_small = 0;
  for (const auto& rec : run.records) {
    if (rec.value("residual1") < 1e-4 && rec.value("residual2") < 1e-4) {
      first_small = rec.k;
      break;
    }
  }
  REQUIRE(first_small > 0);
  REQUIRE(first_small <= 20);
  for (std::size_t i = 2; i + 1 < run.records.size(); ++i) {
    REQUIRE(run.records[i + 1].value("residual2") <= run.records[i].value("residual2") + 1e-15);
  }
  // Each record logs the six vanishing terms.
  for (const char* term : {"term_t_pkf", "term_s_pkf", "term_t_eg", "term_s_rg", "term_t2_eg",
                           "term_s2_rg"}) {
    CHECK(run.records.back().value(term) < 1e-4);
  }
}

TEST_CASE("cosine witness with zero targets") {
  const auto sys = example_system();
  const auto p4 = elop::projection_operator(SubspaceSpec::leading(4));
  const auto zero = FiniteRankOperator(scalar_mode::exact);
  const auto split = find_cosine_split(sys.w(), 4, offset_schedule(3, 18));
  const auto g0 = cosine_witness_run(sys, p4, zero, split, 1e-4);
  CHECK(g0.verdict == Verdict::pass);
  // With G = 0 the witness reduces to P_K F and the second residual is the
  // cosine image norm, which decays on both halves.
  for (const auto& rec : g0.records) {
    REQUIRE(rec.value("residual1") == 0.0);
  }
  const auto all_zero = cosine_witness_run(sys, zero, zero, split, 1e-4);
  for (const auto& rec : all_zero.records) {
    REQUIRE(rec.value("residual1") == 0.0);
    REQUIRE(rec.value("residual2") == 0.0);
  }
}

TEST_CASE("cosine witness rejects malformed splits") {
  const auto sys = example_system();
  const auto p4 = elop::projection_operator(SubspaceSpec::leading(4));
  elop::SplitWitness bad;
  bad.m = 4;
  bad.per_k.push_back({1, 4, SubspaceSpec({1}), SubspaceSpec({2, 3}), Scalar::exact(0),
                       Scalar::exact(0)});  // misses index 4
  CHECK_THROWS_AS(cosine_witness(sys, p4, p4, bad, 0), elop::precondition_error);
}

TEST_CASE("trace-side cosine witness") {
  const auto sys = example_system();
  const auto p2 = elop::projection_operator(SubspaceSpec::leading(2));
  const auto split = find_cosine_split(sys.w(), 2, offset_schedule(3, 20));
  const auto run = adjoint_cosine_witness_run(sys, p2, p2, split, 1e-4);
  CHECK(run.verdict == Verdict::pass);
  for (const auto& rec : run.records) {
    REQUIRE(rec.value("residual1") <= rec.value("bound_residual1") + 1e-12);
  }

  const auto zero = FiniteRankOperator(scalar_mode::exact);
  const auto g2zero = adjoint_cosine_witness_run(sys, p2, zero, split, 1e-4);
  for (const auto& rec : g2zero.records) REQUIRE(rec.value("residual1") == 0.0);

  const auto c = elop::build_cyclic_unitary(4);
  ElementarySystem cyc(c, c);
  const auto csplit = find_cosine_split(c, 2, offset_schedule(3, 8));
  CHECK(adjoint_cosine_witness_run(cyc, p2, p2, csplit, 1e-4).verdict == Verdict::fail);
}

TEST_CASE("trace duality of the adjoint witness operators") {
  const auto sys = example_system();
  const auto conj = sys.conjugate();
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = elop_tests::random_sparse(rng, 4, 6);
    const auto g = elop_tests::random_sparse(rng, 4, 6);
    // tr(T~(G) X) = tr(G T'(X)) where T' sandwiches with the conjugate pair.
    const Scalar lhs = trace(compose(adjoint_t_apply(conj, 1, g), x));
    const Scalar rhs = trace(compose(g, t_apply(conj, 1, x)));
    REQUIRE(std::fabs((lhs - rhs).to_double()) < 1e-10);
  }
}

TEST_CASE("orbit approach table") {
  const auto sys = example_system();
  const auto p2 = elop::projection_operator(SubspaceSpec::leading(2));
  const auto self = orbit_approach(sys, p2, {p2}, 6);
  REQUIRE(self.size() == 1);
  CHECK(self[0].best_n == 0);
  CHECK(self[0].best_distance == 0.0);

  const auto zero = FiniteRankOperator(scalar_mode::exact);
  const auto from_zero = orbit_approach(sys, zero, {p2}, 6);
  CHECK(from_zero[0].best_distance == Catch::Approx(operator_norm(p2)).margin(1e-12));

  // The transitive witness start approaches both of its targets at least as
  // closely as the recorded residuals.
  const auto schedule = offset_schedule(3, 12);
  const auto run = transitive_witness(sys, p2, p2, 2, schedule);
  const Scalar one = Scalar::exact(1);
  const auto& rec = run.records.back();
  const auto phi = combine(p2, t_apply(sys, -rec.n, p2), one, one);
  const auto approach = orbit_approach(sys, phi, {p2}, rec.n);
  CHECK(approach[0].best_distance <= rec.value("residual1") + 1e-12);

  CHECK_THROWS_AS(orbit_approach(sys, p2, {p2}, sys.w().orbit_horizon() + 1),
                  elop::configuration_error);
}

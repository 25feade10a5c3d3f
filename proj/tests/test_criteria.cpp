#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "elop/criteria.hpp"
#include "oracles.hpp"

using elop::DecayOptions;
using elop::Dyadic;
using elop::Index;
using elop::Scalar;
using elop::SubspaceSpec;
using elop::TailPolicy;
using elop::Verdict;

namespace {

std::vector<std::int64_t> offset_schedule(std::int64_t offset, int count) {
  std::vector<std::int64_t> v;
  for (int k = 1; k <= count; ++k) v.push_back(k + offset);
  return v;
}

// Brute-force horizon: trial every N and verify the whole tail by direct
// iteration of the index sets.
std::optional<std::int64_t> brute_horizon(const elop::WeightedPermutationOperator& u, Index k,
                                          std::int64_t limit) {
  for (std::int64_t candidate = 1; candidate <= limit; ++candidate) {
    bool ok = true;
    for (std::int64_t n = candidate; n <= limit && ok; ++n) {
      std::set<Index> image;
      for (Index j = 1; j <= k; ++j) {
        Index x = j;
        for (std::int64_t s = 0; s < n; ++s) x = u.rule().forward(x);
        image.insert(x);
      }
      for (Index j = 1; j <= k; ++j) ok = ok && !image.count(j);
    }
    if (ok) return candidate;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("orthogonality horizon of the aperiodic shift") {
  const auto u = elop::build_aperiodic_shift();
  for (Index k = 1; k <= 16; ++k) {
    const auto fast = orthogonality_horizon(u, k, 64);
    const auto slow = brute_horizon(u, k, 64);
    REQUIRE(fast.has_value());
    REQUIRE(slow.has_value());
    REQUIRE(*fast == *slow);
  }
  CHECK(*orthogonality_horizon(u, 1, 64) == 1);
  CHECK_FALSE(orthogonality_horizon(elop::identity_operator(), 3, 64).has_value());
  CHECK_THROWS_AS(orthogonality_horizon(u, 2, 0), elop::configuration_error);
}

TEST_CASE("two-sided decay checker") {
  const auto w = elop::build_example_w();
  const auto rep = check_hypercyclicity_condition(w, 2, offset_schedule(3, 24));
  CHECK(rep.verdict == Verdict::pass);
  // Forward values follow the dyadic identity 2^-(n-1).
  for (const auto& row : rep.decay) {
    if (row.quantity == "forward_norm") {
      REQUIRE(row.value == Scalar::exact(Dyadic::power_of_two(-(row.n - 1))));
    }
  }

  const auto unitary = elop::build_cyclic_unitary(4);
  const auto urep = check_hypercyclicity_condition(unitary, 2, offset_schedule(3, 12));
  CHECK(urep.verdict == Verdict::fail);
  for (const auto& row : urep.decay) REQUIRE(row.value == Scalar::exact(1));

  elop::WeightRule doubling;
  doubling.residue = {Scalar::exact(2)};
  const elop::WeightedPermutationOperator grow(elop::zigzag_predecessor_rule(), doubling, "2shift");
  CHECK(check_hypercyclicity_condition(grow, 2, offset_schedule(3, 12)).verdict == Verdict::fail);

  CHECK_THROWS_AS(check_hypercyclicity_condition(w, 2, {5, 5, 6}), elop::configuration_error);
}

TEST_CASE("zero transitivity checker") {
  const auto w = elop::build_example_w();
  const auto rep = check_zero_transitivity(w, SubspaceSpec::leading(2), offset_schedule(3, 24),
                                           offset_schedule(3, 24));
  CHECK(rep.verdict == Verdict::pass);

  CHECK(check_zero_transitivity(elop::identity_operator(), SubspaceSpec::leading(2),
                                offset_schedule(3, 12), offset_schedule(3, 12))
            .verdict == Verdict::fail);

  CHECK_THROWS_AS(check_zero_transitivity(w, SubspaceSpec::leading(3), offset_schedule(3, 12),
                                          {4, 4, 4}),
                  elop::configuration_error);
}

TEST_CASE("necessary modulus condition") {
  CHECK(check_necessary_m_condition(elop::build_example_w()).verdict == Verdict::pass);
  CHECK(check_necessary_m_condition(elop::build_aperiodic_shift()).verdict == Verdict::fail);

  elop::WeightRule halving;
  halving.residue = {Scalar::exact(Dyadic::from_parts(1, -1))};
  const elop::WeightedPermutationOperator shrink(elop::zigzag_predecessor_rule(), halving, "half");
  CHECK(check_necessary_m_condition(shrink).verdict == Verdict::fail);
}

TEST_CASE("necessary condition reports both small-modulus quantities") {
  const auto rep = check_necessary_m_condition(elop::build_example_w(), offset_schedule(3, 6));
  CHECK(rep.verdict == Verdict::pass);
  int probe_rows = 0, base_rows = 0;
  for (const auto& row : rep.decay) {
    if (row.quantity == "min_modulus_power") {
      ++probe_rows;
      // For this operator m(W^-n) = 2^-n, attained on the even columns.
      REQUIRE(row.value == Scalar::exact(Dyadic::power_of_two(-row.n)));
    }
    if (row.quantity == "min_modulus_base_power") {
      ++base_rows;
      REQUIRE(row.value == Scalar::exact(Dyadic::power_of_two(-row.n)));
    }
  }
  CHECK(probe_rows == 6);
  CHECK(base_rows == 6);
  CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("series condition checker") {
  const auto w = elop::build_example_w();
  const auto rep = check_series_condition(w, 2, offset_schedule(3, 24));
  CHECK(rep.verdict == Verdict::pass);
  // Certified totals must dominate the true geometric sums 2^(1-n)/(1-2^-n).
  for (const auto& row : rep.decay) {
    if (row.quantity == "forward_total") {
      const double truth = std::ldexp(1.0, static_cast<int>(1 - row.n)) /
                           (1.0 - std::ldexp(1.0, static_cast<int>(-row.n)));
      REQUIRE(row.value.to_double() >= truth - 1e-15);
    }
  }

  CHECK(check_series_condition(w, 3, offset_schedule(3, 24)).verdict == Verdict::pass);

  const auto unitary = elop::build_cyclic_unitary(4);
  CHECK(check_series_condition(unitary, 2, offset_schedule(3, 8)).verdict == Verdict::inconclusive);

  TailPolicy bad;
  bad.ratio = 1.0;
  CHECK_THROWS_AS(check_series_condition(w, 2, offset_schedule(3, 8), bad),
                  elop::configuration_error);
}

TEST_CASE("series pass implies plain decay pass") {
  const auto w = elop::build_example_w();
  for (Index m : {Index(2), Index(3), Index(4)}) {
    const auto series = check_series_condition(w, m, offset_schedule(3, 24));
    if (series.verdict == Verdict::pass) {
      REQUIRE(check_hypercyclicity_condition(w, m, offset_schedule(3, 24)).verdict == Verdict::pass);
    }
  }
}

TEST_CASE("cosine split search") {
  const auto w = elop::build_example_w();
  const auto split = find_cosine_split(w, 4, offset_schedule(3, 24));
  REQUIRE(split.verdict == Verdict::pass);
  for (const auto& entry : split.per_k) {
    REQUIRE(entry.e == SubspaceSpec({1, 3}));
    REQUIRE(entry.r == SubspaceSpec({2, 4}));
    REQUIRE(entry.forward_norm == Scalar::exact(Dyadic::power_of_two(-2 * entry.n)));
    REQUIRE(entry.backward_norm == Scalar::exact(Dyadic::power_of_two(-2 * entry.n)));
  }

  CHECK(find_cosine_split(elop::build_cyclic_unitary(4), 4, offset_schedule(3, 8)).verdict ==
        Verdict::inconclusive);

  elop::WeightRule doubling;
  doubling.residue = {Scalar::exact(2)};
  const elop::WeightedPermutationOperator grow(elop::zigzag_predecessor_rule(), doubling, "2shift");
  CHECK(find_cosine_split(grow, 3, offset_schedule(3, 8)).verdict == Verdict::inconclusive);
}

TEST_CASE("trace-dual checkers") {
  const auto w = elop::build_example_w();
  CHECK(check_adjoint_conditions(w, 2, offset_schedule(3, 24), elop::DualVariant::plain).verdict ==
        Verdict::pass);
  const auto split_rep =
      check_adjoint_conditions(w, 4, offset_schedule(3, 24), elop::DualVariant::with_split);
  CHECK(split_rep.verdict == Verdict::pass);
  CHECK(split_rep.parameters.at("final_split_e") == "{1,3}");
  CHECK(split_rep.parameters.at("final_split_r") == "{2,4}");

  CHECK(check_adjoint_conditions(elop::identity_operator(), 2, offset_schedule(3, 8),
                                 elop::DualVariant::with_split)
            .verdict == Verdict::fail);
  const auto plain = check_adjoint_conditions(w, 2, offset_schedule(3, 8), elop::DualVariant::plain);
  CHECK_FALSE(plain.notes.empty());  // the ambiguity of the auxiliary clauses is flagged
}

TEST_CASE("sufficiency passes coexist with the necessary condition") {
  const auto w = elop::build_example_w();
  const auto schedule = offset_schedule(3, 24);
  const bool any_pass = check_hypercyclicity_condition(w, 2, schedule).verdict == Verdict::pass ||
                        check_series_condition(w, 2, schedule).verdict == Verdict::pass ||
                        find_cosine_split(w, 4, schedule).verdict == Verdict::pass;
  REQUIRE(any_pass);
  CHECK(check_necessary_m_condition(w).verdict == Verdict::pass);

  // The periodic unitary: dense periodicity alone must not imply the
  // necessary condition or any sufficiency verdict.
  const auto c = elop::build_cyclic_unitary(4);
  CHECK(check_necessary_m_condition(c).verdict == Verdict::fail);
  CHECK(check_hypercyclicity_condition(c, 2, offset_schedule(3, 8)).verdict != Verdict::pass);
  CHECK(check_series_condition(c, 2, offset_schedule(3, 8)).verdict != Verdict::pass);
  CHECK(find_cosine_split(c, 4, offset_schedule(3, 8)).verdict != Verdict::pass);
  CHECK(check_adjoint_conditions(c, 2, offset_schedule(3, 8), elop::DualVariant::plain).verdict !=
        Verdict::pass);
}

TEST_CASE("cyclic unitary sandwich is literally periodic") {
  const auto c = elop::build_cyclic_unitary(4);
  elop::ElementarySystem sys(c, c);
  std::mt19937_64 rng(61);
  const auto f = elop_tests::random_sparse(rng, 8, 10);
  CHECK(t_apply(sys, 4, f) == f);
  CHECK(t_apply(sys, 8, f) == f);
}

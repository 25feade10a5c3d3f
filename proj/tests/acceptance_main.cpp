// Acceptance suite: one self-contained check per criterion, each printing a
// single pass/fail line.  Exits nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "elop/runner.hpp"
#include "elop/scenario.hpp"
#include "elop/witnesses.hpp"
#include "oracles.hpp"

namespace {

using namespace elop;
namespace fs = std::filesystem;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::int64_t> offset_schedule(std::int64_t offset, int count) {
  std::vector<std::int64_t> v;
  for (int k = 1; k <= count; ++k) v.push_back(k + offset);
  return v;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 1. Exact two-sided compression-norm grid of the example operator.
void criterion_grid() {
  const auto start = std::chrono::steady_clock::now();
  const auto w = build_example_w();
  for (Index k = 1; k <= 3; ++k) {
    for (std::int64_t m = 1; m <= 10; ++m) {
      require(w.norm_power_proj(2 * k - 1 + m, SubspaceSpec::leading(2 * k)) ==
                  Scalar::exact(Dyadic::power_of_two(-m)),
              "forward grid mismatch at k=" + std::to_string(k) + " m=" + std::to_string(m));
      require(w.norm_power_proj(-(2 * k + m), SubspaceSpec::leading(2 * k + 1)) ==
                  Scalar::exact(Dyadic::power_of_two(-(m - 1))),
              "backward grid mismatch at k=" + std::to_string(k) + " m=" + std::to_string(m));
    }
  }
  require(seconds_since(start) < 1.0, "grid computation exceeded 1 s");
}

// 2. Adjoint grid: left compressions of W* match the transposed identity.
void criterion_adjoint_grid() {
  const auto start = std::chrono::steady_clock::now();
  const auto adj = build_example_w().adjoint();
  for (Index k = 1; k <= 3; ++k) {
    for (std::int64_t m = 1; m <= 10; ++m) {
      require(adj.proj_norm_power(SubspaceSpec::leading(2 * k), 2 * k - 1 + m) ==
                  Scalar::exact(Dyadic::power_of_two(-m)),
              "adjoint grid mismatch at k=" + std::to_string(k) + " m=" + std::to_string(m));
    }
  }
  require(seconds_since(start) < 1.0, "adjoint grid computation exceeded 1 s");
}

// 3. Norm, minimum modulus, and the exact inverse duality.
void criterion_norm_duality() {
  const auto w = build_example_w();
  require(w.sup_norm() == Scalar::exact(2), "sup norm is not exactly 2");
  require(w.min_modulus() == Scalar::exact(Dyadic::from_parts(1, -1)),
          "minimum modulus is not exactly 1/2");
  require(w.sup_norm() == w.inverse().min_modulus().inverse(),
          "duality ||W|| = m(W^-1)^-1 violated");
}

// 4. Sufficiency verdicts coexist with the necessary condition on both the
// example pair and the periodic unitary counterexample.
void criterion_consistency() {
  const auto w = build_example_w();
  const auto schedule = offset_schedule(3, 24);
  std::vector<Verdict> sufficiency = {
      check_hypercyclicity_condition(w, 2, schedule).verdict,
      check_zero_transitivity(w, SubspaceSpec::leading(2), schedule, schedule).verdict,
      check_series_condition(w, 2, schedule).verdict,
      find_cosine_split(w, 4, schedule).verdict,
      check_adjoint_conditions(w, 4, schedule, DualVariant::with_split).verdict,
      check_adjoint_conditions(w, 2, schedule, DualVariant::plain).verdict,
  };
  bool any_pass = false;
  for (Verdict v : sufficiency) any_pass = any_pass || v == Verdict::pass;
  require(any_pass, "no sufficiency checker passed on the example pair");
  require(check_necessary_m_condition(w).verdict == Verdict::pass,
          "necessary condition failed on the example operator");

  const auto c = build_cyclic_unitary(4);
  const auto short_schedule = offset_schedule(3, 12);
  std::vector<Verdict> counter = {
      check_hypercyclicity_condition(c, 2, short_schedule).verdict,
      check_zero_transitivity(c, SubspaceSpec::leading(2), short_schedule, short_schedule).verdict,
      check_series_condition(c, 2, short_schedule).verdict,
      find_cosine_split(c, 4, short_schedule).verdict,
      check_adjoint_conditions(c, 4, short_schedule, DualVariant::with_split).verdict,
      check_adjoint_conditions(c, 2, short_schedule, DualVariant::plain).verdict,
  };
  for (Verdict v : counter) {
    require(v != Verdict::pass, "a sufficiency checker passed on the periodic unitary");
  }
  require(check_necessary_m_condition(c).verdict == Verdict::fail,
          "necessary condition did not fail on the periodic unitary");
}

// 5. Entry-exact agreement of the three dynamical maps with dense truncated
// matrix products.
void criterion_dense_equivalence() {
  const ElementarySystem sys(build_aperiodic_shift(), build_example_w());
  const Index window = 64;
  const auto wd = elop_tests::dense_truncate(sys.w(), window);
  const auto wi = elop_tests::dense_truncate(sys.w().inverse(), window);
  const auto ud = elop_tests::dense_truncate(sys.u(), window);
  const auto ui = elop_tests::dense_truncate(sys.u().inverse(), window);
  const Scalar half = Scalar::exact(Dyadic::from_parts(1, -1));
  std::mt19937_64 rng(20260501);

  auto sandwich_dense = [&](const elop_tests::DenseExact& left, const elop_tests::DenseExact& right,
                            const elop_tests::DenseExact& f, int steps) {
    auto acc = f;
    for (int s = 0; s < steps; ++s) {
      acc = elop_tests::dense_mul(left, elop_tests::dense_mul(acc, right, scalar_mode::exact),
                                  scalar_mode::exact);
    }
    return acc;
  };

  for (int trial = 0; trial < 100; ++trial) {
    const auto f = elop_tests::random_sparse(rng, 5, 8);
    const auto fd = elop_tests::dense_of(f, window);
    for (std::int64_t n = -6; n <= 6; ++n) {
      const int steps = static_cast<int>(n >= 0 ? n : -n);
      const auto t_dense = sandwich_dense(n >= 0 ? wd : wi, n >= 0 ? ud : ui, fd, steps);
      require(elop_tests::dense_equals_operator(t_dense, t_apply(sys, n, f)),
              "t_apply disagrees with the dense product at n=" + std::to_string(n));
      const auto a_dense = sandwich_dense(n >= 0 ? ud : ui, n >= 0 ? wd : wi, fd, steps);
      require(elop_tests::dense_equals_operator(a_dense, adjoint_t_apply(sys, n, f)),
              "adjoint_t_apply disagrees with the dense product at n=" + std::to_string(n));
      if (n >= 0) {
        const auto fwd = sandwich_dense(wd, ud, fd, steps);
        const auto bwd = sandwich_dense(wi, ui, fd, steps);
        auto avg = elop_tests::dense_zero(window, scalar_mode::exact);
        for (std::size_t i = 0; i < avg.size(); ++i) {
          for (std::size_t j = 0; j < avg.size(); ++j) {
            avg[i][j] = half * (fwd[i][j] + bwd[i][j]);
          }
        }
        require(elop_tests::dense_equals_operator(avg, cosine_apply(sys, n, f)),
                "cosine_apply disagrees with the dense product at n=" + std::to_string(n));
      }
    }
  }
}

// 6. Both norms agree with an independent dense SVD within 1e-10.
void criterion_norm_oracle() {
  std::mt19937_64 rng(20260502);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = elop_tests::random_sparse(rng, 8, 12);
    const auto dense = elop_tests::eigen_of(f);
    require(std::fabs(operator_norm(f) - elop_tests::eigen_operator_norm(dense)) < 1e-10,
            "operator norm disagrees with the SVD oracle at trial " + std::to_string(trial));
    require(std::fabs(trace_norm(f) - elop_tests::eigen_trace_norm(dense)) < 1e-10,
            "trace norm disagrees with the SVD oracle at trial " + std::to_string(trial));
  }
}

// 7. Transitive witness decay within proof-side bounds.
void criterion_witness_decay() {
  const auto start = std::chrono::steady_clock::now();
  const ElementarySystem sys(build_aperiodic_shift(), build_example_w());
  const auto p2 = projection_operator(SubspaceSpec::leading(2));
  const auto run = transitive_witness(sys, p2, p2, 2, offset_schedule(3, 25));
  int reached = 0;
  for (const auto& rec : run.records) {
    require(rec.value("residual1") <= rec.value("bound1") + 1e-12,
            "residual1 exceeded its proof bound at k=" + std::to_string(rec.k));
    require(rec.value("residual2") <= rec.value("bound2") + 1e-12,
            "residual2 exceeded its proof bound at k=" + std::to_string(rec.k));
    if (reached == 0 && rec.value("residual1") < 1e-6 && rec.value("residual2") < 1e-6) {
      reached = rec.k;
    }
  }
  require(reached > 0 && reached <= 25, "residuals did not fall below 1e-6 by k = 25");
  require(seconds_since(start) < 5.0, "witness run exceeded 5 s");
}

// 8. Periodic witness: exact boundary identity and the tail-bound contract.
void criterion_periodic_exactness() {
  const ElementarySystem sys(build_aperiodic_shift(), build_example_w());
  const auto p2 = projection_operator(SubspaceSpec::leading(2));
  for (std::int64_t n : {std::int64_t(8), std::int64_t(12)}) {
    const auto run = periodic_witness(sys, p2, n, std::ldexp(1.0, -40));
    require(run.verdict == Verdict::pass, "periodic witness failed at n=" + std::to_string(n));
    const auto& rec = run.records.front();
    require(rec.value("boundary_identity") == 1.0,
            "period defect is not exactly the boundary operator at n=" + std::to_string(n));
    require(rec.exact.count("period_residual") == 1,
            "period residual has no exact dyadic value at n=" + std::to_string(n));
    const int lf = static_cast<int>(rec.value("forward_terms"));
    const int lb = static_cast<int>(rec.value("backward_terms"));
    const Scalar predicted =
        max(sys.w().norm_power_proj(static_cast<std::int64_t>(lf + 1) * n, SubspaceSpec::leading(2)),
            sys.w().norm_power_proj(-static_cast<std::int64_t>(lb) * n, SubspaceSpec::leading(2)));
    require(rec.exact.at("period_residual") == predicted.text(),
            "exact period residual does not equal the predicted dyadic boundary value");
    require(rec.value("period_residual") <= 2.0 * rec.value("tail_bound"),
            "period residual exceeded twice the certified tail bound");
  }
}

// 9. Parity split with exact doubled-power norms, and cosine witness decay.
void criterion_cosine_split() {
  const auto w = build_example_w();
  const auto split = find_cosine_split(w, 4, offset_schedule(3, 20));
  require(split.verdict == Verdict::pass, "cosine split search did not certify decay");
  for (const auto& entry : split.per_k) {
    require(entry.e == SubspaceSpec({1, 3}) && entry.r == SubspaceSpec({2, 4}),
            "split is not the parity split at k=" + std::to_string(entry.k));
    require(entry.forward_norm == Scalar::exact(Dyadic::power_of_two(-2 * entry.n)),
            "forward split norm is not exactly 2^-2n at k=" + std::to_string(entry.k));
    require(entry.backward_norm == Scalar::exact(Dyadic::power_of_two(-2 * entry.n)),
            "backward split norm is not exactly 2^-2n at k=" + std::to_string(entry.k));
  }
  const ElementarySystem sys(build_aperiodic_shift(), w);
  const auto p4 = projection_operator(SubspaceSpec::leading(4));
  const auto run = cosine_witness_run(sys, p4, p4, split, 1e-4);
  int reached = 0;
  for (const auto& rec : run.records) {
    if (rec.value("residual1") < 1e-4 && rec.value("residual2") < 1e-4) {
      reached = rec.k;
      break;
    }
  }
  require(reached > 0 && reached <= 20, "cosine witness residuals did not fall below 1e-4 by k = 20");
}

// 10. Orthogonality horizons match an independent brute-force sweep.
void criterion_orthogonality() {
  const auto u = build_aperiodic_shift();
  for (Index k = 1; k <= 16; ++k) {
    const auto fast = orthogonality_horizon(u, k, 64);
    require(fast.has_value(), "no horizon found for k=" + std::to_string(k));
    bool confirmed = false;
    for (std::int64_t candidate = 1; candidate <= 64 && !confirmed; ++candidate) {
      bool ok = true;
      for (std::int64_t n = candidate; n <= 64 && ok; ++n) {
        std::set<Index> image;
        for (Index j = 1; j <= k; ++j) {
          Index x = j;
          for (std::int64_t s = 0; s < n; ++s) x = u.rule().forward(x);
          image.insert(x);
        }
        for (Index j = 1; j <= k; ++j) ok = ok && !image.count(j);
      }
      if (ok) {
        require(candidate == *fast, "brute-force horizon disagrees at k=" + std::to_string(k));
        confirmed = true;
      }
    }
    require(confirmed, "brute-force sweep found no horizon for k=" + std::to_string(k));
  }
  require(!orthogonality_horizon(identity_operator(), 4, 64).has_value(),
          "identity operator unexpectedly produced a horizon");
}

// 11. Re-running the example scenario produces byte-identical JSON reports.
void criterion_determinism() {
  const auto cfg = parse_config(read_file(fs::path(ELOP_FIXTURE_DIR) / "example34.scenario"));
  const fs::path dir1 = fs::temp_directory_path() / "elop_acc_det1";
  const fs::path dir2 = fs::temp_directory_path() / "elop_acc_det2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  const auto first = run_scenario(cfg, std::nullopt, dir1.string());
  const auto second = run_scenario(cfg, std::nullopt, dir2.string());
  require(first.errored == 0 && second.errored == 0, "scenario runs errored");
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dir1 / cfg.name)) {
    if (entry.path().extension() != ".json") continue;
    const fs::path other = dir2 / cfg.name / entry.path().filename();
    require(fs::exists(other), "missing report " + other.string());
    require(read_file(entry.path()) == read_file(other),
            "JSON report differs: " + entry.path().filename().string());
    ++compared;
  }
  require(compared > 0, "no JSON reports were produced");
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"exact compression-norm grid", criterion_grid},
      {"exact adjoint compression grid", criterion_adjoint_grid},
      {"norm, minimum modulus, inverse duality", criterion_norm_duality},
      {"sufficiency/necessity consistency", criterion_consistency},
      {"dense truncation equivalence of the dynamical maps", criterion_dense_equivalence},
      {"norms against the dense SVD oracle", criterion_norm_oracle},
      {"transitive witness decay within proof bounds", criterion_witness_decay},
      {"periodic witness exact boundary identity", criterion_periodic_exactness},
      {"parity cosine split and witness decay", criterion_cosine_split},
      {"orthogonality horizons against brute force", criterion_orthogonality},
      {"byte-identical scenario reports", criterion_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string status = "PASS";
    std::string detail;
    try {
      criteria[i].second();
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = e.what();
      ++failures;
    }
    std::printf("[%2zu/%zu] %-52s %s\n", i + 1, criteria.size(), criteria[i].first.c_str(),
                status.c_str());
    if (!detail.empty()) std::printf("        %s\n", detail.c_str());
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

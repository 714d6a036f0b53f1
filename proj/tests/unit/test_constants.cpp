#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ese/constants.hpp"
#include "oracles.hpp"

using namespace ese;

namespace {

std::vector<std::string> violated_names(const AdmissibilityVerdict& v) {
  std::vector<std::string> out;
  for (const auto& c : v.violated) out.push_back(c.name);
  return out;
}

}  // namespace

TEST_CASE("presets from the catalogue are admissible") {
  for (const char* name : {"hamilton_1d", "improved_1d", "dim2", "blowup(1,2,1)", "blowup(1,1.5,0.5)"}) {
    const Preset p = preset(name);
    INFO(name);
    CHECK(check_admissible(p.n, p.p, p.constants).admissible());
  }
}

TEST_CASE("preset tuples") {
  const Preset h = preset("hamilton_1d");
  CHECK(h.n == 1);
  CHECK(h.p == 2.0);
  CHECK(h.constants == HarnackConstants{1.0, 0.0, 0.5, 2.0 / 3.0});
  CHECK(preset("improved_1d").constants == HarnackConstants{1.0, 0.0, 0.25, 0.5});
  const Preset d = preset("dim2");
  CHECK(d.n == 2);
  CHECK(d.constants == HarnackConstants{1.0, 0.0, 0.5, 1.0});
  const Preset b = preset("blowup(1,2,1)");
  CHECK(b.n == 1);
  CHECK(b.constants == HarnackConstants{2.0, 1.0, 1.0, 2.0});
  CHECK(preset("blowup(2, 1.5, 1)").constants.a == 4.0);
  CHECK(throws_kind(ErrorKind::unknown_preset, [] { preset("hamilton_2d"); }));
  CHECK(throws_kind(ErrorKind::unknown_preset, [] { preset("blowup(1,2)"); }));
}

TEST_CASE("single-constraint violations are named") {
  const auto v = check_admissible(1, 2.0, {1.0, 0.0, 0.24, 0.5});
  REQUIRE(v.violated.size() == 1);
  CHECK(v.violated[0].name == kCLower);
  CHECK(v.violated[0].slack == doctest::Approx(0.24 - 0.25));

  CHECK(violated_names(check_admissible(1, 2.0, {1.0, 0.0, 0.6, 0.5})) == std::vector<std::string>{"c_upper"});
  CHECK(violated_names(check_admissible(1, 2.0, {1.0, 0.0, 0.3, 0.4})) == std::vector<std::string>{"a_lower"});
  CHECK(violated_names(check_admissible(1, 2.0, {1.0, -0.1, 0.3, 0.6})) == std::vector<std::string>{"beta_nonneg"});
  CHECK(violated_names(check_admissible(1, 2.0, {1.0, 1.0, 1.0, 2.0})) == std::vector<std::string>{"alpha_gt_beta"});
}

TEST_CASE("region endpoints fed back as c bind with zero slack") {
  for (auto [n, p, alpha, beta] : {std::tuple{1, 2.0, 1.0, 0.0}, std::tuple{1, 2.0, 2.0, 1.0}, std::tuple{2, 1.5, 1.0, 0.3}}) {
    const auto r = feasible_region(n, p, alpha, beta);
    CHECK(r.c_lo == doctest::Approx(oracle::c_lower(n, p, alpha, beta)));
    CHECK(r.c_hi == doctest::Approx(oracle::c_upper(p, alpha, beta)));
    CHECK(r.a_min == doctest::Approx(oracle::a_min(n, alpha, beta)));
    REQUIRE(r.feasible);
    for (double c : {r.c_lo, r.c_hi}) {
      const auto v = check_admissible(n, p, {alpha, beta, c, r.a_min});
      CHECK(v.admissible());
      for (const auto& k : v.checked)
        if (k.name == kCLower && c == r.c_lo) CHECK(std::abs(k.slack) < 1e-15);
    }
  }
}

TEST_CASE("feasible_region examples") {
  const auto r = feasible_region(1, 2.0, 1.0, 0.0);
  CHECK(r.c_lo == doctest::Approx(0.25));
  CHECK(r.c_hi == doctest::Approx(0.5));
  CHECK(r.a_min == doctest::Approx(0.5));

  for (double p : {1.5, 2.0, 2.5}) {
    const auto b = feasible_region(1, p, 2.0, 1.0);
    CHECK(b.c_hi == doctest::Approx(2.0));
    CHECK(b.c_lo == doctest::Approx(p - 1.0));
    CHECK(b.a_min == doctest::Approx(2.0));
    CHECK(b.feasible == (p - 1.0 <= 2.0));
  }
  const auto e = feasible_region(3, 2.0, 2.0, 1.0);
  CHECK(feasibility_lhs(2.0, 2.0, 1.0) == doctest::Approx(4.0));
  CHECK_FALSE(e.feasible);
  CHECK(e.empty());
  CHECK(e.c_lo > e.c_hi);
  CHECK(throws_kind(ErrorKind::invalid_argument, [] { feasible_region(1, 2.0, 1.0, 1.0); }));
}

TEST_CASE("feasibility flag agrees with the interval being nonempty") {
  for (int n = 1; n <= 3; ++n)
    for (double p : {1.2, 2.0, 3.0})
      for (double alpha : {0.5, 1.0, 2.0})
        for (double s : {0.0, 0.1, 0.25, 0.5, 0.9}) {
          const auto r = feasible_region(n, p, alpha, s * alpha);
          CHECK(r.feasible == (r.c_lo <= r.c_hi * (1.0 + 1e-12)));
        }
}

TEST_CASE("best_feasibility") {
  const auto p2 = best_feasibility(1, 2.0);
  CHECK(std::abs(p2.max_lhs - 4.5) <= 1e-8);
  CHECK(std::abs(p2.argmax_ratio - oracle::feasibility_argmax(2.0)) <= 1e-8);
  CHECK(p2.n_limit == doctest::Approx(2.25));
  CHECK(best_feasibility(1, 2.0).feasible);
  CHECK(best_feasibility(2, 2.0).feasible);
  CHECK_FALSE(best_feasibility(3, 2.0).feasible);

  const auto p3 = best_feasibility(1, 3.0);
  CHECK(p3.argmax_ratio == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(p3.max_lhs == doctest::Approx(8.0));
  CHECK(p3.n_limit == doctest::Approx(8.0 / 6.0));
  CHECK(feasibility_lhs(2.0, 1.0, 0.0) == doctest::Approx(4.0));
}

TEST_CASE("optimizer dominates a dense scan") {
  for (double p : {1.3, 2.0, 2.7}) {
    const auto best = best_feasibility(1, p);
    double scan = 0.0;
    for (int i = 0; i < 10000; ++i) scan = std::max(scan, oracle::feasibility_value(p, i / 10000.0));
    CHECK(best.max_lhs >= scan - 1e-14);
  }
}

TEST_CASE("path hypotheses add two predicates") {
  const auto ok = check_path_hypotheses(1, 2.0, preset("hamilton_1d").constants);
  CHECK(ok.admissible());
  CHECK(ok.checked.size() > check_admissible(1, 2.0, preset("hamilton_1d").constants).checked.size());
  // α < 2β breaks the c ≤ α argument.
  const auto bad = check_path_hypotheses(1, 2.0, {1.0, 0.6, 1.0, 2.0});
  const auto names = violated_names(bad);
  CHECK(std::find(names.begin(), names.end(), "alpha_ge_2beta") != names.end());
  CHECK(std::find(names.begin(), names.end(), "a_le_n_alpha") != names.end());
}

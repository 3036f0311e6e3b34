#include <doctest.h>

#include <cmath>

#include "fpr/analytic.hpp"
#include "fpr/design.hpp"
#include "fpr/errors.hpp"

using namespace fpr;
using doctest::Approx;

TEST_SUITE("solve_signal_photons") {
  TEST_CASE("coherent worked example") {
    const double n_s = solve_signal_photons(Source::CoherentState, 1e-6, 10, 1e-6);
    CHECK(n_s == Approx(std::log(5e5) / 1e-5).epsilon(1e-14));
    CHECK(n_s == Approx(1.31224e6).epsilon(1e-4));
  }

  TEST_CASE("coherent single pulse at target 1/4") {
    CHECK(solve_signal_photons(Source::CoherentState, 0.1, 1, 0.25) ==
          Approx(std::log(2.0) / 0.1).epsilon(1e-14));
  }

  TEST_CASE("number state lands on an exact integer") {
    CHECK(solve_signal_photons(Source::NumberState, 0.5, 2, 0.125) == 1.0);
  }

  TEST_CASE("number state rounds up and never exceeds the target") {
    for (const double target : {1e-2, 3e-5, 1e-9}) {
      for (const std::int64_t m : {1, 4, 25}) {
        const double n_s = solve_signal_photons(Source::NumberState, 1e-3, m, target);
        CHECK(n_s == std::floor(n_s));
        CHECK(ns_fpr_metrics(1e-3, n_s, m).pr_e <= target * (1 + 1e-12));
        if (n_s > 1) CHECK(ns_fpr_metrics(1e-3, n_s - 1, m).pr_e > target);
      }
    }
  }

  TEST_CASE("unreachable and invalid targets") {
    CHECK_THROWS_AS(solve_signal_photons(Source::CoherentState, 1e-3, 5, 0.5), UnreachableTarget);
    CHECK_THROWS_AS(solve_signal_photons(Source::CoherentState, 1e-3, 5, 0.7), UnreachableTarget);
    CHECK_THROWS_AS(solve_signal_photons(Source::CoherentState, 1e-3, 5, 0.0), DomainError);
    CHECK_THROWS_AS(solve_signal_photons(Source::CoherentState, 1.0, 5, 0.1), DomainError);
    CHECK_THROWS_AS(solve_signal_photons(Source::CoherentState, 1e-3, 0, 0.1), DomainError);
  }

  TEST_CASE("coherent round trip reproduces the target") {
    for (const double kappa : {1e-9, 1e-6, 1e-3, 0.2}) {
      for (const double target : {0.4, 1e-3, 1e-12, 1e-30}) {
        for (const std::int64_t m : {1, 10, 1000}) {
          const double n_s = solve_signal_photons(Source::CoherentState, kappa, m, target);
          const Metrics got = cs_fpr_metrics(kappa, n_s, m);
          CHECK(got.pr_e == Approx(target).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_SUITE("nair_required_photons") {
  TEST_CASE("worked example") {
    const double n_t = nair_required_photons(1e-6, 1e-6);
    CHECK(n_t == Approx(1.24292e7).epsilon(5e-3));
    CHECK(n_t == Approx(1.2429211e7).epsilon(1e-7));  // mpmath
  }

  TEST_CASE("target 1/4 at kappa = 1e-3") {
    // ln(3/4) / log1p(-1e-3) = 287.538207... (mpmath)
    CHECK(nair_required_photons(1e-3, 0.25) == Approx(287.53820743005465).epsilon(1e-12));
  }

  TEST_CASE("kappa = 1 is rejected") {
    CHECK_THROWS_AS(nair_required_photons(1.0, 0.1), DomainError);
  }

  TEST_CASE("inverts the exact bound") {
    for (const double kappa : {1e-9, 1e-5, 1e-2, 0.5}) {
      for (const double target : {0.49, 0.1, 1e-4, 1e-15, 1e-40}) {
        const double n_t = nair_required_photons(kappa, target);
        CHECK(nair_bound(kappa, n_t, Regime::Exact).value == Approx(target).epsilon(1e-9));
      }
    }
  }
}

TEST_SUITE("advantage") {
  TEST_CASE("worked example from exact formulas") {
    const AdvantageReport r = advantage_report(1e-6, 10, 1e-6);
    CHECK(r.n_s_solved == Approx(1.31224e6).epsilon(1e-4));
    CHECK(r.mean_pulses == Approx(5.6842).epsilon(0.001 / 5.6842));
    CHECK(r.mean_photons_fpr == Approx(7.4591e6).epsilon(1e-4));
    CHECK(r.nair_photons == Approx(1.24292e7).epsilon(1e-5));
    CHECK(std::abs(r.advantage_db - 2.217) <= 0.01);
    // frozen from a 50-digit mpmath evaluation
    CHECK(r.advantage_db == Approx(2.2176241223836080).epsilon(1e-10));
    CHECK(r.mean_photons_fpr < static_cast<double>(r.scenario.m_max) * r.n_s_solved);
    CHECK(r.scenario.source == Source::CoherentState);
  }

  TEST_CASE("report invariants hold to 1e-9") {
    const AdvantageReport r = advantage_report(3e-7, 40, 2e-8);
    CHECK(cs_fpr_metrics(r.scenario.kappa, r.n_s_solved, 40).pr_e == Approx(2e-8).epsilon(1e-9));
    CHECK(nair_bound(3e-7, r.nair_photons).value == Approx(2e-8).epsilon(1e-9));
  }

  TEST_CASE("deep saturation point") {
    // kappa M N_S = ln(5e29) = 68.38, N_bar kappa = 34.69, kappa N_T = 67.69
    const AdvantageReport r = advantage_report(1e-9, 10000, 1e-30);
    CHECK(r.n_s_solved * 1e-9 * 10000 == Approx(68.384405609261425).epsilon(1e-12));
    CHECK(r.mean_photons_fpr * 1e-9 == Approx(34.693914363280647).epsilon(1e-9));
    CHECK(r.nair_photons * 1e-9 == Approx(67.691258394855851).epsilon(1e-9));
    CHECK(r.advantage_db >= 2.90);
    CHECK(r.advantage_db < 10.0 * std::log10(2.0));
  }

  TEST_CASE("a single pulse does not beat Nair") {
    for (const double p : {1e-2, 1e-6, 1e-12}) {
      const AdvantageReport r = advantage_report(1e-7, 1, p);
      const double oracle =
          10.0 * std::log10(std::log(1.0 / (4.0 * p * (1.0 - p))) / std::log(1.0 / (2.0 * p)));
      CHECK(r.advantage_db == Approx(oracle).epsilon(1e-5));
      CHECK(r.advantage_db < 0.0);
    }
  }
}

TEST_SUITE("saturation") {
  TEST_CASE("strictly increasing toward 3 dB") {
    const auto curve = saturation_curve(1e-6, 1e-6, {1, 2, 10, 100, 10000});
    REQUIRE(curve.size() == 5);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].advantage_db > curve[i - 1].advantage_db);
    }
    CHECK(curve.back().advantage_db < 10.0 * std::log10(2.0));
    CHECK(curve[2].m_max == 10);
    CHECK(curve[2].advantage_db == Approx(advantage_report(1e-6, 10, 1e-6).advantage_db));
    CHECK(std::abs(curve[2].advantage_db - 2.217) <= 0.01);
  }

  TEST_CASE("approaches 10 log10 2 in the joint limit") {
    const auto curve = saturation_curve(1e-12, 1e-300, {1000000});
    CHECK(curve[0].advantage_db == Approx(10.0 * std::log10(2.0)).epsilon(5e-3));
    CHECK(curve[0].advantage_db < 10.0 * std::log10(2.0));
  }

  TEST_CASE("M list must increase") {
    CHECK_THROWS_AS(saturation_curve(1e-6, 1e-6, {10, 5}), DomainError);
  }
}

TEST_SUITE("confluence") {
  TEST_CASE("kappa = 1e-3 at Pr_NS = 1e-9") {
    const double total = std::log(2e-9) / std::log1p(-1e-3);
    CHECK(total == Approx(2.0020101927046601e4).epsilon(1e-12));
    CHECK(confluence_ratio(1e-3, total) == Approx(1.0101).epsilon(0.0002 / 1.0101));
    CHECK(confluence_ratio(1e-3, total) == Approx(1.0100670646980366).epsilon(1e-12));
  }

  TEST_CASE("kappa = 1e-3 at Pr_NS = 1e-1") {
    const double total = std::log(0.2) / std::log1p(-1e-3);
    CHECK(confluence_ratio(1e-3, total) == Approx(1.0008051771243498).epsilon(1e-12));
  }

  TEST_CASE("vanishing kappa closes the gap") {
    const double kappa = 1e-12;
    const double total = std::log(2e-9) / std::log1p(-kappa);
    CHECK(confluence_ratio(kappa, total) == Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("ratio equals the quotient of separately computed error probabilities") {
    const ConfluenceReport rep = confluence_check({});
    REQUIRE(rep.points.size() == 61 * 161);
    for (const auto& p : rep.points) {
      const double cs = std::exp(-p.kappa * p.total_photons);
      const double ns = std::exp(p.total_photons * std::log1p(-p.kappa));
      CHECK(p.ratio >= 1.0);
      CHECK(p.ratio == Approx(cs / ns).epsilon(1e-12));
      CHECK(ns / 2 == Approx(p.pr_e_number).epsilon(1e-12));
    }
    CHECK(rep.max_ratio == Approx(1.0100670646980366).epsilon(1e-12));
  }

  TEST_CASE("grid outside the claimed regime is rejected") {
    ConfluenceGrid g;
    g.kappa_max = 1e-2;
    CHECK_THROWS_AS(confluence_check(g), DomainError);
    g = {};
    g.pr_e_max = 0.3;
    CHECK_THROWS_AS(confluence_check(g), DomainError);
  }

  TEST_CASE("log grid includes both ends") {
    const auto g = log_grid(1e-6, 1e-3, 7);
    REQUIRE(g.size() == 22);
    CHECK(g.front() == 1e-6);
    CHECK(g.back() == 1e-3);
    CHECK(g[7] == Approx(1e-5).epsilon(1e-12));
    CHECK(log_grid(5.0, 5.0, 3) == std::vector<double>{5.0});
  }
}

#include <doctest.h>

#include <cmath>

#include "fpr/analytic.hpp"
#include "fpr/montecarlo.hpp"
#include "fpr/rng.hpp"

using namespace fpr;
using doctest::Approx;

TEST_SUITE("substream rng") {
  // Reference draws from an independent Python transcription of the
  // documented key/draw functions.
  TEST_CASE("first draws match the documented mixing function") {
    auto a = TrialRng::for_trial(1, 0, 0);
    CHECK(a.next_u64() == 0x4181b152fb77616fULL);
    CHECK(a.next_u64() == 0x169c646d52269d62ULL);
    CHECK(a.next_u64() == 0x4a5de8d8d53b7280ULL);

    auto b = TrialRng::for_trial(1, 1, 0);
    CHECK(b.next_u64() == 0x275f2ae791fef8a1ULL);
    CHECK(b.next_u64() == 0x0091f1cf4437d33eULL);

    auto c = TrialRng::for_trial(42, 1, 7);
    CHECK(c.next_unit() == Approx(0.21981509905231733).epsilon(1e-15));
  }

  TEST_CASE("unit draws stay in [0, 1)") {
    auto r = TrialRng::for_trial(9, 0, 3);
    for (int i = 0; i < 100000; ++i) {
      const double u = r.next_unit();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
    }
  }
}

TEST_SUITE("click probability") {
  const Scenario kCoherentLn2{Source::CoherentState, 0.1, 10.0 * std::log(2.0), 3};

  TEST_CASE("pure loss never clicks without a target") {
    for (const Source src : {Source::NumberState, Source::CoherentState}) {
      const Scenario s{src, 0.3, 4, 5};
      CHECK(per_pulse_click_probability(s, Impairments::pure_loss(), Hypothesis::H0) == 0.0);
    }
  }

  TEST_CASE("coherent pulse at kappa N_S = ln 2 clicks half the time") {
    CHECK(per_pulse_click_probability(kCoherentLn2, Impairments::pure_loss(), Hypothesis::H1) ==
          Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("daytime background over 7000 bins") {
    Impairments imp;
    imp.n_b = 1e-6;
    imp.bins_total = 7000;
    const double p = per_pulse_click_probability(kCoherentLn2, imp, Hypothesis::H0);
    CHECK(p == Approx(-std::expm1(-0.007)).epsilon(1e-14));
    CHECK(p == Approx(0.0069790).epsilon(1e-5));
    // ten silent pulses
    CHECK(std::pow(1.0 - p, 10) == Approx(std::exp(-0.07)).epsilon(1e-12));
  }

  TEST_CASE("efficiency scales kappa for signal and background") {
    Impairments imp;
    imp.eta = 0.5;
    imp.n_b = 1e-3;
    imp.bins_total = 10;
    const Scenario number{Source::NumberState, 0.2, 3, 4};
    const double expected = 1.0 - std::pow(1.0 - 0.1, 3) * std::exp(-10 * 0.5 * 1e-3);
    CHECK(per_pulse_click_probability(number, imp, Hypothesis::H1) == Approx(expected).epsilon(1e-14));
    const Scenario coherent{Source::CoherentState, 0.2, 3, 4};
    CHECK(per_pulse_click_probability(coherent, imp, Hypothesis::H1) ==
          Approx(1.0 - std::exp(-(0.1 * 3 + 0.005))).epsilon(1e-14));
  }

  TEST_CASE("dark counts are gated to the range window") {
    Impairments imp;
    imp.dcr = 100.0;
    imp.bins_range = 70;
    imp.bins_total = 7000;
    imp.pulse_duration_s = 1e-7;
    CHECK(imp.noise_mean() == Approx(100.0 * 70 * 1e-7));
  }

  TEST_CASE("impaired M-pulse false alarm formula") {
    Impairments imp;
    imp.n_b = 3e-7;
    imp.dcr = 250.0;
    imp.bins_total = 4000;
    imp.bins_range = 40;
    imp.eta = 0.8;
    const Scenario s{Source::CoherentState, 1e-5, 2e5, 12};
    const double p0 = per_pulse_click_probability(s, imp, Hypothesis::H0);
    const double lhs = 1.0 - std::pow(1.0 - p0, 12);
    const double rhs = 1.0 - std::exp(-12 * (4000 * 0.8 * 3e-7 + 250.0 * 40 * 1e-7));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK(predicted_metrics(s, imp).p_f == Approx(rhs).epsilon(1e-12));
  }

  TEST_CASE("invalid impairments") {
    Impairments imp;
    imp.eta = 0.0;
    CHECK_THROWS(imp.validate());
    imp = {};
    imp.bins_total = 5;
    imp.bins_range = 6;
    CHECK_THROWS(imp.validate());
    imp = {};
    imp.dcr = -1;
    CHECK_THROWS(imp.validate());
  }
}

TEST_SUITE("trials") {
  TEST_CASE("pure loss, target absent: always H0 after M pulses") {
    const Scenario s{Source::CoherentState, 0.2, 5.0, 6};
    for (std::uint64_t i = 0; i < 1000; ++i) {
      auto rng = TrialRng::for_trial(3, 0, i);
      const TrialOutcome t = run_trial(s, Impairments::pure_loss(), Hypothesis::H0, rng);
      CHECK(t.decision == Hypothesis::H0);
      CHECK(t.pulses_used == 6);
      CHECK(t.photons_transmitted == 30.0);
    }
  }

  TEST_CASE("lossless single-photon pulse always clicks at once") {
    const Scenario s{Source::NumberState, 1.0, 1, 8};
    for (std::uint64_t i = 0; i < 1000; ++i) {
      auto rng = TrialRng::for_trial(3, 1, i);
      const TrialOutcome t = run_trial(s, Impairments::pure_loss(), Hypothesis::H1, rng);
      CHECK(t.decision == Hypothesis::H1);
      CHECK(t.pulses_used == 1);
    }
  }

  TEST_CASE("decision equals 'some pulse clicked', one draw per pulse") {
    const double p = 0.3;
    const std::int64_t m_max = 5;
    for (std::uint64_t i = 0; i < 5000; ++i) {
      auto rng = TrialRng::for_trial(17, 1, i);
      const TrialOutcome t = run_trial(p, m_max, 1.0, rng);
      // replay the same substream pulse by pulse
      auto replay = TrialRng::for_trial(17, 1, i);
      bool clicked = false;
      std::int64_t first = m_max;
      for (std::int64_t k = 1; k <= m_max; ++k) {
        if (replay.next_unit() < p) {
          clicked = true;
          first = k;
          break;
        }
      }
      CHECK((t.decision == Hypothesis::H1) == clicked);
      CHECK(t.pulses_used == first);
      if (t.decision == Hypothesis::H0) CHECK(t.pulses_used == m_max);
    }
  }
}

TEST_SUITE("estimate_metrics") {
  TEST_CASE("pure loss: p_f_hat is exactly zero") {
    const Scenario s{Source::CoherentState, 0.05, 10.0, 7};
    const EstimatedMetrics e = estimate_metrics(s, Impairments::pure_loss(), 20000, 5, 1);
    CHECK(e.p_f_hat == 0.0);
    CHECK(e.p_f_stderr == 0.0);
    CHECK(e.mean_pulses_h0_hat == 7.0);
  }

  TEST_CASE("half-transmission two-pulse Fock radar misses a quarter of the time") {
    const Scenario s{Source::NumberState, 0.5, 1, 2};
    const std::uint64_t n = 100000;
    const EstimatedMetrics e = estimate_metrics(s, Impairments::pure_loss(), n, 2024, 1);
    const double se = std::sqrt(0.25 * 0.75 / n);
    CHECK(std::abs(e.p_m_hat - 0.25) <= 3.0 * se);
    CHECK(e.p_m_stderr == Approx(se).epsilon(0.02));
    CHECK(e.trials_per_hypothesis == n);
    CHECK(e.master_seed == 2024);
  }

  TEST_CASE("coherent q = 1/2, M = 3: mean pulses under H1 is 1.75") {
    const Scenario s{Source::CoherentState, 0.1, 10.0 * std::log(2.0), 3};
    const EstimatedMetrics e = estimate_metrics(s, Impairments::pure_loss(), 100000, 77, 1);
    CHECK(std::abs(e.mean_pulses_h1_hat - 1.75) <= 3.0 * e.mean_pulses_h1_stderr);
    CHECK(std::abs(e.mean_pulses_hat - fpr_metrics(s).mean_pulses) <= 3.0 * e.mean_pulses_stderr);
  }

  TEST_CASE("bit-identical results for any worker count") {
    const Scenario s{Source::CoherentState, 1e-3, 300.0, 10};
    Impairments imp;
    imp.n_b = 1e-4;
    imp.bins_total = 50;
    const EstimatedMetrics one = estimate_metrics(s, imp, 30001, 99, 1);
    for (const unsigned w : {2U, 3U, 7U, 16U}) {
      CHECK(estimate_metrics(s, imp, 30001, 99, w) == one);
    }
    CHECK_FALSE(estimate_metrics(s, imp, 30001, 100, 1) == one);
  }

  TEST_CASE("predicted metrics reduce to the pure-loss closed forms") {
    const Scenario s{Source::NumberState, 0.02, 30, 9};
    const PredictedMetrics p = predicted_metrics(s, Impairments::pure_loss());
    const Metrics m = fpr_metrics(s);
    CHECK(p.p_f == 0.0);
    CHECK(p.p_m == Approx(m.p_m).epsilon(1e-14));
    CHECK(p.mean_pulses == Approx(m.mean_pulses).epsilon(1e-14));
  }

  TEST_CASE("zero trials rejected") {
    const Scenario s{Source::NumberState, 0.5, 1, 2};
    CHECK_THROWS(estimate_metrics(s, Impairments::pure_loss(), 0, 1));
  }
}

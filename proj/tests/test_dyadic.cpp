#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fiotk/dyadic.hpp"
#include "fiotk/error.hpp"
#include "support.hpp"

using namespace fiotk;
using testing_support::noise;
using testing_support::plane_wave;

TEST_CASE("smooth step is monotone, flat at both ends and symmetric") {
  CHECK(smooth_step_down(0.2, 0.5, 1.0) == 1.0);
  CHECK(smooth_step_down(1.0, 0.5, 1.0) == 0.0);
  CHECK(smooth_step_down(0.75, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.5 + 0.5 * i / 200.0;
    const double v = smooth_step_down(t, 0.5, 1.0);
    REQUIRE(v <= prev);
    REQUIRE(std::fabs(v + smooth_step_down(1.5 - t, 0.5, 1.0) - 1.0) < 1e-15);
    prev = v;
  }
  const BumpProfile u;
  CHECK(u(0.5) == 1.0);
  CHECK(u(1.0) == 0.0);
}

TEST_CASE("eps outside (0, 1/4) is a parameter error") {
  for (double eps : {0.0, -0.1, 0.25, 0.3}) {
    try {
      DyadicProfile p(eps);
      FAIL("accepted eps");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parameter);
    }
  }
}

TEST_CASE("analytic profile: partition, supports and dilation") {
  const DyadicProfile prof(0.125);
  for (int i = 0; i <= 4000; ++i) {
    const double r = 1e-3 + 300.0 * i / 4000.0;
    double total = 0.0;
    for (int j = 0; j <= 12; ++j) total += prof.psi(j, r);
    REQUIRE(std::fabs(total - 1.0) < 1e-12);
    for (int j = 2; j <= 12; ++j) REQUIRE(std::fabs(prof.psi(j, r) - prof.psi(1, std::ldexp(r, 1 - j))) < 1e-12);
    for (int j = 0; j <= 12; ++j) {
      const double v = prof.psi(j, r);
      REQUIRE(std::fabs(prof.psi_tilde(j, r) * v - v) < 1e-15);
      double lo, hi;
      prof.support(j, lo, hi);
      if (r <= lo || r >= hi) REQUIRE(v == 0.0);
    }
    REQUIRE(DyadicProfile::low_cutoff(r) * prof.psi(0, r) == prof.psi(0, r));
  }
  for (int j = 0; j <= 12; ++j) {
    if (j == 2 || j == 3) {
      CHECK(prof.psi(j, 3.0) > 0.0);
    } else {
      CHECK(prof.psi(j, 3.0) == 0.0);
    }
  }
  CHECK(prof.psi(0, 0.0) == 1.0);
  for (int j = 1; j <= 12; ++j) CHECK(prof.psi(j, 0.0) == 0.0);
  // Support of psi_1 sits inside [1/2, 2]; psi_tilde vanishes outside [2^{j-2}, 2^j].
  double lo, hi;
  prof.support(1, lo, hi);
  CHECK(lo >= 0.5);
  CHECK(hi <= 2.0);
  CHECK(prof.psi_tilde(3, 1.99) == 0.0);
  CHECK(prof.psi_tilde(3, 8.0) == 0.0);
}

TEST_CASE("lattice family is an exact partition with two active bands") {
  for (int n : {64, 128, 256}) {
    const GridSpec spec{2, n, 32.0 * kPi};
    const LittlewoodPaleyFamily fam(spec);
    CHECK(fam.max_band() == static_cast<int>(std::ceil(std::log2(spec.max_frequency()))) + 1);
    for (std::size_t i = 0; i < spec.count(); ++i) {
      double total = 0.0;
      int active = 0;
      for (int j = 0; j <= fam.max_band(); ++j) {
        const double w = fam.weight(j, i);
        total += w;
        active += w != 0.0;
        REQUIRE(std::fabs(w - fam.profile().psi(j, spec.frequency_norm(i))) < 1e-12);
      }
      REQUIRE(std::fabs(total - 1.0) < 1e-12);
      REQUIRE(active <= 2);
    }
    CHECK(fam.square_function_floor() >= 1.0 / std::sqrt(2.0) - 1e-12);
  }
}

TEST_CASE("projections of characters and constants") {
  const GridSpec spec{2, 64, 2.0 * kPi};
  const LittlewoodPaleyFamily fam(spec);
  const GridField wave = plane_wave(spec, 3, 0);
  GridField sum(spec);
  for (int j = 0; j <= fam.max_band(); ++j) {
    const GridField pj = lp_project(wave, j, fam);
    if (j == 2 || j == 3) {
      CHECK(pj.max_abs() > 1e-3);
    } else {
      CHECK(pj.max_abs() < 1e-14);
    }
    sum += pj;
  }
  CHECK(relative_max_error(sum, wave) < 1e-12);

  const GridField one = GridField::from_function(spec, [](const Point&) { return cplx(2.0); });
  CHECK(relative_max_error(lp_project(one, 0, fam), one) < 1e-14);
  for (int j = 1; j <= fam.max_band(); ++j) CHECK(lp_project(one, j, fam).max_abs() < 1e-14);

  const GridField f = noise(spec, 77);
  GridField rebuilt(spec);
  for (const GridField& band : fam.project_all(f)) rebuilt += band;
  CHECK(relative_l2_error(rebuilt, f) < 1e-12);

  CHECK_THROWS_AS(lp_project(f, -1, fam), Error);
  CHECK_THROWS_AS(lp_project(f, fam.max_band() + 1, fam), Error);
}

TEST_CASE("square function norm") {
  const GridSpec spec{2, 128, 8.0 * kPi};
  const LittlewoodPaleyFamily fam(spec);
  CHECK(square_function_norm(GridField(spec), 1.0, 3.0, fam) == 0.0);

  // |xi| = 8.25 lies on the plateau of psi_4.
  const GridField wave = plane_wave(spec, 33, 0);
  const double radius = 33 * spec.frequency_step();
  REQUIRE(fam.profile().psi(4, radius) == 1.0);
  for (double s : {0.0, 0.5, -1.0}) {
    for (double p : {1.5, 2.0, 4.0}) {
      const double expected = std::pow(2.0, 4 * s) * std::pow(spec.period * spec.period, 1.0 / p);
      const double got = square_function_norm(wave, s, p, fam);
      CHECK(got <= expected * (1.0 + 1e-12));
      CHECK(got >= expected / std::sqrt(2.0));
      CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GridField f = apply_multiplier(noise(spec, seed), SpectralMultiplier::radial(spec, [](double r) {
                                           return r < 20.0 ? 1.0 : 0.0;
                                         }));
    const double ratio = square_function_norm(f, 0.0, 2.0, fam) / l2_norm(f);
    CHECK(ratio <= 1.0 + 1e-12);
    CHECK(ratio >= fam.square_function_floor() - 1e-12);
  }
  CHECK_THROWS_AS(square_function_norm(wave, 0.0, 1.0, fam), Error);
}

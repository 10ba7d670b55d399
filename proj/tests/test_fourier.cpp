#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fiotk/error.hpp"
#include "fiotk/field_io.hpp"
#include "fiotk/fourier.hpp"
#include "support.hpp"

using namespace fiotk;
using testing_support::noise;
using testing_support::plane_wave;

namespace {

// Direct O(N^2) sum with the continuum normalization; independent of FFTW.
std::vector<cplx> naive_forward(const GridField& f) {
  const GridSpec& spec = f.spec();
  std::vector<cplx> out(f.size());
  const double scale = spec.cell_volume();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Point xi = spec.frequency(k);
    cplx acc = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
      const Point pos = spec.position(x);
      double phase = 0.0;
      for (int d = 0; d < spec.dim; ++d) phase += xi[d] * pos[d];
      acc += f[x] * std::exp(cplx(0.0, -phase));
    }
    out[k] = scale * acc;
  }
  return out;
}

double relative_vec_error(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("grid spec validation rejects malformed boxes") {
  CHECK_THROWS_AS((GridSpec{4, 16, 1.0}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{2, 24, 1.0}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{2, 16, -1.0}.validate()), Error);
  CHECK_NOTHROW((GridSpec{3, 8, 2.0}.validate()));
}

TEST_CASE("lattice indexing is a bijection") {
  const GridSpec spec{2, 16, 5.0};
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const auto idx = spec.unflatten(i);
    REQUIRE(spec.flatten(idx) == i);
    const std::array<int, 3> k{spec.wave_index(idx[0]), spec.wave_index(idx[1]), 0};
    CHECK(spec.frequency_flat(k) == i);
    CHECK(k[0] >= -8);
    CHECK(k[0] < 8);
  }
}

TEST_CASE("forward transform matches a direct sum in 1, 2 and 3 dimensions") {
  for (int dim = 1; dim <= 3; ++dim) {
    const GridSpec spec{dim, dim == 3 ? 4 : 8, 3.0 + dim};
    const GridField f = noise(spec, 11 + dim);
    const Spectrum s = forward_transform(f);
    CHECK(relative_vec_error(s.values, naive_forward(f)) < 1e-13);
  }
}

TEST_CASE("constant field transforms to a delta of height L^n") {
  const GridSpec spec{2, 32, 7.0};
  const GridField one = GridField::from_function(spec, [](const Point&) { return cplx(1.0); });
  const Spectrum s = forward_transform(one);
  const double height = spec.period * spec.period;
  CHECK(std::abs(s.values[0] - height) < 1e-12 * height);
  for (std::size_t i = 1; i < s.values.size(); ++i) REQUIRE(std::abs(s.values[i]) < 1e-12 * height);
}

TEST_CASE("characters map to single spectral spikes and back") {
  const GridSpec spec{2, 32, 2.0 * kPi};
  const GridField wave = plane_wave(spec, 3, -5);
  const Spectrum s = forward_transform(wave);
  const std::size_t spike = spec.frequency_flat({3, -5, 0});
  const double height = spec.period * spec.period;
  CHECK(std::abs(s.values[spike] - height) < 1e-11);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i != spike) REQUIRE(std::abs(s.values[i]) < 1e-10);
  }

  Spectrum delta{spec, std::vector<cplx>(spec.count(), 0.0)};
  delta.values[spike] = height;
  CHECK(relative_max_error(inverse_transform(delta), wave) < 1e-13);

  const Spectrum zero{spec, std::vector<cplx>(spec.count(), 0.0)};
  CHECK(inverse_transform(zero).max_abs() == 0.0);
}

TEST_CASE("round trip is exact to roundoff at every desk grid size") {
  for (int n : {64, 128, 256}) {
    const GridSpec spec{2, n, 32.0 * kPi};
    const GridField f = noise(spec, n);
    CHECK(relative_l2_error(inverse_transform(forward_transform(f)), f) < 1e-12);
  }
  const GridSpec line{1, 1024, 10.0};
  const GridField g = noise(line, 5);
  CHECK(relative_l2_error(inverse_transform(forward_transform(g)), g) < 1e-12);
}

TEST_CASE("multipliers compose and commute") {
  const GridSpec spec{2, 64, 20.0};
  const GridField f = noise(spec, 3);
  CHECK(relative_l2_error(apply_multiplier(f, SpectralMultiplier::constant(spec, 1.0)), f) < 1e-13);

  const GridField m1 = noise(spec, 4), m2 = noise(spec, 5);
  const SpectralMultiplier a(spec, m1.data()), b(spec, m2.data());
  const GridField ab = apply_multiplier(apply_multiplier(f, a), b);
  const GridField ba = apply_multiplier(apply_multiplier(f, b), a);
  CHECK(relative_l2_error(ab, apply_multiplier(f, a * b)) < 1e-12);
  CHECK(relative_l2_error(ab, ba) < 1e-12);

  const GridField wave = plane_wave(spec, 4, 2);
  std::vector<cplx> indicator(spec.count(), 0.0);
  indicator[spec.frequency_flat({4, 2, 0})] = 1.0;
  CHECK(relative_max_error(apply_multiplier(wave, SpectralMultiplier(spec, indicator)), wave) < 1e-13);

  const GridSpec other{2, 32, 20.0};
  CHECK_THROWS_AS(apply_multiplier(f, SpectralMultiplier::constant(other, 1.0)), Error);
}

TEST_CASE("Nyquist rows of a symbol multiplier are real") {
  const GridSpec spec{2, 16, 4.0};
  auto m = SpectralMultiplier::from_symbol(spec, [](const Point& xi) { return cplx(1.0, xi[0] + 2.0 * xi[1]); });
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const auto idx = spec.unflatten(i);
    if (idx[0] == 8 || idx[1] == 8) REQUIRE(m[i].imag() == 0.0);
  }
}

TEST_CASE("Bessel potential") {
  const GridSpec spec{2, 64, 16.0};
  const GridField f = noise(spec, 21);
  CHECK(relative_l2_error(bessel_potential(f, 0.0), f) < 1e-14);

  const GridField wave = plane_wave(spec, 5, -3);
  const double xi2 = std::pow(spec.frequency_step(), 2) * 34.0;
  const double s = 1.3;
  CHECK(relative_max_error(bessel_potential(wave, s), std::pow(1.0 + xi2, s / 2.0) * wave) < 1e-12);

  // Independent (1 - Laplacian) oracle on the spectral side.
  Spectrum lap = forward_transform(f);
  for (std::size_t i = 0; i < lap.values.size(); ++i) {
    const Point xi = spec.frequency(i);
    lap.values[i] *= 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
  }
  CHECK(relative_l2_error(bessel_potential(f, 2.0), inverse_transform(lap)) < 1e-12);

  for (double s1 : {-4.0, -1.5, 0.5, 2.0}) {
    for (double s2 : {-2.0, 1.0, 3.5}) {
      if (std::fabs(s1 + s2) > 4.0) continue;
      CHECK(relative_l2_error(bessel_potential(bessel_potential(f, s1), s2), bessel_potential(f, s1 + s2)) < 1e-11);
    }
  }
  CHECK_THROWS_AS(bessel_potential(f, std::nan("")), Error);
}

TEST_CASE("L^p quadrature") {
  const GridSpec spec{2, 32, 3.0};
  const cplx c(0.6, -0.8);
  const GridField constant = GridField::from_function(spec, [&](const Point&) { return 2.0 * c; });
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    CHECK(std::fabs(lp_norm(constant, p) - 2.0 * std::pow(9.0, 1.0 / p)) < 1e-12);
  }
  CHECK(lp_norm(GridField(spec), 3.0) == 0.0);

  const GridField f = noise(spec, 8);
  double direct = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) direct += std::norm(f[i]);
  direct = std::sqrt(direct * spec.cell_volume());
  CHECK(std::fabs(lp_norm(f, 2.0) - direct) < 1e-12 * direct);
  CHECK(std::fabs(spectral_l2_norm(forward_transform(f)) - direct) < 1e-12 * direct);
  CHECK(std::fabs(lp_norm(cplx(-3.0, 0.0) * f, 4.0) - 3.0 * lp_norm(f, 4.0)) < 1e-12 * lp_norm(f, 4.0));

  GridField bigger = f;
  for (std::size_t i = 0; i < f.size(); i += 3) bigger[i] *= 1.5;
  CHECK(lp_norm(bigger, 2.5) >= lp_norm(f, 2.5));

  CHECK_THROWS_AS(lp_norm(f, 1.0), Error);
  CHECK_THROWS_AS(lp_norm(f, std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("field files round trip bit for bit and reject damage") {
  const auto dir = std::filesystem::temp_directory_path() / "fiotk_field_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "f.fiof").string();

  const GridSpec spec{2, 16, 2.5};
  const GridField f = noise(spec, 1);
  write_field(path, f);
  const GridField g = read_field(path);
  CHECK(g.spec() == spec);
  CHECK(std::memcmp(g.data().data(), f.data().data(), f.size() * sizeof(cplx)) == 0);
  CHECK(std::filesystem::file_size(path) == 4 + 4 * 3 + 8 + f.size() * 16);

  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  try {
    read_field(path);
    FAIL("truncated file accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }

  {
    std::ofstream bad(path, std::ios::binary);
    bad << "NOPE and some more bytes to fill a header";
  }
  CHECK_THROWS_AS(read_field(path), Error);
  try {
    read_field((dir / "missing.fiof").string());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  std::filesystem::remove_all(dir);
}

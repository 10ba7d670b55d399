#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fiotk/dyadic.hpp"
#include "fiotk/fourier.hpp"
#include "fiotk/grid.hpp"

namespace testing_support {

using fiotk::cplx;
using fiotk::GridField;
using fiotk::GridSpec;

inline GridField noise(const GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  GridField f(spec);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(gauss(rng), gauss(rng));
  return f;
}

// e^{i k . x} for a signed lattice index k.
inline GridField plane_wave(const GridSpec& spec, int kx, int ky = 0, int kz = 0) {
  const double step = spec.frequency_step();
  return GridField::from_function(spec, [&](const fiotk::Point& x) {
    return std::exp(cplx(0.0, step * (kx * x[0] + ky * x[1] + kz * x[2])));
  });
}

inline double max_abs_diff(const GridField& a, const GridField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Random field whose spectrum is confined to lo <= |xi| <= hi.
inline GridField annulus_field(const GridSpec& spec, double lo, double hi, std::uint64_t seed) {
  return fiotk::apply_multiplier(noise(spec, seed), fiotk::SpectralMultiplier::radial(spec, [lo, hi](double r) {
                                   return r >= lo * (1 + 1e-12) && r <= hi * (1 - 1e-12) ? 1.0 : 0.0;
                                 }));
}

// Coefficient admissible for band k with width constant c and smoothing exponent gamma.
inline GridField compliant_coefficient(const GridSpec& spec, int k, std::uint64_t seed, double c = 0.25,
                                       double gamma = 0.75) {
  return annulus_field(spec, c * std::pow(2.0, 0.5 * (k - 2)), std::pow(2.0, k * gamma - 3.0), seed);
}

inline GridField band_piece(const GridSpec& spec, int k, std::uint64_t seed) {
  const fiotk::DyadicProfile prof;
  return fiotk::apply_multiplier(noise(spec, seed), fiotk::SpectralMultiplier::radial(spec, [&prof, k](double r) {
                                   return prof.chi(k, r);
                                 }));
}

// A cosine at |xi| = 2^k along the first axis.
inline GridField adversarial_coefficient(const GridSpec& spec, int k) {
  const int index = static_cast<int>(std::lround(std::ldexp(1.0, k) / spec.frequency_step()));
  GridField f = plane_wave(spec, index);
  f += plane_wave(spec, -index);
  return f;
}

}  // namespace testing_support

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fiotk/dyadic.hpp"
#include "fiotk/grid.hpp"

namespace fiotk {

// Equispaced directions on the unit circle with equal quadrature weights.
class DirectionSet {
 public:
  explicit DirectionSet(int count = 8);

  int count() const { return count_; }
  double weight() const { return 2.0 * kPi / count_; }
  double angle(int l) const { return 2.0 * kPi * l / count_; }
  Point direction(int l) const;

 private:
  int count_;
};

// Radial scale profile normalized so that the integral of its square
// against d sigma / sigma over (0, inf) equals one.
class CalderonProfile {
 public:
  CalderonProfile();
  double operator()(double radius) const;
  double constant() const { return constant_; }
  // Log-uniform trapezoid of Psi(sigma * radius)^2 d sigma / sigma.
  double reproducing_integral(double radius, double log_step = 1e-3) const;

 private:
  double constant_;
  double scale_;
};

// Normalization of the angular window at aperture parameter sigma (n = 2).
double c_sigma(double sigma, int nodes = 512);
// Full-circle trapezoid of the same integral about an arbitrary reference angle.
double c_sigma_circle(double sigma, int nodes, double reference_angle = 0.0);
// Tabulated c_sigma with cubic interpolation in log sigma.
double c_sigma_cached(double sigma);

// Directional cutoff phi_omega as a function of radius |zeta| and chord |zeta/|zeta| - omega|.
double phi_profile(double radius, double chord, int tau_nodes = 64);
double phi_direction(const Point& omega, const Point& zeta, int tau_nodes = 64);

struct FrameParams {
  int directions = 0;  // 0 selects 8 * ceil(sqrt(max frequency))
  int tau_nodes = 64;
};

struct AnisotropicEntry {
  std::array<int, 2> alpha{0, 0};
  double sup = 0.0;
  Point argmax{0.0, 0.0, 0.0};
};

struct GrowthEntry {
  std::array<int, 2> alpha{0, 0};
  bool radial_direction = false;
  double sup = 0.0;
};

class ParabolicFrame {
 public:
  explicit ParabolicFrame(const GridSpec& spec, FrameParams params = {});

  const GridSpec& spec() const { return spec_; }
  const DirectionSet& directions() const { return directions_; }
  const FrameParams& params() const { return params_; }
  int direction_count() const { return directions_.count(); }

  double phi(int l, const Point& zeta) const;
  // Lattice values of phi_l as sparse (storage index, value) pairs.
  struct Entry {
    std::uint32_t index;
    double value;
  };
  const std::vector<Entry>& lattice_phi(int l) const { return phi_lattice_[l]; }
  SpectralMultiplier phi_multiplier(int l) const;
  const std::vector<double>& reproducing_multiplier() const { return m_; }
  // The quadrature sum sum_l w_l phi_l on the lattice.
  const std::vector<double>& direction_sum() const { return denominator_; }

  std::vector<GridField> analyze(const GridField& f) const;
  GridField analyze_direction(const Spectrum& f, int l) const;
  GridField synthesize(const std::vector<GridField>& pieces) const;

  // Off-lattice evaluation of the sum sum_l w_l phi_l and of m.
  double direction_sum_at(const Point& zeta) const;
  double reproducing_at(const Point& zeta) const;

  std::vector<AnisotropicEntry> anisotropic_bound_check(int alpha_max) const;
  std::vector<GrowthEntry> growth_check() const;
  // Least-squares slope of log m against log radius along the first axis over [lo, hi].
  double reproducing_growth_exponent(double lo, double hi, int samples = 33) const;

 private:
  GridSpec spec_;
  FrameParams params_;
  DirectionSet directions_;
  std::vector<std::vector<Entry>> phi_lattice_;
  std::vector<double> denominator_;
  std::vector<double> m_;
};

GridField frame_synthesize(const std::vector<GridField>& pieces, const ParabolicFrame& frame);
std::vector<GridField> frame_analyze(const GridField& f, const ParabolicFrame& frame);

}  // namespace fiotk

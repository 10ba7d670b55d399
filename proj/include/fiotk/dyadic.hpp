#pragma once

#include <cstdint>
#include <vector>

#include "fiotk/fourier.hpp"
#include "fiotk/grid.hpp"

namespace fiotk {

// Smooth transition equal to 1 for t <= lo and 0 for t >= hi.
double smooth_step_down(double t, double lo, double hi);

// Radial bump profile: 1 on [0, 1/2], 0 on [1, inf), strictly decreasing between.
struct BumpProfile {
  double operator()(double t) const { return smooth_step_down(t, 0.5, 1.0); }
};

// Grid-independent dyadic cutoffs evaluated at a radius |xi|.
class DyadicProfile {
 public:
  explicit DyadicProfile(double eps = 0.125);

  double eps() const { return eps_; }
  // Low cap: 1 for t <= (1+eps)/2, 0 for t >= 1 - eps/2.
  double cap(double t) const;
  double psi(int j, double radius) const;
  double psi_tilde(int j, double radius) const;
  double chi(int j, double radius) const { return psi(j, radius); }
  // Radial range [lo, hi] outside of which psi_j vanishes.
  void support(int j, double& lo, double& hi) const;
  // The band index b with psi_b(radius) > 0 and psi_{b+1} = 1 - psi_b.
  int lower_band(double radius, double& weight) const;

  static double low_cutoff(double radius);

 private:
  double eps_;
};

class LittlewoodPaleyFamily {
 public:
  LittlewoodPaleyFamily(const GridSpec& spec, double eps = 0.125);

  const GridSpec& spec() const { return spec_; }
  const DyadicProfile& profile() const { return profile_; }
  double eps() const { return profile_.eps(); }
  int max_band() const { return max_band_; }
  int band_count() const { return max_band_ + 1; }

  double weight(int j, std::size_t flat) const;
  SpectralMultiplier multiplier(int j) const;
  SpectralMultiplier tilde_multiplier(int j) const;
  SpectralMultiplier chi_multiplier(int j) const { return multiplier(j); }
  SpectralMultiplier low_cutoff_multiplier() const;

  GridField project(const GridField& f, int j) const;
  std::vector<GridField> project_all(const GridField& f) const;
  std::vector<GridField> project_all(const Spectrum& f) const;

  // min over the lattice of (sum_k chi_k^2)^{1/2}.
  double square_function_floor() const { return square_floor_; }

 private:
  void check_band(int j) const;

  GridSpec spec_;
  DyadicProfile profile_;
  int max_band_ = 0;
  std::vector<std::int8_t> lower_;
  std::vector<double> lower_weight_;
  double square_floor_ = 1.0;
};

GridField lp_project(const GridField& f, int j, const LittlewoodPaleyFamily& fam);

double square_function_norm(const GridField& f, double s, double p,
                            const LittlewoodPaleyFamily& fam);

}  // namespace fiotk

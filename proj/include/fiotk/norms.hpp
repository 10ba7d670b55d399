#pragma once

#include <span>
#include <vector>

#include "fiotk/dyadic.hpp"
#include "fiotk/grid.hpp"
#include "fiotk/parabolic_frame.hpp"

namespace fiotk {

struct NormParams {
  double p = 2.0;
  double s = 0.0;
  double r = 1.0;

  void validate() const;
};

// (n-1)/2 * |1/p - 1/2|; p may be 1 or infinity.
double sobolev_s(double p, int n);

double classical_norm(const GridField& f, double s, double p);
double zygmund_norm(const GridField& f, double r, const LittlewoodPaleyFamily& fam);
// Per-band values 2^{jr} max_x |psi_j(D) f| for j = 0..J_max.
std::vector<double> zygmund_profile(const GridField& f, double r, const LittlewoodPaleyFamily& fam);

double hpfio_norm(const GridField& f, double s, double p, const ParabolicFrame& frame);
// One directional analysis shared by every exponent in ps.
std::vector<double> hpfio_norms(const GridField& f, double s, std::span<const double> ps,
                                const ParabolicFrame& frame);

struct ExponentBudget {
  int n = 2;
  double r = 0.0;
  double delta = 0.0;
  double p = 2.0;
  double s_p = 0.0;
  double tau = 0.0;
  double gamma = 0.5;
  double sigma = 0.0;
  double rho = 0.0;
  double eps_slack = 0.01;
  // Open interval for s with -(1-gamma) r < s + s_p < r.
  double s_lower = 0.0;
  double s_upper = 0.0;

  bool admissible(double s) const { return s > s_lower && s < s_upper; }
};

ExponentBudget budget(double r, double delta, double p, int n, double eps_slack = 0.01);

}  // namespace fiotk

#include "fiotk/norms.hpp"

#include <algorithm>
#include <cmath>

#include "fiotk/error.hpp"
#include "fiotk/fourier.hpp"

namespace fiotk {
namespace {

void check_p(double p) {
  require(std::isfinite(p) && p > 1.0, ErrorKind::Parameter, "p must lie in (1, inf)");
}

}  // namespace

void NormParams::validate() const {
  check_p(p);
  require(std::isfinite(s), ErrorKind::Parameter, "s must be finite");
  require(std::isfinite(r) && r > 0.0, ErrorKind::Parameter, "r must be positive");
}

double sobolev_s(double p, int n) {
  require(p >= 1.0, ErrorKind::Parameter, "p must be at least 1");
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  return 0.5 * (n - 1) * std::fabs(inv - 0.5);
}

double classical_norm(const GridField& f, double s, double p) {
  check_p(p);
  return lp_norm(bessel_potential(f, s), p);
}

std::vector<double> zygmund_profile(const GridField& f, double r,
                                    const LittlewoodPaleyFamily& fam) {
  require(std::isfinite(r) && r > 0.0, ErrorKind::Parameter, "r must be positive");
  auto bands = fam.project_all(f);
  std::vector<double> out(bands.size());
  for (std::size_t j = 0; j < bands.size(); ++j)
    out[j] = std::pow(2.0, static_cast<double>(j) * r) * bands[j].max_abs();
  return out;
}

double zygmund_norm(const GridField& f, double r, const LittlewoodPaleyFamily& fam) {
  auto profile = zygmund_profile(f, r, fam);
  return *std::max_element(profile.begin(), profile.end());
}

std::vector<double> hpfio_norms(const GridField& f, double s, std::span<const double> ps,
                                const ParabolicFrame& frame) {
  for (double p : ps) check_p(p);
  require(f.spec() == frame.spec(), ErrorKind::Dimension, "field grid does not match frame");
  const GridSpec& spec = f.spec();
  const Spectrum spectrum = forward_transform(f);

  Spectrum low{spec, spectrum.values};
  for (std::size_t i = 0; i < low.values.size(); ++i)
    low.values[i] *= DyadicProfile::low_cutoff(spec.frequency_norm(i));
  const GridField low_part = inverse_transform(low);

  std::vector<double> sums(ps.size(), 0.0);
  const double w = frame.directions().weight();
  std::vector<double> bessel(spec.count());
  for (std::size_t i = 0; i < bessel.size(); ++i) {
    const double r = spec.frequency_norm(i);
    bessel[i] = std::pow(1.0 + r * r, 0.5 * s);
  }
  Spectrum piece{spec, std::vector<cplx>(spec.count())};
  for (int l = 0; l < frame.direction_count(); ++l) {
    const auto& entries = frame.lattice_phi(l);
    if (entries.empty()) continue;
    std::fill(piece.values.begin(), piece.values.end(), cplx(0.0, 0.0));
    for (const auto& e : entries)
      piece.values[e.index] = e.value * bessel[e.index] * spectrum.values[e.index];
    const GridField g = inverse_transform(piece);
    for (std::size_t k = 0; k < ps.size(); ++k) sums[k] += w * std::pow(lp_norm(g, ps[k]), ps[k]);
  }
  std::vector<double> out(ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k)
    out[k] = lp_norm(low_part, ps[k]) + std::pow(sums[k], 1.0 / ps[k]);
  return out;
}

double hpfio_norm(const GridField& f, double s, double p, const ParabolicFrame& frame) {
  const double ps[1] = {p};
  return hpfio_norms(f, s, ps, frame)[0];
}

ExponentBudget budget(double r, double delta, double p, int n, double eps_slack) {
  require(std::isfinite(r) && r > 0.0, ErrorKind::Parameter, "r must be positive");
  require(delta >= 0.0 && delta <= 0.5, ErrorKind::Parameter, "delta must lie in [0, 1/2]");
  check_p(p);
  require(n >= 1, ErrorKind::Parameter, "dimension must be positive");
  require(eps_slack > 0.0, ErrorKind::Parameter, "eps_slack must be positive");

  ExponentBudget b;
  b.n = n;
  b.r = r;
  b.delta = delta;
  b.p = p;
  b.eps_slack = eps_slack;
  b.s_p = sobolev_s(p, n);
  const double critical = n - 1;
  const double sp = b.s_p;

  if (r > critical) {
    b.tau = 0.0;
  } else if (r == critical) {
    b.tau = sp == 0.0 ? 0.0 : eps_slack;
  } else {
    b.tau = 2.0 * sp * (1.0 - r / critical);
  }
  b.gamma = r >= critical ? 0.5 + 2.0 * sp / r : 0.5 + 2.0 * sp / critical;
  b.sigma = std::max(0.0, 2.0 * sp - (0.5 - delta) * r);

  const double gain = (0.5 - delta) * r;
  if (r < critical) {
    b.rho = std::max(0.0, b.tau - gain);
  } else if (r == critical && delta == 0.5) {
    b.rho = b.tau;
  } else {
    b.rho = 0.0;
  }

  b.s_lower = -(1.0 - b.gamma) * r - sp;
  b.s_upper = r - sp;
  return b;
}

}  // namespace fiotk

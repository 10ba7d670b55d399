#include "fiotk/dyadic.hpp"

#include <algorithm>
#include <cmath>

#include "fiotk/error.hpp"

namespace fiotk {
namespace {

double flat_exp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double smooth_step_down(double t, double lo, double hi) {
  if (t <= lo) return 1.0;
  if (t >= hi) return 0.0;
  const double s = (t - lo) / (hi - lo);
  const double a = flat_exp(1.0 - s);
  const double b = flat_exp(s);
  return a / (a + b);
}

DyadicProfile::DyadicProfile(double eps) : eps_(eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps < 0.25, ErrorKind::Parameter,
          "eps must lie in (0, 1/4)");
}

double DyadicProfile::cap(double t) const {
  return smooth_step_down(t, 0.5 * (1.0 + eps_), 1.0 - 0.5 * eps_);
}

double DyadicProfile::psi(int j, double radius) const {
  if (j < 0) return 0.0;
  if (j == 0) return cap(radius);
  return cap(std::ldexp(radius, -j)) - cap(std::ldexp(radius, 1 - j));
}

double DyadicProfile::psi_tilde(int j, double radius) const {
  if (j < 0) return 0.0;
  if (j == 0) return smooth_step_down(radius, 1.0, 2.0);
  const double t = std::ldexp(radius, 1 - j);
  const double rise = 1.0 - smooth_step_down(t, 0.5, 0.5 * (1.0 + eps_));
  return rise * smooth_step_down(t, 2.0 - eps_, 2.0);
}

void DyadicProfile::support(int j, double& lo, double& hi) const {
  if (j <= 0) {
    lo = 0.0;
    hi = 1.0 - 0.5 * eps_;
    return;
  }
  lo = std::ldexp(0.5 * (1.0 + eps_), j - 1);
  hi = std::ldexp(2.0 - eps_, j - 1);
}

int DyadicProfile::lower_band(double radius, double& weight) const {
  int b = 0;
  double lo = 0.0, hi = 0.0;
  support(0, lo, hi);
  while (radius >= hi) {
    ++b;
    support(b, lo, hi);
  }
  const double raw_lo = psi(b, radius);
  const double raw_hi = psi(b + 1, radius);
  const double total = raw_lo + raw_hi;
  require(total >= 1e-8, ErrorKind::Construction,
          "Littlewood-Paley normalization denominator vanishes");
  weight = raw_lo / total;
  return b;
}

double DyadicProfile::low_cutoff(double radius) { return BumpProfile{}(0.25 * radius); }

LittlewoodPaleyFamily::LittlewoodPaleyFamily(const GridSpec& spec, double eps)
    : spec_(spec), profile_(eps) {
  spec_.validate();
  max_band_ = static_cast<int>(std::ceil(std::log2(spec_.max_frequency()))) + 1;
  max_band_ = std::max(max_band_, 1);
  const std::size_t count = spec_.count();
  lower_.resize(count);
  lower_weight_.resize(count);
  square_floor_ = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    double w = 0.0;
    const int b = profile_.lower_band(spec_.frequency_norm(i), w);
    require(b <= max_band_, ErrorKind::Construction, "lattice frequency above the top band");
    lower_[i] = static_cast<std::int8_t>(b);
    lower_weight_[i] = w;
    square_floor_ = std::min(square_floor_, std::sqrt(w * w + (1.0 - w) * (1.0 - w)));
  }
}

void LittlewoodPaleyFamily::check_band(int j) const {
  require(j >= 0 && j <= max_band_, ErrorKind::Parameter, "band index out of range");
}

double LittlewoodPaleyFamily::weight(int j, std::size_t flat) const {
  const int b = lower_[flat];
  if (j == b) return lower_weight_[flat];
  if (j == b + 1) return 1.0 - lower_weight_[flat];
  return 0.0;
}

SpectralMultiplier LittlewoodPaleyFamily::multiplier(int j) const {
  check_band(j);
  std::vector<cplx> v(spec_.count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = weight(j, i);
  return SpectralMultiplier(spec_, std::move(v));
}

SpectralMultiplier LittlewoodPaleyFamily::tilde_multiplier(int j) const {
  check_band(j);
  const DyadicProfile& prof = profile_;
  return SpectralMultiplier::radial(spec_, [&prof, j](double r) { return prof.psi_tilde(j, r); });
}

SpectralMultiplier LittlewoodPaleyFamily::low_cutoff_multiplier() const {
  return SpectralMultiplier::radial(spec_, &DyadicProfile::low_cutoff);
}

GridField LittlewoodPaleyFamily::project(const GridField& f, int j) const {
  require(f.spec() == spec_, ErrorKind::Dimension, "field grid does not match family");
  check_band(j);
  Spectrum s = forward_transform(f);
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= weight(j, i);
  return inverse_transform(s);
}

std::vector<GridField> LittlewoodPaleyFamily::project_all(const Spectrum& f) const {
  require(f.spec == spec_, ErrorKind::Dimension, "spectrum grid does not match family");
  std::vector<GridField> out;
  out.reserve(band_count());
  Spectrum band{spec_, std::vector<cplx>(spec_.count())};
  for (int j = 0; j <= max_band_; ++j) {
    for (std::size_t i = 0; i < band.values.size(); ++i) band.values[i] = f.values[i] * weight(j, i);
    out.push_back(inverse_transform(band));
  }
  return out;
}

std::vector<GridField> LittlewoodPaleyFamily::project_all(const GridField& f) const {
  require(f.spec() == spec_, ErrorKind::Dimension, "field grid does not match family");
  return project_all(forward_transform(f));
}

GridField lp_project(const GridField& f, int j, const LittlewoodPaleyFamily& fam) {
  return fam.project(f, j);
}

double square_function_norm(const GridField& f, double s, double p,
                            const LittlewoodPaleyFamily& fam) {
  require(std::isfinite(p) && p > 1.0, ErrorKind::Parameter, "p must lie in (1, inf)");
  auto bands = fam.project_all(f);
  GridField square(f.spec());
  for (int k = 0; k < static_cast<int>(bands.size()); ++k) {
    const double w = std::pow(4.0, k * s);
    for (std::size_t i = 0; i < square.size(); ++i)
      square[i] += w * std::norm(bands[k][i]);
  }
  for (std::size_t i = 0; i < square.size(); ++i) square[i] = std::sqrt(square[i].real());
  return lp_norm(square, p);
}

}  // namespace fiotk

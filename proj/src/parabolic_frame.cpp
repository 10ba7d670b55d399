#include "fiotk/parabolic_frame.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "fiotk/error.hpp"
#include "fiotk/fourier.hpp"

namespace fiotk {
namespace {

constexpr double kSigmaTableLow = 1e-6;
constexpr double kSigmaSaturation = 16.0;
constexpr int kSigmaTableIntervals = 8192;

double window(double t) { return BumpProfile{}(t); }

class SigmaTable {
 public:
  SigmaTable() {
    lo_ = std::log(kSigmaTableLow);
    const double hi = std::log(kSigmaSaturation);
    step_ = (hi - lo_) / kSigmaTableIntervals;
    log_values_.resize(kSigmaTableIntervals + 1);
    for (int i = 0; i <= kSigmaTableIntervals; ++i)
      log_values_[i] = std::log(c_sigma(std::exp(lo_ + i * step_)));
  }

  double operator()(double sigma) const {
    const double x = (std::log(sigma) - lo_) / step_;
    int i = static_cast<int>(std::floor(x)) - 1;
    i = std::clamp(i, 0, kSigmaTableIntervals - 3);
    const double t = x - i;
    // Cubic Lagrange interpolation through nodes i..i+3 at local positions 0..3.
    const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    const double l1 = t * (t - 2) * (t - 3) / 2.0;
    const double l2 = -t * (t - 1) * (t - 3) / 2.0;
    const double l3 = t * (t - 1) * (t - 2) / 6.0;
    return std::exp(l0 * log_values_[i] + l1 * log_values_[i + 1] + l2 * log_values_[i + 2] +
                    l3 * log_values_[i + 3]);
  }

 private:
  double lo_ = 0.0;
  double step_ = 0.0;
  std::vector<double> log_values_;
};

const SigmaTable& sigma_table() {
  static const SigmaTable table;
  return table;
}

const CalderonProfile& calderon() {
  static const CalderonProfile profile;
  return profile;
}

struct TauRule {
  std::vector<double> s;
  std::vector<double> weight;  // trapezoid weight in log s times Psi(s)
};

TauRule tau_rule(double radius, int tau_nodes) {
  TauRule rule;
  const double hi = std::min(2.0, 4.0 * radius);
  if (hi <= 0.5) return rule;
  const double a = std::log(0.5), b = std::log(hi);
  const double h = (b - a) / tau_nodes;
  rule.s.resize(tau_nodes + 1);
  rule.weight.resize(tau_nodes + 1);
  for (int t = 0; t <= tau_nodes; ++t) {
    const double s = std::exp(a + t * h);
    const double w = (t == 0 || t == tau_nodes) ? 0.5 * h : h;
    rule.s[t] = s;
    rule.weight[t] = w * calderon()(s) * c_sigma_cached(s / radius);
  }
  return rule;
}

double evaluate_rule(const TauRule& rule, double radius, double chord) {
  double acc = 0.0;
  for (std::size_t t = 0; t < rule.s.size(); ++t) {
    if (rule.weight[t] == 0.0) continue;
    acc += rule.weight[t] * window(chord * std::sqrt(radius / rule.s[t]));
  }
  return acc;
}

// Largest chord at which phi can be nonzero for a given radius.
double chord_limit(double radius) { return std::sqrt(std::min(2.0, 4.0 * radius) / radius); }

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a - kPi;
}

}  // namespace

DirectionSet::DirectionSet(int count) : count_(count) {
  require(count >= 1, ErrorKind::Parameter, "direction count must be positive");
}

Point DirectionSet::direction(int l) const {
  return Point{std::cos(angle(l)), std::sin(angle(l)), 0.0};
}

CalderonProfile::CalderonProfile() {
  const int nodes = 4096;
  double acc = 0.0;
  for (int i = 0; i <= nodes; ++i) {
    const double x = 0.5 + 0.5 * i / nodes;
    const double u = window(x);
    acc += ((i == 0 || i == nodes) ? 0.5 : 1.0) * u * u;
  }
  acc *= 0.5 / nodes;
  constant_ = std::log(2.0) * (1.0 + 2.0 * acc);
  scale_ = 1.0 / std::sqrt(constant_);
}

double CalderonProfile::operator()(double radius) const {
  if (radius <= 0.5 || radius >= 2.0) return 0.0;
  return scale_ * window(std::fabs(std::log2(radius)));
}

double CalderonProfile::reproducing_integral(double radius, double log_step) const {
  require(radius > 0.0, ErrorKind::Parameter, "radius must be positive");
  const double a = std::log(0.5 / radius), b = std::log(2.0 / radius);
  const int steps = static_cast<int>(std::ceil((b - a) / log_step));
  const double h = (b - a) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double v = (*this)(std::exp(a + i * h) * radius);
    acc += ((i == 0 || i == steps) ? 0.5 : 1.0) * v * v;
  }
  return acc * h;
}

double c_sigma(double sigma, int nodes) {
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::Parameter, "sigma must be positive");
  require(nodes >= 8, ErrorKind::Parameter, "too few quadrature nodes");
  const double root = std::sqrt(sigma);
  const double plateau = 2.0 * std::asin(std::min(1.0, root / 4.0));
  const double edge = root >= 2.0 ? kPi : 2.0 * std::asin(root / 2.0);
  double arc = 0.0;
  if (edge > plateau) {
    const double h = (edge - plateau) / nodes;
    for (int i = 0; i <= nodes; ++i) {
      const double theta = plateau + i * h;
      const double u = window(2.0 * std::sin(0.5 * theta) / root);
      arc += ((i == 0 || i == nodes) ? 0.5 : 1.0) * u * u;
    }
    arc *= h;
  }
  const double integral = 2.0 * (plateau + arc);
  require(integral >= 1e-14, ErrorKind::Resolution, "angular window not resolved");
  return 1.0 / std::sqrt(integral);
}

double c_sigma_circle(double sigma, int nodes, double reference_angle) {
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::Parameter, "sigma must be positive");
  const double root = std::sqrt(sigma);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = 2.0 * kPi * i / nodes - reference_angle;
    const double u = window(2.0 * std::fabs(std::sin(0.5 * theta)) / root);
    acc += u * u;
  }
  const double integral = acc * 2.0 * kPi / nodes;
  require(integral >= 1e-14, ErrorKind::Resolution, "angular window not resolved");
  return 1.0 / std::sqrt(integral);
}

double c_sigma_cached(double sigma) {
  if (sigma >= kSigmaSaturation) return 1.0 / std::sqrt(2.0 * kPi);
  if (sigma < kSigmaTableLow) return c_sigma(sigma);
  return sigma_table()(sigma);
}

double phi_profile(double radius, double chord, int tau_nodes) {
  if (radius < 0.125) return 0.0;
  if (chord >= chord_limit(radius)) return 0.0;
  return evaluate_rule(tau_rule(radius, tau_nodes), radius, chord);
}

double phi_direction(const Point& omega, const Point& zeta, int tau_nodes) {
  const double r = std::hypot(zeta[0], zeta[1]);
  if (r == 0.0) return 0.0;
  const double chord = std::hypot(zeta[0] / r - omega[0], zeta[1] / r - omega[1]);
  return phi_profile(r, chord, tau_nodes);
}

ParabolicFrame::ParabolicFrame(const GridSpec& spec, FrameParams params)
    : spec_(spec), params_(params), directions_(1) {
  spec_.validate();
  require(spec_.dim == 2, ErrorKind::Parameter, "the directional frame supports n = 2 only");
  require(params_.tau_nodes >= 8, ErrorKind::Parameter, "tau quadrature needs at least 8 nodes");
  if (params_.directions <= 0)
    params_.directions = 8 * static_cast<int>(std::ceil(std::sqrt(spec_.max_frequency())));
  directions_ = DirectionSet(params_.directions);
  const int count = directions_.count();
  const double spacing = 2.0 * kPi / count;

  phi_lattice_.assign(count, {});
  const std::size_t total = spec_.count();
  denominator_.assign(total, 0.0);
  m_.assign(total, 0.0);

  for (std::size_t i = 0; i < total; ++i) {
    const Point xi = spec_.frequency(i);
    const double r = std::hypot(xi[0], xi[1]);
    if (r < 0.125) continue;
    const TauRule rule = tau_rule(r, params_.tau_nodes);
    if (rule.s.empty()) continue;
    const double limit = chord_limit(r);
    const double theta = std::atan2(xi[1], xi[0]);
    const double half = limit >= 2.0 ? kPi : 2.0 * std::asin(0.5 * limit);
    int first = static_cast<int>(std::ceil((theta - half) / spacing));
    int last = static_cast<int>(std::floor((theta + half) / spacing));
    if (last - first + 1 > count) {
      first = 0;
      last = count - 1;
    }
    double sum = 0.0;
    for (int j = first; j <= last; ++j) {
      const int l = ((j % count) + count) % count;
      const double chord = 2.0 * std::fabs(std::sin(0.5 * wrap_angle(theta - directions_.angle(l))));
      if (chord >= limit) continue;
      const double v = evaluate_rule(rule, r, chord);
      if (v == 0.0) continue;
      phi_lattice_[l].push_back(Entry{static_cast<std::uint32_t>(i), v});
      sum += v;
    }
    denominator_[i] = sum * directions_.weight();
    if (r >= 0.5) {
      require(denominator_[i] >= 1e-10, ErrorKind::Construction,
              "insufficient directions: direction sum vanishes at |xi| = " + std::to_string(r));
      m_[i] = 1.0 / denominator_[i];
    }
  }
  for (auto& list : phi_lattice_)
    std::sort(list.begin(), list.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
}

double ParabolicFrame::phi(int l, const Point& zeta) const {
  return phi_direction(directions_.direction(l), zeta, params_.tau_nodes);
}

SpectralMultiplier ParabolicFrame::phi_multiplier(int l) const {
  std::vector<cplx> v(spec_.count(), cplx(0.0, 0.0));
  for (const auto& e : phi_lattice_.at(l)) v[e.index] = e.value;
  return SpectralMultiplier(spec_, std::move(v));
}

GridField ParabolicFrame::analyze_direction(const Spectrum& f, int l) const {
  require(f.spec == spec_, ErrorKind::Dimension, "spectrum grid does not match frame");
  Spectrum piece{spec_, std::vector<cplx>(spec_.count(), cplx(0.0, 0.0))};
  for (const auto& e : phi_lattice_.at(l)) piece.values[e.index] = e.value * f.values[e.index];
  return inverse_transform(piece);
}

std::vector<GridField> ParabolicFrame::analyze(const GridField& f) const {
  require(f.spec() == spec_, ErrorKind::Dimension, "field grid does not match frame");
  const Spectrum spectrum = forward_transform(f);
  std::vector<GridField> out;
  out.reserve(directions_.count());
  for (int l = 0; l < directions_.count(); ++l) out.push_back(analyze_direction(spectrum, l));
  return out;
}

GridField ParabolicFrame::synthesize(const std::vector<GridField>& pieces) const {
  require(static_cast<int>(pieces.size()) == directions_.count(), ErrorKind::Dimension,
          "collection size does not match the direction count");
  Spectrum acc{spec_, std::vector<cplx>(spec_.count(), cplx(0.0, 0.0))};
  for (const auto& g : pieces) {
    require(g.spec() == spec_, ErrorKind::Dimension, "collection member grid mismatch");
    const Spectrum s = forward_transform(g);
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += s.values[i];
  }
  const double w = directions_.weight();
  for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] *= w * m_[i];
  return inverse_transform(acc);
}

double ParabolicFrame::direction_sum_at(const Point& zeta) const {
  double sum = 0.0;
  for (int l = 0; l < directions_.count(); ++l) sum += phi(l, zeta);
  return sum * directions_.weight();
}

double ParabolicFrame::reproducing_at(const Point& zeta) const {
  if (std::hypot(zeta[0], zeta[1]) < 0.5) return 0.0;
  const double d = direction_sum_at(zeta);
  require(d >= 1e-10, ErrorKind::Construction, "insufficient directions off the lattice");
  return 1.0 / d;
}

namespace {

// Centered finite-difference weights for derivative orders 0..3.
struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;
};

Stencil stencil(int order, double h) {
  switch (order) {
    case 0: return {{0}, {1.0}};
    case 1: return {{-1, 1}, {-0.5 / h, 0.5 / h}};
    case 2: return {{-1, 0, 1}, {1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h)}};
    default: {
      const double c = 1.0 / (2.0 * h * h * h);
      return {{-2, -1, 1, 2}, {-c, 2.0 * c, -2.0 * c, c}};
    }
  }
}

template <typename F>
double mixed_derivative(const F& fn, const Point& at, std::array<int, 2> alpha, double h) {
  const Stencil sx = stencil(alpha[0], h), sy = stencil(alpha[1], h);
  double acc = 0.0;
  for (std::size_t a = 0; a < sx.offsets.size(); ++a)
    for (std::size_t b = 0; b < sy.offsets.size(); ++b) {
      Point p = at;
      p[0] += sx.offsets[a] * h;
      p[1] += sy.offsets[b] * h;
      acc += sx.weights[a] * sy.weights[b] * fn(p);
    }
  return acc;
}

std::vector<std::array<int, 2>> multi_indices(int max_order) {
  std::vector<std::array<int, 2>> out;
  for (int total = 0; total <= max_order; ++total)
    for (int a = total; a >= 0; --a) out.push_back({a, total - a});
  return out;
}

}  // namespace

std::vector<AnisotropicEntry> ParabolicFrame::anisotropic_bound_check(int alpha_max) const {
  require(alpha_max >= 0 && alpha_max <= 3, ErrorKind::Parameter, "alpha_max must lie in [0, 3]");
  const int tau = params_.tau_nodes;
  const Point e1{1.0, 0.0, 0.0};
  auto weighted = [&](const Point& xi) {
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    return std::pow(1.0 + r2, -0.125) * phi_direction(e1, xi, tau);
  };
  const double r_lo = 0.25, r_hi = spec_.max_frequency();
  const int radii = 48, angles = 41;
  const double h = 1e-3;
  std::vector<AnisotropicEntry> out;
  for (const auto& alpha : multi_indices(alpha_max)) {
    AnisotropicEntry entry;
    entry.alpha = alpha;
    for (int i = 0; i < radii; ++i) {
      const double r = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (radii - 1));
      const double limit = chord_limit(std::max(r, 0.125));
      const double half = 1.05 * (limit >= 2.0 ? kPi : 2.0 * std::asin(0.5 * limit));
      for (int a = 0; a < angles; ++a) {
        const double theta = std::min(kPi, half) * (2.0 * a / (angles - 1) - 1.0);
        const Point xi{r * std::cos(theta), r * std::sin(theta), 0.0};
        const double d = mixed_derivative(weighted, xi, alpha, h);
        const double v =
            std::fabs(std::pow(xi[0], alpha[0]) * std::pow(xi[1], alpha[1]) * d);
        if (v > entry.sup) {
          entry.sup = v;
          entry.argmax = xi;
        }
      }
    }
    out.push_back(entry);
  }
  return out;
}

std::vector<GrowthEntry> ParabolicFrame::growth_check() const {
  const int tau = params_.tau_nodes;
  const Point e1{1.0, 0.0, 0.0};
  auto fn = [&](const Point& z) { return phi_direction(e1, z, tau); };
  const double r_lo = 4.0, r_hi = std::max(4.0, 0.5 * spec_.max_frequency());
  const int radii = 24, angles = 33;
  const double h = 1e-3;
  std::vector<GrowthEntry> out;
  auto indices = multi_indices(2);
  for (const auto& alpha : indices) {
    GrowthEntry entry;
    entry.alpha = alpha;
    out.push_back(entry);
  }
  GrowthEntry radial;
  radial.alpha = {1, 0};
  radial.radial_direction = true;
  out.push_back(radial);
  for (int i = 0; i < radii; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, radii > 1 ? static_cast<double>(i) / (radii - 1) : 0.0);
    const double half = 1.05 * 2.0 * std::asin(std::min(1.0, 0.5 * chord_limit(r)));
    for (int a = 0; a < angles; ++a) {
      const double theta = half * (2.0 * a / (angles - 1) - 1.0);
      const Point z{r * std::cos(theta), r * std::sin(theta), 0.0};
      for (auto& entry : out) {
        const double d = std::fabs(mixed_derivative(fn, z, entry.alpha, h));
        const double order = entry.radial_direction ? 1.0 : 0.5 * (entry.alpha[0] + entry.alpha[1]);
        entry.sup = std::max(entry.sup, d * std::pow(r, order - 0.25));
      }
    }
  }
  return out;
}

double ParabolicFrame::reproducing_growth_exponent(double lo, double hi, int samples) const {
  require(lo > 0.5 && hi > lo && samples >= 2, ErrorKind::Parameter, "invalid fit range");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / (samples - 1));
    const double x = std::log(r);
    const double y = std::log(reproducing_at(Point{r, 0.0, 0.0}));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = samples;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GridField frame_synthesize(const std::vector<GridField>& pieces, const ParabolicFrame& frame) {
  return frame.synthesize(pieces);
}

std::vector<GridField> frame_analyze(const GridField& f, const ParabolicFrame& frame) {
  return frame.analyze(f);
}

}  // namespace fiotk

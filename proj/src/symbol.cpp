#include "fiotk/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fiotk/error.hpp"
#include "fiotk/fourier.hpp"
#include "fiotk/norms.hpp"

namespace fiotk {

void SymbolClass::validate() const {
  require(std::isfinite(r) && r > 0.0, ErrorKind::Parameter, "symbol regularity r must be positive");
  require(std::isfinite(m), ErrorKind::Parameter, "symbol order must be finite");
  require(delta >= 0.0 && delta <= 1.0, ErrorKind::Parameter, "symbol type delta must lie in [0, 1]");
}

DenseSymbol::DenseSymbol(const GridSpec& spec, SymbolClass cls, Evaluator evaluator,
                         std::string name)
    : spec_(spec),
      class_(cls),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      name_(std::move(name)) {
  spec_.validate();
  class_.validate();
}

void DenseSymbol::slice(const Point& eta, std::span<cplx> out) const {
  require(out.size() == spec_.count(), ErrorKind::Dimension, "slice buffer size mismatch");
  if (norm(eta, spec_.dim) > coverage_)
    fail(ErrorKind::Coverage, "symbol " + name_ + " does not cover |eta| = " +
                                  std::to_string(norm(eta, spec_.dim)));
  (*evaluator_)(eta, out);
  for (const auto& z : out)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorKind::Coverage, "symbol " + name_ + " produced a non-finite value");
}

GridField DenseSymbol::slice(const Point& eta) const {
  GridField out(spec_);
  slice(eta, out.values());
  return out;
}

DenseSymbol DenseSymbol::with_coverage(double radius) const {
  DenseSymbol copy = *this;
  copy.coverage_ = radius;
  return copy;
}

DenseSymbol DenseSymbol::with_class(SymbolClass cls) const {
  cls.validate();
  DenseSymbol copy = *this;
  copy.class_ = cls;
  return copy;
}

SeparableSymbol::SeparableSymbol(const GridSpec& spec, SymbolClass cls, std::vector<Term> terms,
                                 double eps, std::string name)
    : spec_(spec), class_(cls), terms_(std::move(terms)), profile_(eps), name_(std::move(name)) {
  spec_.validate();
  class_.validate();
  for (const auto& t : terms_) {
    require(t.band >= 0, ErrorKind::Parameter, "band index must be nonnegative");
    require(t.coefficient.spec() == spec_, ErrorKind::Dimension, "coefficient grid mismatch");
  }
}

DenseSymbol SeparableSymbol::densify() const {
  auto terms = std::make_shared<const std::vector<Term>>(terms_);
  const DyadicProfile prof = profile_;
  const int dim = spec_.dim;
  auto eval = [terms, prof, dim](const Point& eta, std::span<cplx> out) {
    std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
    const double r = norm(eta, dim);
    for (const auto& t : *terms) {
      const double w = prof.chi(t.band, r);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * t.coefficient[i];
    }
  };
  return DenseSymbol(spec_, class_, eval, name_);
}

SeparableSymbol::Bounds SeparableSymbol::bounds(const LittlewoodPaleyFamily& fam) const {
  Bounds b;
  for (const auto& t : terms_) {
    const double sup = t.coefficient.max_abs();
    const double zyg = std::pow(2.0, -t.band * class_.r * class_.delta) *
                       zygmund_norm(t.coefficient, class_.r, fam);
    b.sup_norm = std::max(b.sup_norm, sup);
    b.zygmund_part = std::max(b.zygmund_part, zyg);
    b.total = std::max(b.total, sup + zyg);
  }
  return b;
}

double SeparableSymbol::support_violation(double c, double gamma) const {
  double worst = 0.0;
  for (const auto& t : terms_) {
    const Spectrum s = forward_transform(t.coefficient);
    const double lo = c * std::pow(2.0, 0.5 * (t.band - 2));
    const double hi = std::pow(2.0, t.band * gamma - 3.0);
    double peak = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double mag = std::abs(s.values[i]);
      peak = std::max(peak, mag);
      const double r = spec_.frequency_norm(i);
      if (r < lo * (1 - 1e-12) || r > hi * (1 + 1e-12)) outside = std::max(outside, mag);
    }
    if (peak > 0.0) worst = std::max(worst, outside / peak);
  }
  return worst;
}

DenseSymbol identity_symbol(const GridSpec& spec) {
  return DenseSymbol(
      spec, SymbolClass{1.0, 0.0, 0.0},
      [](const Point&, std::span<cplx> out) { std::fill(out.begin(), out.end(), cplx(1.0, 0.0)); },
      "identity");
}

DenseSymbol bessel_symbol(const GridSpec& spec, double order) {
  const int dim = spec.dim;
  return DenseSymbol(
      spec, SymbolClass{1.0, order, 0.0},
      [order, dim](const Point& eta, std::span<cplx> out) {
        const double r = norm(eta, dim);
        std::fill(out.begin(), out.end(), cplx(std::pow(1.0 + r * r, 0.5 * order), 0.0));
      },
      "multiplier_bessel");
}

DenseSymbol multiplication_symbol(const GridField& b, double r) {
  auto coeff = std::make_shared<const GridField>(b);
  return DenseSymbol(
      b.spec(), SymbolClass{r, 0.0, 0.0},
      [coeff](const Point&, std::span<cplx> out) {
        std::copy(coeff->values().begin(), coeff->values().end(), out.begin());
      },
      "multiplication");
}

DenseSymbol weighted_sum_symbol(const std::vector<GridField>& coefficients,
                                const std::vector<double>& orders, SymbolClass cls) {
  require(!coefficients.empty() && coefficients.size() == orders.size(), ErrorKind::InvalidInput,
          "coefficient and order lists must be nonempty and of equal length");
  const GridSpec spec = coefficients.front().spec();
  for (const auto& c : coefficients)
    require(c.spec() == spec, ErrorKind::Dimension, "coefficient grid mismatch");
  auto coeffs = std::make_shared<const std::vector<GridField>>(coefficients);
  const int dim = spec.dim;
  return DenseSymbol(
      spec, cls,
      [coeffs, orders, dim](const Point& eta, std::span<cplx> out) {
        std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
        const double r2 = norm(eta, dim) * norm(eta, dim);
        for (std::size_t t = 0; t < coeffs->size(); ++t) {
          const double w = std::pow(1.0 + r2, 0.5 * orders[t]);
          const auto& c = (*coeffs)[t];
          for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * c[i];
        }
      },
      "weighted_sum");
}

SeparableSymbol rough_chirp(const GridSpec& spec, const RoughChirpOptions& options) {
  spec.validate();
  SymbolClass cls{options.r, 0.0, options.delta};
  cls.validate();
  LittlewoodPaleyFamily fam(spec, options.eps);
  const int top = options.max_band >= 0 ? options.max_band : fam.max_band();
  const double step = spec.frequency_step();
  const double ceiling = 0.5 * spec.axis_nyquist();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  std::vector<SeparableSymbol::Term> terms;
  for (int k = 0; k <= top; ++k) {
    const double centre = k * options.delta;
    const int octaves = static_cast<int>(std::floor(centre)) + 2;
    GridField w(spec);
    bool any = false;
    for (int j = 1; j <= octaves; ++j) {
      const double amplitude = std::min(1.0, std::pow(2.0, (centre - j) * options.r));
      const double theta = angle(rng), phase = angle(rng);
      const double radius = std::ldexp(1.03, j - 1);
      Point xi{0.0, 0.0, 0.0};
      Point dir{std::cos(theta), std::sin(theta), 0.0};
      if (spec.dim == 1) dir = Point{std::cos(theta) >= 0 ? 1.0 : -1.0, 0.0, 0.0};
      if (spec.dim == 3) dir = Point{std::cos(theta) * std::cos(phase), std::sin(theta) * std::cos(phase), std::sin(phase)};
      bool zero = true;
      for (int d = 0; d < spec.dim; ++d) {
        xi[d] = std::round(radius * dir[d] / step) * step;
        if (xi[d] != 0.0) zero = false;
        if (std::fabs(xi[d]) > ceiling) zero = true;
      }
      if (zero) continue;
      any = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const Point x = spec.position(i);
        double arg = phase;
        for (int d = 0; d < spec.dim; ++d) arg += xi[d] * x[d];
        w[i] += amplitude * std::cos(arg);
      }
    }
    if (!any) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0;
    }
    const double scale = w.max_abs() + std::pow(2.0, -k * options.r * options.delta) *
                                           zygmund_norm(w, options.r, fam);
    w *= 1.0 / scale;
    terms.push_back({k, std::move(w)});
  }
  return SeparableSymbol(spec, cls, std::move(terms), options.eps, "rough_chirp");
}

}  // namespace fiotk

#include "fiotk/symbol_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fiotk/error.hpp"
#include "fiotk/fourier.hpp"
#include "fiotk/norms.hpp"

namespace fiotk {
namespace {

std::vector<MultiIndex> multi_indices(int dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int total = 0; total <= max_order; ++total) {
    for (int a = total; a >= 0; --a) {
      if (dim == 1) {
        if (a == total) out.push_back({a, 0, 0});
        continue;
      }
      for (int b = total - a; b >= 0; --b) {
        const int c = total - a - b;
        if (dim == 2 && c != 0) continue;
        out.push_back({a, b, c});
      }
    }
  }
  return out;
}

struct Stencil1d {
  std::vector<int> offsets;
  std::vector<double> weights;
};

Stencil1d stencil(int order, double h) {
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

double japanese(const Point& eta, int dim) {
  const double r = norm(eta, dim);
  return std::sqrt(1.0 + r * r);
}

std::vector<Point> band_samples(int band, int dim, int angles, double eps) {
  std::vector<double> radii;
  if (band == 0) {
    radii = {0.0, 0.25, 0.5, 0.75};
  } else {
    for (double t : {0.6, 0.8, 1.0, 1.3, 1.7}) radii.push_back(std::ldexp(t, band - 1));
  }
  (void)eps;
  std::vector<Point> out;
  for (double r : radii) {
    if (dim == 1) {
      out.push_back({r, 0.0, 0.0});
      if (r > 0.0) out.push_back({-r, 0.0, 0.0});
      continue;
    }
    const int count = r == 0.0 ? 1 : angles;
    for (int a = 0; a < count; ++a) {
      const double theta = (a + 0.25) * 2.0 * kPi / angles;
      out.push_back({r * std::cos(theta), r * std::sin(theta), 0.0});
    }
  }
  return out;
}

}  // namespace

std::vector<SeminormEntry> estimate_seminorms(const DenseSymbol& a, int alpha_max,
                                              const LittlewoodPaleyFamily& fam,
                                              const SeminormOptions& options) {
  require(alpha_max >= 0 && alpha_max <= 3, ErrorKind::Parameter, "alpha_max must lie in [0, 3]");
  const GridSpec& spec = a.spec();
  require(fam.spec() == spec, ErrorKind::Dimension, "family grid does not match symbol");
  const SymbolClass& cls = a.symbol_class();
  const DyadicProfile& prof = fam.profile();

  int band_hi = options.band_hi;
  if (band_hi < 0) {
    band_hi = 0;
    double lo = 0, hi = 0;
    for (int k = 1;; ++k) {
      prof.support(k, lo, hi);
      if (hi > spec.axis_nyquist()) break;
      band_hi = k;
    }
  }
  require(options.band_lo >= 0 && options.band_lo <= band_hi, ErrorKind::Parameter,
          "empty band range");
  const double step = spec.frequency_step();
  for (int k = options.band_lo; k <= band_hi; ++k) {
    double lo = 0, hi = 0;
    prof.support(k, lo, hi);
    const int first = k == 0 ? 0 : static_cast<int>(std::floor(lo / step)) + 1;
    const int last = static_cast<int>(std::ceil(hi / step)) - 1;
    if (last - first + 1 < 5)
      fail(ErrorKind::Resolution, "band " + std::to_string(k) + " has fewer than 5 samples per axis");
  }

  const auto alphas = multi_indices(spec.dim, alpha_max);
  std::vector<SeminormEntry> table(alphas.size());
  for (std::size_t q = 0; q < alphas.size(); ++q) table[q].alpha = alphas[q];

  for (int k = options.band_lo; k <= band_hi; ++k) {
    for (const Point& eta : band_samples(k, spec.dim, options.angles, prof.eps())) {
      const double weight = japanese(eta, spec.dim);
      const double h = 2e-3 * weight;
      std::map<MultiIndex, GridField> cache;
      auto slice_at = [&](const MultiIndex& off) -> const GridField& {
        auto it = cache.find(off);
        if (it != cache.end()) return it->second;
        Point p = eta;
        for (int d = 0; d < spec.dim; ++d) p[d] += off[d] * h;
        return cache.emplace(off, a.slice(p)).first->second;
      };
      for (std::size_t q = 0; q < alphas.size(); ++q) {
        const MultiIndex& alpha = alphas[q];
        std::array<Stencil1d, 3> st{stencil(alpha[0], h), stencil(alpha[1], h), stencil(alpha[2], h)};
        GridField deriv(spec);
        std::array<std::size_t, 3> ext{1, 1, 1};
        for (int d = 0; d < spec.dim; ++d) ext[d] = st[d].offsets.size();
        for (std::size_t i0 = 0; i0 < ext[0]; ++i0)
          for (std::size_t i1 = 0; i1 < ext[1]; ++i1)
            for (std::size_t i2 = 0; i2 < ext[2]; ++i2) {
              MultiIndex off{st[0].offsets[i0], spec.dim > 1 ? st[1].offsets[i1] : 0,
                             spec.dim > 2 ? st[2].offsets[i2] : 0};
              double w = st[0].weights[i0];
              if (spec.dim > 1) w *= st[1].weights[i1];
              if (spec.dim > 2) w *= st[2].weights[i2];
              const GridField& s = slice_at(off);
              for (std::size_t i = 0; i < deriv.size(); ++i) deriv[i] += w * s[i];
            }
        const int order = alpha[0] + alpha[1] + alpha[2];
        const double pw = deriv.max_abs() * std::pow(weight, order - cls.m);
        const double zy = zygmund_norm(deriv, cls.r, fam) *
                          std::pow(weight, order - cls.m - cls.r * cls.delta);
        table[q].pointwise = std::max(table[q].pointwise, pw);
        table[q].zygmund = std::max(table[q].zygmund, zy);
      }
    }
  }
  for (auto& e : table) e.value = std::max(e.pointwise, e.zygmund);
  return table;
}

SmoothingSplit smooth_split(const DenseSymbol& a, double gamma, double eps) {
  const SymbolClass cls = a.symbol_class();
  require(std::isfinite(gamma) && gamma >= cls.delta, ErrorKind::Parameter,
          "gamma must be at least the symbol type delta");
  require(gamma <= 1.0, ErrorKind::Parameter, "gamma must not exceed 1");
  const DyadicProfile prof(eps);
  const GridSpec spec = a.spec();

  // Spectral weight sum_k psi_k(eta) phi(2^{-gamma k} xi) (sharp) or its complement (flat).
  auto make = [a, gamma, prof, spec](bool sharp) {
    return [a, gamma, prof, spec, sharp](const Point& eta, std::span<cplx> out) {
      a.slice(eta, out);
      double w_lo = 0.0;
      const int b = prof.lower_band(norm(eta, spec.dim), w_lo);
      Spectrum s = forward_transform(GridField(spec, std::vector<cplx>(out.begin(), out.end())));
      const double scale_lo = std::pow(2.0, -gamma * b);
      const double scale_hi = std::pow(2.0, -gamma * (b + 1));
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double r = spec.frequency_norm(i);
        const double low = w_lo * BumpProfile{}(scale_lo * r) +
                           (1.0 - w_lo) * BumpProfile{}(scale_hi * r);
        s.values[i] *= sharp ? low : 1.0 - low;
      }
      const GridField g = inverse_transform(s);
      std::copy(g.values().begin(), g.values().end(), out.begin());
    };
  };
  SymbolClass sharp_cls{cls.r, cls.m, gamma};
  SymbolClass flat_cls{cls.r, cls.m - (gamma - cls.delta) * cls.r, gamma};
  return SmoothingSplit{gamma,
                        DenseSymbol(spec, sharp_cls, make(true), a.name() + "_sharp"),
                        DenseSymbol(spec, flat_cls, make(false), a.name() + "_flat")};
}

Paraproducts paraproducts(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam) {
  require(b.spec() == f.spec(), ErrorKind::Dimension, "paraproduct arguments on different grids");
  const auto bb = fam.project_all(b);
  const auto ff = fam.project_all(f);
  const int bands = static_cast<int>(bb.size());
  Paraproducts out{GridField(b.spec()), GridField(b.spec()), GridField(b.spec())};
  for (int k = 0; k < bands; ++k) {
    for (int j = 0; j < bands; ++j) {
      GridField* target = nullptr;
      if (j >= k + 6) {
        target = &out.high_low;
      } else if (j <= k - 6) {
        target = &out.low_high;
      } else {
        target = &out.high_high;
      }
      for (std::size_t i = 0; i < target->size(); ++i) (*target)[i] += bb[j][i] * ff[k][i];
    }
  }
  return out;
}

GridField paraproduct_hh(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam) {
  return paraproducts(b, f, fam).high_high;
}

GridField paraproduct_hl(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam) {
  return paraproducts(b, f, fam).high_low;
}

GridField paraproduct_lh(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam) {
  return paraproducts(b, f, fam).low_high;
}

FourierModeDecomposition::FourierModeDecomposition(
    const GridSpec& spec, int beta_max, int subgrid, double eps, std::vector<int> bands,
    std::vector<std::shared_ptr<const std::vector<GridField>>> coefficients)
    : spec_(spec),
      beta_max_(beta_max),
      subgrid_(subgrid),
      profile_(eps),
      bands_(std::move(bands)),
      coefficients_(std::move(coefficients)) {
  require(bands_.size() == coefficients_.size(), ErrorKind::Dimension, "band list mismatch");
}

bool FourierModeDecomposition::has_band(int k) const {
  return std::find(bands_.begin(), bands_.end(), k) != bands_.end();
}

std::size_t FourierModeDecomposition::band_position(int band) const {
  auto it = std::find(bands_.begin(), bands_.end(), band);
  require(it != bands_.end(), ErrorKind::Parameter, "band not present in decomposition");
  return static_cast<std::size_t>(it - bands_.begin());
}

std::size_t FourierModeDecomposition::mode_count() const {
  std::size_t c = 1;
  for (int d = 0; d < spec_.dim; ++d) c *= static_cast<std::size_t>(2 * beta_max_ + 1);
  return c;
}

MultiIndex FourierModeDecomposition::mode(std::size_t index) const {
  MultiIndex beta{0, 0, 0};
  const std::size_t side = 2 * beta_max_ + 1;
  for (int d = spec_.dim - 1; d >= 0; --d) {
    beta[d] = static_cast<int>(index % side) - beta_max_;
    index /= side;
  }
  return beta;
}

const GridField& FourierModeDecomposition::coefficient(int band, const MultiIndex& beta) const {
  std::size_t index = 0;
  for (int d = 0; d < spec_.dim; ++d) {
    require(std::abs(beta[d]) <= beta_max_, ErrorKind::Parameter, "mode outside decomposition");
    index = index * (2 * beta_max_ + 1) + (beta[d] + beta_max_);
  }
  return (*coefficients_[band_position(band)])[index];
}

std::vector<double> FourierModeDecomposition::mode_decay(int band) const {
  const auto& coeffs = *coefficients_[band_position(band)];
  std::vector<double> out(beta_max_ + 1, 0.0);
  for (std::size_t q = 0; q < coeffs.size(); ++q) {
    const MultiIndex beta = mode(q);
    int ring = 0;
    for (int d = 0; d < spec_.dim; ++d) ring = std::max(ring, std::abs(beta[d]));
    out[ring] = std::max(out[ring], coeffs[q].max_abs());
  }
  return out;
}

void FourierModeDecomposition::reconstruct(int band, const Point& eta, int limit,
                                           std::span<cplx> out) const {
  require(out.size() == spec_.count(), ErrorKind::Dimension, "slice buffer size mismatch");
  std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
  const double window = profile_.psi_tilde(band, norm(eta, spec_.dim));
  if (window == 0.0) return;
  if (limit < 0 || limit > beta_max_) limit = beta_max_;
  const auto& coeffs = *coefficients_[band_position(band)];
  const double scale = std::ldexp(1.0, -band);
  for (std::size_t q = 0; q < coeffs.size(); ++q) {
    const MultiIndex beta = mode(q);
    double arg = 0.0;
    bool inside = true;
    for (int d = 0; d < spec_.dim; ++d) {
      if (std::abs(beta[d]) > limit) inside = false;
      arg += beta[d] * eta[d];
    }
    if (!inside) continue;
    const cplx phase = window * std::polar(1.0, arg * scale);
    const auto& c = coeffs[q];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += phase * c[i];
  }
}

FourierModeDecomposition coifman_meyer_decompose(const DenseSymbol& a, const ModeOptions& options,
                                                 double eps) {
  require(options.beta_max >= 0, ErrorKind::Parameter, "beta_max must be nonnegative");
  const GridSpec& spec = a.spec();
  int subgrid = options.subgrid;
  if (subgrid == 0) {
    subgrid = 8;
    while (subgrid < 4 * options.beta_max) subgrid *= 2;
  }
  require(subgrid >= 2 && (subgrid & (subgrid - 1)) == 0, ErrorKind::Parameter,
          "mode sub-grid size must be a power of two");
  require(2 * options.beta_max + 1 <= subgrid, ErrorKind::Parameter,
          "beta_max too large for the mode sub-grid (aliasing)");
  const DyadicProfile prof(eps);
  std::vector<int> bands = options.bands;
  if (bands.empty()) {
    const LittlewoodPaleyFamily fam(spec, eps);
    for (int k = 0; k <= fam.max_band(); ++k) bands.push_back(k);
  }

  const GridSpec sub{spec.dim, subgrid, 1.0};
  const std::size_t nodes = sub.count();
  const std::size_t points = spec.count();
  const int side = 2 * options.beta_max + 1;
  std::size_t modes = 1;
  for (int d = 0; d < spec.dim; ++d) modes *= static_cast<std::size_t>(side);

  std::vector<std::shared_ptr<const std::vector<GridField>>> all;
  for (int k : bands) {
    require(k >= 0, ErrorKind::Parameter, "band index must be nonnegative");
    std::vector<cplx> samples(points * nodes, cplx(0.0, 0.0));
    std::vector<cplx> buffer(points);
    const double dilation = std::ldexp(2.0 * kPi, k);
    for (std::size_t p = 0; p < nodes; ++p) {
      const auto idx = sub.unflatten(p);
      Point eta{0.0, 0.0, 0.0};
      for (int d = 0; d < spec.dim; ++d) eta[d] = dilation * (-0.5 + static_cast<double>(idx[d]) / subgrid);
      const double w = prof.psi(k, norm(eta, spec.dim));
      if (w == 0.0) continue;
      a.slice(eta, buffer);
      for (std::size_t x = 0; x < points; ++x) samples[x * nodes + p] = w * buffer[x];
    }
    auto coeffs = std::make_shared<std::vector<GridField>>();
    coeffs->reserve(modes);
    for (std::size_t q = 0; q < modes; ++q) coeffs->emplace_back(spec);
    for (std::size_t x = 0; x < points; ++x) {
      GridField g(sub, std::vector<cplx>(samples.begin() + x * nodes,
                                         samples.begin() + (x + 1) * nodes));
      const Spectrum s = forward_transform(g);
      for (std::size_t q = 0; q < modes; ++q) {
        std::size_t rest = q;
        std::array<int, kMaxDim> beta{0, 0, 0};
        int parity = 0;
        for (int d = spec.dim - 1; d >= 0; --d) {
          beta[d] = static_cast<int>(rest % side) - options.beta_max;
          rest /= side;
          parity += beta[d];
        }
        const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
        (*coeffs)[q][x] = sign * s.values[sub.frequency_flat(beta)];
      }
    }
    all.push_back(std::move(coeffs));
  }
  return FourierModeDecomposition(spec, options.beta_max, subgrid, eps, std::move(bands),
                                  std::move(all));
}

DenseSymbol reconstruct_modes(const FourierModeDecomposition& d, int band, int limit) {
  require(d.has_band(band), ErrorKind::Parameter, "band not present in decomposition");
  auto shared = std::make_shared<const FourierModeDecomposition>(d);
  return DenseSymbol(
      d.spec(), SymbolClass{},
      [shared, band, limit](const Point& eta, std::span<cplx> out) {
        shared->reconstruct(band, eta, limit, out);
      },
      "mode_reconstruction");
}

double mode_support_leak(const FourierModeDecomposition& d, int band, double lo, double hi) {
  double peak = 0.0, outside = 0.0;
  const GridSpec& spec = d.spec();
  for (std::size_t q = 0; q < d.mode_count(); ++q) {
    const Spectrum s = forward_transform(d.coefficient(band, d.mode(q)));
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double mag = std::abs(s.values[i]);
      peak = std::max(peak, mag);
      const double r = spec.frequency_norm(i);
      if (r < lo * (1 - 1e-12) || r > hi * (1 + 1e-12)) outside = std::max(outside, mag);
    }
  }
  return peak > 0.0 ? outside / peak : 0.0;
}

SeparableConversion to_separable(const DenseSymbol& a, const LittlewoodPaleyFamily& fam) {
  const GridSpec& spec = a.spec();
  require(fam.spec() == spec, ErrorKind::Dimension, "family grid does not match symbol");
  const DyadicProfile& prof = fam.profile();
  std::vector<SeparableSymbol::Term> terms;
  for (int k = 0; k <= fam.max_band(); ++k) {
    Point centre{k == 0 ? 0.0 : std::ldexp(1.0, k - 1), 0.0, 0.0};
    terms.push_back({k, a.slice(centre)});
  }
  SeparableSymbol sep(spec, a.symbol_class(), terms, prof.eps(), a.name() + "_separable");

  std::vector<Point> probes;
  const double step = spec.frequency_step();
  for (int m = 0; m < spec.size / 2; ++m) {
    probes.push_back({m * step, 0.0, 0.0});
    if (spec.dim >= 2) {
      probes.push_back({0.0, m * step, 0.0});
      probes.push_back({m * step, m * step, 0.0});
    }
  }
  double residual = 0.0;
  GridField exact(spec);
  for (const Point& eta : probes) {
    a.slice(eta, exact.values());
    const double r = norm(eta, spec.dim);
    for (const auto& t : terms) {
      const double w = prof.chi(t.band, r);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < exact.size(); ++i) exact[i] -= w * t.coefficient[i];
    }
    residual = std::max(residual, exact.max_abs());
  }
  SeparableConversion out{sep, residual, sep.bounds(fam)};
  return out;
}

}  // namespace fiotk

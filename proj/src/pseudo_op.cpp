#include "fiotk/pseudo_op.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fiotk/error.hpp"
#include "fiotk/fourier.hpp"

namespace fiotk {
namespace {

std::vector<cplx> roots_of_unity(int n) {
  std::vector<cplx> roots(n);
  for (int m = 0; m < n; ++m) roots[m] = std::polar(1.0, 2.0 * kPi * m / n);
  return roots;
}

// Position index tuples, one array per axis.
std::array<std::vector<int>, kMaxDim> position_indices(const GridSpec& spec) {
  std::array<std::vector<int>, kMaxDim> out;
  const std::size_t count = spec.count();
  for (int d = 0; d < kMaxDim; ++d) out[d].assign(count, 0);
  for (std::size_t x = 0; x < count; ++x) {
    const auto idx = spec.unflatten(x);
    for (int d = 0; d < spec.dim; ++d) out[d][x] = idx[d];
  }
  return out;
}

void check_coverage(const DenseSymbol& a, const Spectrum& f) {
  if (std::isinf(a.coverage_radius())) return;
  for (std::size_t q = 0; q < f.values.size(); ++q)
    if (f.values[q] != cplx(0.0, 0.0) && f.spec.frequency_norm(q) > a.coverage_radius())
      fail(ErrorKind::Coverage, "symbol " + a.name() + " does not cover the input spectrum");
}

double radial_chi(const DyadicProfile& prof, int band, double r) { return prof.chi(band, r); }

}  // namespace

GridField apply_dense(const DenseSymbol& a, const GridField& f) {
  const GridSpec& spec = f.spec();
  require(a.spec() == spec, ErrorKind::Dimension, "symbol grid does not match field");
  const Spectrum F = forward_transform(f);
  check_coverage(a, F);
  const auto roots = roots_of_unity(spec.size);
  const auto pos = position_indices(spec);
  const std::size_t count = spec.count();
  const double norm_factor = 1.0 / std::pow(spec.period, spec.dim);
  const unsigned mask = static_cast<unsigned>(spec.size - 1);
  std::vector<cplx> out(count, cplx(0.0, 0.0));
  std::vector<cplx> slice(count);
  for (std::size_t q = 0; q < count; ++q) {
    if (F.values[q] == cplx(0.0, 0.0)) continue;
    const auto kidx = spec.unflatten(q);
    a.slice(spec.frequency(q), slice);
    const cplx coef = F.values[q] * norm_factor;
    for (std::size_t x = 0; x < count; ++x) {
      unsigned phase = 0;
      for (int d = 0; d < spec.dim; ++d) phase += static_cast<unsigned>(pos[d][x] * kidx[d]);
      out[x] += slice[x] * roots[phase & mask] * coef;
    }
  }
  return GridField(spec, std::move(out));
}

GridField apply_dense_adjoint(const DenseSymbol& a, const GridField& g) {
  const GridSpec& spec = g.spec();
  require(a.spec() == spec, ErrorKind::Dimension, "symbol grid does not match field");
  const auto roots = roots_of_unity(spec.size);
  const auto pos = position_indices(spec);
  const std::size_t count = spec.count();
  const double cell = spec.cell_volume();
  const unsigned mask = static_cast<unsigned>(spec.size - 1);
  Spectrum B{spec, std::vector<cplx>(count, cplx(0.0, 0.0))};
  std::vector<cplx> slice(count);
  for (std::size_t q = 0; q < count; ++q) {
    if (spec.frequency_norm(q) > a.coverage_radius()) continue;
    const auto kidx = spec.unflatten(q);
    a.slice(spec.frequency(q), slice);
    cplx acc(0.0, 0.0);
    for (std::size_t x = 0; x < count; ++x) {
      unsigned phase = 0;
      for (int d = 0; d < spec.dim; ++d) phase += static_cast<unsigned>(pos[d][x] * kidx[d]);
      acc += std::conj(slice[x] * roots[phase & mask]) * g[x];
    }
    B.values[q] = acc * cell;
  }
  return inverse_transform(B);
}

GridField apply_separable(const SeparableSymbol& a, const GridField& f) {
  const GridSpec& spec = f.spec();
  require(a.spec() == spec, ErrorKind::Dimension, "symbol grid does not match field");
  const Spectrum F = forward_transform(f);
  std::vector<double> radius(spec.count());
  for (std::size_t i = 0; i < radius.size(); ++i) radius[i] = spec.frequency_norm(i);
  GridField out(spec);
  Spectrum band{spec, std::vector<cplx>(spec.count())};
  for (const auto& term : a.terms()) {
    bool any = false;
    for (std::size_t i = 0; i < radius.size(); ++i) {
      const double w = radial_chi(a.profile(), term.band, radius[i]);
      band.values[i] = w * F.values[i];
      any = any || w != 0.0;
    }
    if (!any) continue;
    const GridField piece = inverse_transform(band);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term.coefficient[i] * piece[i];
  }
  return out;
}

GridField apply_separable_adjoint(const SeparableSymbol& a, const GridField& g) {
  const GridSpec& spec = g.spec();
  require(a.spec() == spec, ErrorKind::Dimension, "symbol grid does not match field");
  std::vector<double> radius(spec.count());
  for (std::size_t i = 0; i < radius.size(); ++i) radius[i] = spec.frequency_norm(i);
  Spectrum acc{spec, std::vector<cplx>(spec.count(), cplx(0.0, 0.0))};
  GridField product(spec);
  for (const auto& term : a.terms()) {
    for (std::size_t i = 0; i < product.size(); ++i) product[i] = std::conj(term.coefficient[i]) * g[i];
    const Spectrum s = forward_transform(product);
    for (std::size_t i = 0; i < radius.size(); ++i)
      acc.values[i] += radial_chi(a.profile(), term.band, radius[i]) * s.values[i];
  }
  return inverse_transform(acc);
}

LinearOperator make_operator(const DenseSymbol& a) {
  return LinearOperator{a.spec(), a.name(),
                        [a](const GridField& f) { return apply_dense(a, f); },
                        [a](const GridField& g) { return apply_dense_adjoint(a, g); }};
}

LinearOperator make_operator(const SeparableSymbol& a) {
  auto shared = std::make_shared<const SeparableSymbol>(a);
  return LinearOperator{a.spec(), a.name(),
                        [shared](const GridField& f) { return apply_separable(*shared, f); },
                        [shared](const GridField& g) { return apply_separable_adjoint(*shared, g); }};
}

PowerIterationResult power_iteration(const LinearOperator& op, std::uint64_t seed,
                                     int max_iterations, double tolerance) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GridField x(op.spec);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = cplx(normal(rng), normal(rng));
  x *= 1.0 / l2_norm(x);
  PowerIterationResult result;
  double previous = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const GridField y = op.apply(x);
    const double estimate = l2_norm(y);
    result.norm = std::max(result.norm, estimate);
    result.iterations = it;
    if (estimate == 0.0) {
      result.converged = true;
      break;
    }
    if (it > 1 && std::fabs(estimate - previous) <= tolerance * estimate) {
      result.converged = true;
      break;
    }
    previous = estimate;
    GridField z = op.adjoint(y);
    const double zn = l2_norm(z);
    if (zn == 0.0) {
      result.converged = true;
      break;
    }
    z *= 1.0 / zn;
    x = std::move(z);
  }
  return result;
}

GridSpec band_support_grid(int k, double c) {
  require(k >= 1 && k <= 12, ErrorKind::Parameter, "band index out of supported range");
  require(c > 0.0, ErrorKind::Parameter, "annulus constant must be positive");
  const double lower = c * std::pow(2.0, 0.5 * (k - 2));
  const double step = std::exp2(std::floor(std::log2(0.5 * lower)));
  GridSpec spec;
  spec.dim = 2;
  spec.period = 2.0 * kPi / step;
  spec.size = 8;
  while (0.5 * spec.size * step < std::ldexp(1.0, k + 1)) spec.size *= 2;
  return spec;
}

BandSupportReport verify_band_support(const GridField& a_k, const GridField& f_k, int k,
                                      const BandSupportOptions& options) {
  require(a_k.spec() == f_k.spec(), ErrorKind::Dimension, "band support inputs on different grids");
  require(k >= 0, ErrorKind::Parameter, "band index must be nonnegative");
  const GridSpec& spec = a_k.spec();
  auto leak_outside = [&spec](const Spectrum& s, double lo, double hi) {
    double peak = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double mag = std::abs(s.values[i]);
      peak = std::max(peak, mag);
      const double r = spec.frequency_norm(i);
      if (r < lo * (1 - 1e-12) || r > hi * (1 + 1e-12)) outside = std::max(outside, mag);
    }
    return peak > 0.0 ? outside / peak : 0.0;
  };
  BandSupportReport report;
  report.coefficient_leak = leak_outside(forward_transform(a_k), options.c * std::pow(2.0, 0.5 * (k - 2)),
                                         std::pow(2.0, k * options.gamma - 3.0));
  report.band_leak = leak_outside(forward_transform(f_k), std::ldexp(1.0, k - 2), std::ldexp(1.0, k));
  report.precondition_ok =
      report.coefficient_leak <= options.tolerance && report.band_leak <= options.tolerance;
  report.leak = leak_outside(forward_transform(pointwise_product(a_k, f_k)), std::ldexp(1.0, k - 3),
                             std::ldexp(1.0, k + 1));
  report.holds = report.leak <= options.tolerance;
  return report;
}

const char* member_kind_name(MemberKind kind) {
  switch (kind) {
    case MemberKind::PlaneWave: return "plane";
    case MemberKind::Packet: return "packet";
    case MemberKind::RandomBand: return "random";
    case MemberKind::Focusing: return "focus";
  }
  return "member";
}

namespace {

// Gaussian values on lattice points inside |xi| <= hi, visited in signed-index
// lexicographic order so the draw does not depend on N.
Spectrum random_spectrum(const GridSpec& spec, double hi, std::uint64_t seed,
                         const std::function<double(double)>& weight) {
  const double step = spec.frequency_step();
  const int reach = static_cast<int>(std::floor(hi / step));
  require(reach < spec.size / 2, ErrorKind::Resolution, "random field band exceeds the grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Spectrum s{spec, std::vector<cplx>(spec.count(), cplx(0.0, 0.0))};
  std::array<int, kMaxDim> k{0, 0, 0};
  std::array<int, kMaxDim> lo{0, 0, 0}, top{0, 0, 0};
  for (int d = 0; d < spec.dim; ++d) {
    lo[d] = -reach;
    top[d] = reach;
  }
  k = lo;
  while (true) {
    const double re = normal(rng), im = normal(rng);
    double r2 = 0.0;
    for (int d = 0; d < spec.dim; ++d) r2 += std::pow(k[d] * step, 2);
    const double w = weight(std::sqrt(r2));
    if (w != 0.0) s.values[spec.frequency_flat(k)] = w * cplx(re, im);
    int d = spec.dim - 1;
    while (d >= 0 && k[d] == top[d]) {
      k[d] = lo[d];
      --d;
    }
    if (d < 0) break;
    ++k[d];
  }
  return s;
}

GridField normalized(GridField f) {
  const double n = l2_norm(f);
  require(n > 0.0, ErrorKind::DegenerateInput, "test family member vanishes on this grid");
  f *= 1.0 / n;
  return f;
}

Spectrum packet_spectrum(const GridSpec& spec, int band, double angle) {
  const double centre = std::ldexp(1.0, band - 1);
  const double radial = centre / 6.0;
  const double transverse = 0.5 * std::pow(2.0, 0.5 * (band - 1));
  const double c = std::cos(angle), s = std::sin(angle);
  const double x0 = 0.5 * spec.period;
  Spectrum out{spec, std::vector<cplx>(spec.count(), cplx(0.0, 0.0))};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const Point xi = spec.frequency(i);
    const double along = xi[0] * c + xi[1] * s - centre;
    const double across = -xi[0] * s + xi[1] * c;
    const double e = 0.5 * (along * along / (radial * radial) + across * across / (transverse * transverse));
    if (e > 40.0) continue;
    out.values[i] = std::exp(-e) * std::polar(1.0, -(xi[0] + xi[1]) * x0);
  }
  return out;
}

}  // namespace

GridField random_band_limited(const GridSpec& spec, double lo, double hi, std::uint64_t seed) {
  require(hi >= lo && lo >= 0.0, ErrorKind::Parameter, "invalid radial band");
  return inverse_transform(
      random_spectrum(spec, hi, seed, [lo, hi](double r) { return (r >= lo && r <= hi) ? 1.0 : 0.0; }));
}

std::vector<FamilyMember> build_test_family(const GridSpec& spec, const FamilyOptions& options) {
  spec.validate();
  require(spec.dim == 2, ErrorKind::Parameter, "the test family is defined for n = 2");
  require(!options.bands.empty(), ErrorKind::Parameter, "test family needs at least one band");
  const DyadicProfile prof(options.eps);
  int directions = options.frame_directions;
  if (directions <= 0)
    directions = 8 * static_cast<int>(std::ceil(std::sqrt(spec.max_frequency())));
  const double step = spec.frequency_step();
  std::vector<FamilyMember> out;
  for (int band : options.bands) {
    require(band >= 1, ErrorKind::Parameter, "test family bands start at 1");
    double lo = 0, hi = 0;
    prof.support(band, lo, hi);
    require(hi < spec.axis_nyquist(), ErrorKind::Resolution,
            "band " + std::to_string(band) + " is not resolved by the grid");
    const std::string tag = "k" + std::to_string(band);
    if (options.plane_waves) {
      const double theta = 0.37 * band;
      const double radius = std::ldexp(1.0, band - 1);
      std::array<int, kMaxDim> k{static_cast<int>(std::lround(radius * std::cos(theta) / step)),
                                 static_cast<int>(std::lround(radius * std::sin(theta) / step)), 0};
      if (k[0] == 0 && k[1] == 0) k[0] = 1;
      Spectrum s{spec, std::vector<cplx>(spec.count(), cplx(0.0, 0.0))};
      s.values[spec.frequency_flat(k)] = 1.0;
      out.push_back({tag + "_plane", MemberKind::PlaneWave, band, -1, normalized(inverse_transform(s))});
    }
    if (options.packets) {
      for (int j = 0; j < options.packet_directions; ++j) {
        const int l = (j * directions) / options.packet_directions;
        const double angle = 2.0 * kPi * l / directions;
        out.push_back({tag + "_packet_d" + std::to_string(l), MemberKind::Packet, band, l,
                       normalized(inverse_transform(packet_spectrum(spec, band, angle)))});
      }
    }
    if (options.random_fields) {
      const std::uint64_t seed = options.seed * 1000003ULL + static_cast<std::uint64_t>(band);
      const Spectrum s = random_spectrum(spec, hi, seed, [&prof, band](double r) { return prof.psi(band, r); });
      out.push_back({tag + "_random", MemberKind::RandomBand, band, -1, normalized(inverse_transform(s))});
    }
    if (options.focusing) {
      Spectrum acc{spec, std::vector<cplx>(spec.count(), cplx(0.0, 0.0))};
      for (int l = 0; l < directions; ++l) {
        const Spectrum s = packet_spectrum(spec, band, 2.0 * kPi * l / directions);
        for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += s.values[i];
      }
      out.push_back({tag + "_focus", MemberKind::Focusing, band, -1, normalized(inverse_transform(acc))});
    }
  }
  return out;
}

BoundednessReport operator_norm_probe(const LinearOperator& op, double s_in, double s_out,
                                      std::span<const double> ps, const ParabolicFrame& frame,
                                      const std::vector<FamilyMember>& family,
                                      const ProbeOptions& options) {
  require(!family.empty(), ErrorKind::Parameter, "probe family is empty");
  require(!ps.empty(), ErrorKind::Parameter, "no exponents requested");
  require(op.spec == frame.spec(), ErrorKind::Dimension, "operator grid does not match frame");
  BoundednessReport report;
  report.spec = op.spec;
  report.frame = frame.params();
  for (const auto& member : family) {
    const auto in = hpfio_norms(member.field, s_in, ps, frame);
    for (double v : in)
      require(v >= 1e-14, ErrorKind::DegenerateInput, "input norm vanishes for member " + member.id);
    const GridField image = op.apply(member.field);
    const auto out = hpfio_norms(image, s_out, ps, frame);
    for (std::size_t q = 0; q < ps.size(); ++q) {
      ProbeRow row{ps[q], s_in, s_out, member.band, member.id, in[q], out[q], out[q] / in[q]};
      auto& slot = report.band_profile[ps[q]][member.band];
      slot = std::max(slot, row.ratio);
      auto& sup = report.sup[ps[q]];
      sup = std::max(sup, row.ratio);
      report.rows.push_back(std::move(row));
    }
    report.l2_sup = std::max(report.l2_sup, l2_norm(image) / l2_norm(member.field));
  }
  const bool has_two = std::find(ps.begin(), ps.end(), 2.0) != ps.end();
  if (options.power_check && has_two && s_in == 0.0 && s_out == 0.0)
    report.power = power_iteration(op, options.seed, options.max_iterations, options.tolerance);
  return report;
}

double trend_slope(const std::map<int, double>& profile, int lo, int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [k, v] : profile) {
    if (k < lo || k > hi) continue;
    require(v > 0.0, ErrorKind::DegenerateInput, "nonpositive ratio in trend fit");
    const double y = std::log(v);
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
    ++n;
  }
  require(n >= 2, ErrorKind::Parameter, "trend fit needs at least two bands");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double growth_factor(const std::map<int, double>& profile, int lo, int hi) {
  auto base = profile.find(lo);
  require(base != profile.end() && base->second > 0.0, ErrorKind::Parameter, "missing base band");
  double top = 0.0;
  for (const auto& [k, v] : profile)
    if (k >= lo && k <= hi) top = std::max(top, v);
  return top / base->second;
}

}  // namespace fiotk

#include "fiotk/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "fiotk/error.hpp"

namespace fiotk {
namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int size, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(dim, size, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    int dims[kMaxDim] = {size, size, size};
    std::size_t count = 1;
    for (int d = 0; d < dim; ++d) count *= static_cast<std::size_t>(size);
    auto* buffer = fftw_alloc_complex(count);
    fftw_plan plan = fftw_plan_dft(dim, dims, buffer, buffer, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    require(plan != nullptr, ErrorKind::Construction, "FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute_in_place(const GridSpec& spec, std::vector<cplx>& data, int sign) {
  fftw_plan plan = plan_cache().get(spec.dim, spec.size, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

Spectrum forward_transform(const GridField& f) {
  const GridSpec& spec = f.spec();
  std::vector<cplx> data = f.data();
  execute_in_place(spec, data, FFTW_FORWARD);
  const double scale = spec.cell_volume();
  for (auto& z : data) z *= scale;
  return Spectrum{spec, std::move(data)};
}

GridField inverse_transform(const Spectrum& spectrum) {
  const GridSpec& spec = spectrum.spec;
  require(spectrum.values.size() == spec.count(), ErrorKind::Dimension,
          "spectrum size does not match grid");
  std::vector<cplx> data = spectrum.values;
  execute_in_place(spec, data, FFTW_BACKWARD);
  const double scale = 1.0 / std::pow(spec.period, spec.dim);
  for (auto& z : data) z *= scale;
  return GridField(spec, std::move(data));
}

Spectrum multiply(const Spectrum& s, const SpectralMultiplier& m) {
  require(s.spec == m.spec(), ErrorKind::Dimension, "multiplier grid does not match field");
  Spectrum out{s.spec, s.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= m[i];
  return out;
}

GridField apply_multiplier(const GridField& f, const SpectralMultiplier& m) {
  require(f.spec() == m.spec(), ErrorKind::Dimension, "multiplier grid does not match field");
  return inverse_transform(multiply(forward_transform(f), m));
}

SpectralMultiplier bessel_multiplier(const GridSpec& spec, double s) {
  require(std::isfinite(s), ErrorKind::Parameter, "Bessel exponent must be finite");
  return SpectralMultiplier::radial(
      spec, [s](double r) { return std::pow(1.0 + r * r, 0.5 * s); });
}

GridField bessel_potential(const GridField& f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(f, bessel_multiplier(f.spec(), s));
}

double lp_norm_unchecked(const GridField& f, double p) {
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : f.values()) acc += std::norm(z);
    return std::sqrt(acc * f.spec().cell_volume());
  }
  // Scale by the maximum so large exponents do not overflow.
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  for (const auto& z : f.values()) acc += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(acc * f.spec().cell_volume(), 1.0 / p);
}

double lp_norm(const GridField& f, double p) {
  require(std::isfinite(p) && p > 1.0, ErrorKind::Parameter, "p must lie in (1, inf)");
  return lp_norm_unchecked(f, p);
}

double l2_norm(const GridField& f) { return lp_norm_unchecked(f, 2.0); }

double spectral_l2_norm(const Spectrum& s) {
  double acc = 0.0;
  for (const auto& z : s.values) acc += std::norm(z);
  return std::sqrt(acc) / std::pow(s.spec.period, 0.5 * s.spec.dim);
}

}  // namespace fiotk

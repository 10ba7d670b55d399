#include "fiotk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fiotk/error.hpp"

namespace fiotk {

void GridSpec::validate() const {
  require(dim >= 1 && dim <= kMaxDim, ErrorKind::Parameter,
          "dimension must be 1, 2 or 3");
  require(size >= 2 && (size & (size - 1)) == 0, ErrorKind::Parameter,
          "grid size must be a power of two >= 2");
  require(std::isfinite(period) && period > 0.0, ErrorKind::Parameter,
          "period must be positive and finite");
  double total = std::pow(static_cast<double>(size), dim);
  require(total <= 1 << 26, ErrorKind::Parameter, "grid too large");
}

std::size_t GridSpec::count() const {
  std::size_t c = 1;
  for (int d = 0; d < dim; ++d) c *= static_cast<std::size_t>(size);
  return c;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

double GridSpec::max_frequency() const {
  return axis_nyquist() * std::sqrt(static_cast<double>(dim));
}

std::array<int, kMaxDim> GridSpec::unflatten(std::size_t flat) const {
  std::array<int, kMaxDim> idx{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % static_cast<std::size_t>(size));
    flat /= static_cast<std::size_t>(size);
  }
  return idx;
}

std::size_t GridSpec::flatten(const std::array<int, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim; ++d) flat = flat * static_cast<std::size_t>(size) + idx[d];
  return flat;
}

Point GridSpec::position(std::size_t flat) const {
  auto idx = unflatten(flat);
  Point p{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) p[d] = idx[d] * spacing();
  return p;
}

Point GridSpec::frequency(std::size_t flat) const {
  auto idx = unflatten(flat);
  Point p{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) p[d] = wave_index(idx[d]) * frequency_step();
  return p;
}

double GridSpec::frequency_norm(std::size_t flat) const { return norm(frequency(flat), dim); }

std::size_t GridSpec::frequency_flat(const std::array<int, kMaxDim>& k) const {
  std::array<int, kMaxDim> idx{0, 0, 0};
  for (int d = 0; d < dim; ++d) idx[d] = ((k[d] % size) + size) % size;
  return flatten(idx);
}

double norm(const Point& p, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += p[d] * p[d];
  return std::sqrt(s);
}

GridField::GridField(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  values_.assign(spec_.count(), cplx(0.0, 0.0));
}

GridField::GridField(const GridSpec& spec, std::vector<cplx> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  require(values_.size() == spec_.count(), ErrorKind::Dimension,
          "sample count does not match grid");
}

GridField GridField::from_function(const GridSpec& spec,
                                   const std::function<cplx(const Point&)>& fn) {
  GridField f(spec);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(spec.position(i));
  return f;
}

bool GridField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double GridField::max_abs() const {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

GridField& GridField::operator+=(const GridField& other) {
  require(spec_ == other.spec_, ErrorKind::Dimension, "grid mismatch in sum");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& other) {
  require(spec_ == other.spec_, ErrorKind::Dimension, "grid mismatch in difference");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridField& GridField::operator*=(cplx scale) {
  for (auto& z : values_) z *= scale;
  return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(cplx s, GridField a) { return a *= s; }

GridField pointwise_product(const GridField& a, const GridField& b) {
  require(a.spec() == b.spec(), ErrorKind::Dimension, "grid mismatch in product");
  GridField out(a.spec());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double relative_max_error(const GridField& a, const GridField& b) {
  require(a.spec() == b.spec(), ErrorKind::Dimension, "grid mismatch in comparison");
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err / std::max(b.max_abs(), std::numeric_limits<double>::min());
}

double relative_l2_error(const GridField& a, const GridField& b) {
  require(a.spec() == b.spec(), ErrorKind::Dimension, "grid mismatch in comparison");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / std::max(den, std::numeric_limits<double>::min()));
}

SpectralMultiplier::SpectralMultiplier(const GridSpec& spec, std::vector<cplx> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  require(values_.size() == spec_.count(), ErrorKind::Dimension,
          "multiplier sample count does not match grid");
}

SpectralMultiplier SpectralMultiplier::constant(const GridSpec& spec, cplx value) {
  return SpectralMultiplier(spec, std::vector<cplx>(spec.count(), value));
}

SpectralMultiplier SpectralMultiplier::from_symbol(
    const GridSpec& spec, const std::function<cplx(const Point&)>& symbol) {
  spec.validate();
  std::vector<cplx> v(spec.count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = symbol(spec.frequency(i));
  SpectralMultiplier m(spec, std::move(v));
  m.enforce_nyquist_real();
  return m;
}

SpectralMultiplier SpectralMultiplier::radial(const GridSpec& spec,
                                              const std::function<double(double)>& profile) {
  spec.validate();
  std::vector<cplx> v(spec.count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = profile(spec.frequency_norm(i));
  return SpectralMultiplier(spec, std::move(v));
}

void SpectralMultiplier::enforce_nyquist_real() {
  const int half = spec_.size / 2;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    auto idx = spec_.unflatten(i);
    for (int d = 0; d < spec_.dim; ++d) {
      if (idx[d] == half) {
        values_[i] = cplx(values_[i].real(), 0.0);
        break;
      }
    }
  }
}

SpectralMultiplier SpectralMultiplier::operator*(const SpectralMultiplier& other) const {
  require(spec_ == other.spec_, ErrorKind::Dimension, "grid mismatch in multiplier product");
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * other.values_[i];
  return SpectralMultiplier(spec_, std::move(v));
}

}  // namespace fiotk

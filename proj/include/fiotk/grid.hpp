#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fiotk {

using cplx = std::complex<double>;
using Point = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kMaxDim = 3;

// Periodic box [0, L)^n sampled on N points per axis.
struct GridSpec {
  int dim = 2;
  int size = 128;
  double period = 2.0 * kPi * 16.0;

  void validate() const;
  std::size_t count() const;
  double spacing() const { return period / size; }
  double cell_volume() const;
  double frequency_step() const { return 2.0 * kPi / period; }
  double axis_nyquist() const { return kPi * size / period; }
  double max_frequency() const;

  // Signed lattice index in [-N/2, N/2) for storage index i along one axis.
  int wave_index(int i) const { return i < size / 2 ? i : i - size; }
  std::array<int, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<int, kMaxDim>& idx) const;
  Point position(std::size_t flat) const;
  Point frequency(std::size_t flat) const;
  double frequency_norm(std::size_t flat) const;
  // Storage index of the lattice frequency with signed indices k, wrapping modulo N.
  std::size_t frequency_flat(const std::array<int, kMaxDim>& k) const;

  bool operator==(const GridSpec& other) const = default;
};

double norm(const Point& p, int dim);

// Sampled complex field on the grid, row-major.
class GridField {
 public:
  GridField() = default;
  explicit GridField(const GridSpec& spec);
  GridField(const GridSpec& spec, std::vector<cplx> values);

  static GridField from_function(const GridSpec& spec,
                                 const std::function<cplx(const Point&)>& fn);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  std::vector<cplx>& data() { return values_; }
  const std::vector<cplx>& data() const { return values_; }

  bool all_finite() const;
  double max_abs() const;

  GridField& operator+=(const GridField& other);
  GridField& operator-=(const GridField& other);
  GridField& operator*=(cplx scale);

 private:
  GridSpec spec_;
  std::vector<cplx> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(cplx s, GridField a);
GridField pointwise_product(const GridField& a, const GridField& b);
// max |a-b| / max |b|, with the denominator floored at the smallest positive double.
double relative_max_error(const GridField& a, const GridField& b);
double relative_l2_error(const GridField& a, const GridField& b);

// Frequency-domain samples with the continuum-matching normalization.
struct Spectrum {
  GridSpec spec;
  std::vector<cplx> values;
};

// Values of a Fourier multiplier on the frequency lattice, storage order.
class SpectralMultiplier {
 public:
  SpectralMultiplier() = default;
  SpectralMultiplier(const GridSpec& spec, std::vector<cplx> values);

  static SpectralMultiplier constant(const GridSpec& spec, cplx value);
  static SpectralMultiplier from_symbol(const GridSpec& spec,
                                        const std::function<cplx(const Point&)>& symbol);
  static SpectralMultiplier radial(const GridSpec& spec,
                                   const std::function<double(double)>& profile);

  const GridSpec& spec() const { return spec_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }

  // Drops the imaginary part on every lattice point carrying a Nyquist index.
  void enforce_nyquist_real();

  SpectralMultiplier operator*(const SpectralMultiplier& other) const;

 private:
  GridSpec spec_;
  std::vector<cplx> values_;
};

}  // namespace fiotk

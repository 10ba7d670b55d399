#pragma once

#include <array>
#include <memory>
#include <vector>

#include "fiotk/dyadic.hpp"
#include "fiotk/symbol.hpp"

namespace fiotk {

using MultiIndex = std::array<int, 3>;

struct SeminormEntry {
  MultiIndex alpha{0, 0, 0};
  double pointwise = 0.0;  // max |d_eta^alpha a| <eta>^{|alpha| - m}
  double zygmund = 0.0;    // max |d_eta^alpha a(., eta)|_{C^r_*} <eta>^{|alpha| - m - r delta}
  double value = 0.0;      // larger of the two
};

struct SeminormOptions {
  int band_lo = 0;
  int band_hi = -1;  // -1 selects the highest band sampled below the axis Nyquist frequency
  int angles = 3;
};

std::vector<SeminormEntry> estimate_seminorms(const DenseSymbol& a, int alpha_max,
                                              const LittlewoodPaleyFamily& fam,
                                              const SeminormOptions& options = {});

struct SmoothingSplit {
  double gamma;
  DenseSymbol sharp;
  DenseSymbol flat;
};

SmoothingSplit smooth_split(const DenseSymbol& a, double gamma, double eps = 0.125);

struct Paraproducts {
  GridField high_high;  // |j - k| <= 5
  GridField high_low;   // j >= k + 6
  GridField low_high;   // j <= k - 6
};

Paraproducts paraproducts(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam);
GridField paraproduct_hh(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam);
GridField paraproduct_hl(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam);
GridField paraproduct_lh(const GridField& b, const GridField& f, const LittlewoodPaleyFamily& fam);

struct ModeOptions {
  int beta_max = 8;
  int subgrid = 0;         // 0 selects the smallest power of two >= max(8, 4 beta_max)
  std::vector<int> bands;  // empty selects every band of the family
};

class FourierModeDecomposition {
 public:
  FourierModeDecomposition(const GridSpec& spec, int beta_max, int subgrid, double eps,
                           std::vector<int> bands,
                           std::vector<std::shared_ptr<const std::vector<GridField>>> coefficients);

  const GridSpec& spec() const { return spec_; }
  int beta_max() const { return beta_max_; }
  int subgrid() const { return subgrid_; }
  const DyadicProfile& profile() const { return profile_; }
  const std::vector<int>& bands() const { return bands_; }
  bool has_band(int k) const;

  std::size_t mode_count() const;
  MultiIndex mode(std::size_t index) const;
  const GridField& coefficient(int band, const MultiIndex& beta) const;
  // max over |beta|_inf = t of max_x |c_{k,beta}(x)| for t = 0..beta_max.
  std::vector<double> mode_decay(int band) const;
  // Partial sum over |beta|_inf <= limit at one eta, written into out.
  void reconstruct(int band, const Point& eta, int limit, std::span<cplx> out) const;

 private:
  std::size_t band_position(int band) const;

  GridSpec spec_;
  int beta_max_;
  int subgrid_;
  DyadicProfile profile_;
  std::vector<int> bands_;
  std::vector<std::shared_ptr<const std::vector<GridField>>> coefficients_;
};

FourierModeDecomposition coifman_meyer_decompose(const DenseSymbol& a, const ModeOptions& options,
                                                 double eps = 0.125);
// The band symbol sum_beta c_{k,beta}(x) e^{i beta . eta / 2^k} psi~_k(eta), truncated at limit.
DenseSymbol reconstruct_modes(const FourierModeDecomposition& d, int band, int limit = -1);
// Largest |F c_{k,beta}| outside lo <= |xi| <= hi relative to the largest |F c_{k,beta}| of the band.
double mode_support_leak(const FourierModeDecomposition& d, int band, double lo, double hi);

struct SeparableConversion {
  SeparableSymbol symbol;
  double residual = 0.0;
  SeparableSymbol::Bounds bounds;
};

SeparableConversion to_separable(const DenseSymbol& a, const LittlewoodPaleyFamily& fam);

}  // namespace fiotk

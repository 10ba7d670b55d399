#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fiotk/dyadic.hpp"
#include "fiotk/grid.hpp"

namespace fiotk {

// Declared membership in the rough class with regularity r, order m and type delta.
struct SymbolClass {
  double r = 1.0;
  double m = 0.0;
  double delta = 0.0;

  void validate() const;
};

// A symbol a(x, eta) evaluated lazily: each call produces the x-slice at one eta.
class DenseSymbol {
 public:
  using Evaluator = std::function<void(const Point& eta, std::span<cplx> out)>;

  DenseSymbol(const GridSpec& spec, SymbolClass cls, Evaluator evaluator,
              std::string name = "dense");

  const GridSpec& spec() const { return spec_; }
  const SymbolClass& symbol_class() const { return class_; }
  const std::string& name() const { return name_; }

  void slice(const Point& eta, std::span<cplx> out) const;
  GridField slice(const Point& eta) const;

  // Frequencies with |eta| above this radius are not represented.
  double coverage_radius() const { return coverage_; }
  DenseSymbol with_coverage(double radius) const;
  DenseSymbol with_class(SymbolClass cls) const;

 private:
  GridSpec spec_;
  SymbolClass class_;
  std::shared_ptr<const Evaluator> evaluator_;
  std::string name_;
  double coverage_ = std::numeric_limits<double>::infinity();
};

class LittlewoodPaleyFamily;

// a(x, eta) = sum_k a_k(x) chi_k(eta).
class SeparableSymbol {
 public:
  struct Term {
    int band;
    GridField coefficient;
  };
  struct Bounds {
    double sup_norm = 0.0;      // sup_k |a_k|_inf
    double zygmund_part = 0.0;  // sup_k 2^{-k r delta} |a_k|_{C^r_*}
    double total = 0.0;         // sup_k of the sum of both
  };

  SeparableSymbol(const GridSpec& spec, SymbolClass cls, std::vector<Term> terms,
                  double eps = 0.125, std::string name = "separable");

  const GridSpec& spec() const { return spec_; }
  const SymbolClass& symbol_class() const { return class_; }
  const std::vector<Term>& terms() const { return terms_; }
  const DyadicProfile& profile() const { return profile_; }
  const std::string& name() const { return name_; }

  DenseSymbol densify() const;
  Bounds bounds(const LittlewoodPaleyFamily& fam) const;
  // Largest |F a_k| outside c 2^{(k-2)/2} <= |xi| <= 2^{k gamma - 3}, relative to its peak.
  double support_violation(double c, double gamma) const;

 private:
  GridSpec spec_;
  SymbolClass class_;
  std::vector<Term> terms_;
  DyadicProfile profile_;
  std::string name_;
};

DenseSymbol identity_symbol(const GridSpec& spec);
DenseSymbol bessel_symbol(const GridSpec& spec, double order);
DenseSymbol multiplication_symbol(const GridField& b, double r = 1.0);
// sum_t b_t(x) <eta>^{m_t}
DenseSymbol weighted_sum_symbol(const std::vector<GridField>& coefficients,
                                const std::vector<double>& orders, SymbolClass cls);

struct RoughChirpOptions {
  double r = 2.0;
  double delta = 0.5;
  std::uint64_t seed = 20240611;
  double eps = 0.125;
  int max_band = -1;  // -1 selects the top Littlewood-Paley band of the grid
};

// Separable rough symbol whose coefficient series are random lacunary cosine sums
// calibrated so that every band has unit separable bound.
SeparableSymbol rough_chirp(const GridSpec& spec, const RoughChirpOptions& options);

}  // namespace fiotk

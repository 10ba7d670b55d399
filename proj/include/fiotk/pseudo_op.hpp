#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fiotk/norms.hpp"
#include "fiotk/parabolic_frame.hpp"
#include "fiotk/symbol.hpp"

namespace fiotk {

GridField apply_dense(const DenseSymbol& a, const GridField& f);
GridField apply_dense_adjoint(const DenseSymbol& a, const GridField& g);
GridField apply_separable(const SeparableSymbol& a, const GridField& f);
GridField apply_separable_adjoint(const SeparableSymbol& a, const GridField& g);

struct LinearOperator {
  GridSpec spec;
  std::string name;
  std::function<GridField(const GridField&)> apply;
  std::function<GridField(const GridField&)> adjoint;
};

LinearOperator make_operator(const DenseSymbol& a);
LinearOperator make_operator(const SeparableSymbol& a);

struct PowerIterationResult {
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Largest singular value of op in L^2 from a seeded random start.
PowerIterationResult power_iteration(const LinearOperator& op, std::uint64_t seed,
                                     int max_iterations = 200, double tolerance = 1e-8);

struct BandSupportOptions {
  double c = 0.25;
  double gamma = 0.75;
  double tolerance = 1e-12;
};

struct BandSupportReport {
  bool holds = false;
  bool precondition_ok = false;
  double leak = 0.0;              // outside [2^{k-3}, 2^{k+1}], relative to the product peak
  double coefficient_leak = 0.0;  // F(a_k) outside its admissible annulus, relative
  double band_leak = 0.0;         // F(f_k) outside [2^{k-2}, 2^k], relative
};

BandSupportReport verify_band_support(const GridField& a_k, const GridField& f_k, int k,
                                      const BandSupportOptions& options = {});
// A grid on which band k and the coefficient annulus of width parameter c are resolved.
GridSpec band_support_grid(int k, double c = 0.25);

enum class MemberKind { PlaneWave, Packet, RandomBand, Focusing };
const char* member_kind_name(MemberKind kind);

struct FamilyMember {
  std::string id;
  MemberKind kind;
  int band;
  int direction;  // frame direction index, -1 when not directional
  GridField field;
};

struct FamilyOptions {
  std::vector<int> bands;
  int packet_directions = 4;
  int frame_directions = 0;  // 0 selects the default count for the grid
  std::uint64_t seed = 7;
  bool plane_waves = true;
  bool packets = true;
  bool random_fields = true;
  bool focusing = true;
  double eps = 0.125;
};

std::vector<FamilyMember> build_test_family(const GridSpec& spec, const FamilyOptions& options);

// Gaussian random spectrum on lo <= |xi| <= hi drawn in a grid-independent lattice order.
GridField random_band_limited(const GridSpec& spec, double lo, double hi, std::uint64_t seed);

struct ProbeRow {
  double p = 2.0;
  double s_in = 0.0;
  double s_out = 0.0;
  int band = 0;
  std::string member;
  double in_norm = 0.0;
  double out_norm = 0.0;
  double ratio = 0.0;
};

struct ProbeOptions {
  bool power_check = true;
  std::uint64_t seed = 99;
  int max_iterations = 200;
  double tolerance = 1e-8;
};

struct BoundednessReport {
  std::vector<ProbeRow> rows;
  GridSpec spec;
  FrameParams frame;
  std::optional<ExponentBudget> budget;
  std::map<double, std::map<int, double>> band_profile;  // p -> band -> sup ratio
  std::map<double, double> sup;                          // p -> sup ratio
  double l2_sup = 0.0;                                   // sup of |Af|_2 / |f|_2
  std::optional<PowerIterationResult> power;
};

BoundednessReport operator_norm_probe(const LinearOperator& op, double s_in, double s_out,
                                      std::span<const double> ps, const ParabolicFrame& frame,
                                      const std::vector<FamilyMember>& family,
                                      const ProbeOptions& options = {});

// Least-squares slope of log(profile) against band index over [lo, hi].
double trend_slope(const std::map<int, double>& profile, int lo, int hi);
double growth_factor(const std::map<int, double>& profile, int lo, int hi);

}  // namespace fiotk

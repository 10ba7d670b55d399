#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fiotk/dyadic.hpp"
#include "fiotk/error.hpp"
#include "fiotk/fourier.hpp"
#include "fiotk/harness.hpp"
#include "fiotk/norms.hpp"
#include "fiotk/parabolic_frame.hpp"
#include "fiotk/pseudo_op.hpp"
#include "fiotk/symbol_calculus.hpp"
#include "support.hpp"

using namespace fiotk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Relative movement of a measured constant between two grids.
double drift(double coarse, double fine) { return std::fabs(fine - coarse) / std::fabs(coarse); }

GridField high_pass(const GridField& f, double cut) {
  return apply_multiplier(f, SpectralMultiplier::radial(f.spec(), [cut](double r) { return r >= cut ? 1.0 : 0.0; }));
}

Outcome exact_identities() {
  const auto start = Clock::now();
  double partition = 0.0, round_trip = 0.0, split = 0.0, para = 0.0, frame_err = 0.0;
  for (int n : {64, 128, 256}) {
    const GridSpec spec{2, n, 32.0 * kPi};
    const LittlewoodPaleyFamily fam(spec);
    for (std::size_t i = 0; i < spec.count(); ++i) {
      double sum = 0.0;
      for (int j = 0; j <= fam.max_band(); ++j) sum += fam.weight(j, i);
      partition = std::max(partition, std::fabs(sum - 1.0));
    }
    const GridField f = testing_support::noise(spec, 11), g = testing_support::noise(spec, 12);
    round_trip = std::max(round_trip, relative_max_error(inverse_transform(forward_transform(f)), f));

    const GridField b = random_band_limited(spec, 0.0, 1.0, 13);
    const DenseSymbol a = weighted_sum_symbol({b, testing_support::noise(spec, 14)}, {0.5, -0.5}, SymbolClass{2.0, 0.5, 0.0});
    for (double gamma : {0.5, 0.75, 1.0}) {
      const SmoothingSplit sp = smooth_split(a, gamma);
      for (const Point& eta : {Point{0.0, 0.0, 0.0}, Point{0.7, 0.2, 0.0}, Point{1.5, -1.0, 0.0}})
        split = std::max(split, relative_max_error(sp.sharp.slice(eta) + sp.flat.slice(eta), a.slice(eta)));
    }

    const Paraproducts pp = paraproducts(g, f, fam);
    para = std::max(para, relative_max_error(pp.high_high + pp.high_low + pp.low_high, pointwise_product(g, f)));

    const ParabolicFrame frame(spec);
    const GridField hp = high_pass(f, 0.5);
    frame_err = std::max(frame_err, relative_max_error(frame.synthesize(frame.analyze(hp)), hp));
  }
  const double elapsed = seconds_since(start);
  Outcome o;
  o.passed = partition <= 1e-12 && round_trip <= 1e-12 && split <= 1e-12 && para <= 1e-12 && frame_err <= 1e-10 &&
             elapsed < 60.0;
  o.detail = "partition " + fmt(partition) + ", round trip " + fmt(round_trip) + ", split " + fmt(split) +
             ", paraproducts " + fmt(para) + ", frame " + fmt(frame_err) + ", " + fmt(elapsed) + " s";
  return o;
}

Outcome calderon() {
  const CalderonProfile psi;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double radius = std::pow(10.0, -3.0 + 6.0 * i / 19.0);
    worst = std::max(worst, std::fabs(psi.reproducing_integral(radius) - 1.0));
  }
  return {worst <= 1e-10, "max deviation " + fmt(worst) + " over 20 radii"};
}

Outcome support_theorems() {
  const GridSpec spec{2, 256, 8.0 * kPi};
  const ParabolicFrame frame(spec);
  const int count = frame.direction_count();
  long violations = 0;
  for (int s = 0; s < 8; ++s) {
    const int l = s * count / 8;
    const Point w = frame.directions().direction(l);
    const SpectralMultiplier m = frame.phi_multiplier(l);
    for (std::size_t i = 0; i < spec.count(); ++i) {
      const Point z = spec.frequency(i);
      const double r = spec.frequency_norm(i);
      const double chord = r > 0 ? std::hypot(z[0] / r - w[0], z[1] / r - w[1]) : 0.0;
      if ((r < 0.125 || chord > 2.0 / std::sqrt(r)) && m[i] != 0.0) ++violations;
    }
  }

  bool ok = violations == 0;
  std::string detail = "frame violations " + std::to_string(violations);
  for (int k : {4, 6, 8}) {
    const GridSpec grid = band_support_grid(k);
    const GridField fk = testing_support::band_piece(grid, k, 21);
    const BandSupportReport good = verify_band_support(testing_support::compliant_coefficient(grid, k, 22), fk, k);
    const BandSupportReport bad = verify_band_support(testing_support::adversarial_coefficient(grid, k), fk, k);
    ok = ok && good.precondition_ok && good.holds && good.leak <= 1e-12 && !bad.holds;
    detail += "; k=" + std::to_string(k) + " leak " + fmt(good.leak) + " adversarial leak " + fmt(bad.leak) +
              (bad.holds ? " (not detected)" : " (detected)");
  }
  return {ok, detail};
}

Outcome c_sigma_closed_form() {
  const double closed = 1.0 / std::sqrt(2.0 * kPi);
  const double err = std::fabs(c_sigma(16.0) - closed) / closed;
  const double circle = std::fabs(c_sigma_circle(16.0, 8192) - closed) / closed;
  return {std::max(err, circle) <= 1e-8, "relative error " + fmt(err) + ", full-circle rule " + fmt(circle)};
}

Outcome anisotropic_stability() {
  std::vector<std::vector<AnisotropicEntry>> runs;
  for (int n : {64, 128, 256}) runs.push_back(ParabolicFrame(GridSpec{2, n, 8.0 * kPi}).anisotropic_bound_check(2));
  double worst = 1.0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    for (std::size_t e = 0; e < runs[r].size(); ++e) {
      const double a = runs[r - 1][e].sup, b = runs[r][e].sup;
      worst = std::max(worst, std::max(a, b) / std::min(a, b));
    }
  }
  return {worst <= 1.5, "largest sup change factor " + fmt(worst) + " over 6 multi-indices"};
}

Outcome l2_equivalence() {
  std::vector<std::pair<double, double>> bands;
  for (int n : {64, 128, 256}) {
    const GridSpec spec{2, n, 32.0 * kPi};
    const ParabolicFrame frame(spec);
    double lo = 1e300, hi = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      // Same lattice modes as |xi| < 2 while staying strictly below the N = 64 Nyquist frequency.
      const GridField f = random_band_limited(spec, 0.0, 2.0 - 0.5 * spec.frequency_step(), 1000 + seed);
      const double ratio = hpfio_norm(f, 0.0, 2.0, frame) / l2_norm(f);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    bands.emplace_back(lo, hi);
  }
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    detail += (i ? ", " : "") + std::string("[") + fmt(bands[i].first) + ", " + fmt(bands[i].second) + "]";
    if (i > 0)
      worst = std::max({worst, drift(bands[i - 1].first, bands[i].first), drift(bands[i - 1].second, bands[i].second)});
  }
  return {worst <= 0.2 && bands.front().first > 0.0, "bands " + detail + ", endpoint drift " + fmt(worst)};
}

Outcome sobolev_embedding() {
  const double p = 4.0, sp = sobolev_s(p, 2);
  std::vector<std::pair<double, double>> constants;
  for (int n : {64, 128, 256}) {
    const GridSpec spec{2, n, 8.0 * kPi};
    const ParabolicFrame frame(spec);
    FamilyOptions fo;
    fo.bands = {1, 2, 3};
    fo.frame_directions = frame.direction_count();
    double upper = 0.0, lower = 0.0;
    for (const auto& m : build_test_family(spec, fo)) {
      const double h = hpfio_norm(m.field, 0.0, p, frame);
      upper = std::max(upper, h / classical_norm(m.field, sp, p));
      lower = std::max(lower, classical_norm(m.field, -sp, p) / h);
    }
    constants.emplace_back(upper, lower);
  }
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    detail += (i ? ", " : "") + std::string("(") + fmt(constants[i].first) + ", " + fmt(constants[i].second) + ")";
    if (i > 0)
      worst = std::max({worst, drift(constants[i - 1].first, constants[i].first),
                        drift(constants[i - 1].second, constants[i].second)});
  }
  const bool finite = std::all_of(constants.begin(), constants.end(),
                                  [](const auto& c) { return std::isfinite(c.first) && std::isfinite(c.second); });
  return {finite && worst <= 0.2, "constants " + detail + ", drift " + fmt(worst)};
}

Outcome operator_agreement() {
  const GridSpec spec{2, 64, kPi};
  RoughChirpOptions ro;
  ro.r = 2.0;
  ro.delta = 0.5;
  const SeparableSymbol sym = rough_chirp(spec, ro);
  const GridField f = testing_support::noise(spec, 31);
  const double agree = relative_l2_error(apply_dense(sym.densify(), f), apply_separable(sym, f));

  const ParabolicFrame frame(spec);
  FamilyOptions fo;
  fo.bands = {2, 3, 4};
  fo.frame_directions = frame.direction_count();
  const double two[] = {2.0};
  const auto rep = operator_norm_probe(make_operator(sym), 0.0, 0.0, two, frame, build_test_family(spec, fo));
  const double power = rep.power ? rep.power->norm : 0.0;
  const bool ok = agree <= 1e-10 && rep.power && rep.l2_sup <= power * (1.0 + 1e-6);
  return {ok, "dense vs separable " + fmt(agree) + ", probe sup " + fmt(rep.l2_sup) + " vs power " + fmt(power)};
}

Outcome flagship() {
  const auto start = Clock::now();
  const RunConfig config;
  const BenchOutput out = run_bench(config);
  const double elapsed = seconds_since(start);
  bool ok = elapsed <= 600.0;
  std::string detail;
  for (const auto& t : out.summary.at("trends")) {
    const double slope = t.at("slope"), growth = t.at("growth");
    ok = ok && slope >= -0.2 && slope <= 0.2 && growth <= 2.0;
    detail += "p=" + fmt(t.at("p").get<double>()) + " slope " + fmt(slope) + " growth " + fmt(growth) + "; ";
  }
  ok = ok && out.passed;
  return {ok, detail + fmt(elapsed) + " s"};
}

Outcome budget_examples() {
  bool ok = true;
  const ExponentBudget a = budget(2.0, 0.0, 4.0, 2);
  ok = ok && a.tau == 0.0 && a.gamma == 0.625 && a.sigma == 0.0;
  for (double r : {0.5, 1.0, 2.0, 3.0})
    for (double delta : {0.0, 0.25, 0.5}) {
      const ExponentBudget b = budget(r, delta, 2.0, 2);
      ok = ok && b.s_p == 0.0 && b.tau == 0.0 && b.sigma == 0.0 && b.rho == 0.0;
    }
  const ExponentBudget c = budget(0.5, 0.5, 4.0, 2);
  ok = ok && c.tau == 0.125 && c.gamma == 0.75 && c.rho == 0.125;
  return {ok, "tau/gamma/sigma/rho equalities on the three worked cases"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact identities", exact_identities},
      {"Calderon normalization", calderon},
      {"support hard zeros", support_theorems},
      {"c_sigma closed form", c_sigma_closed_form},
      {"anisotropic bound stability", anisotropic_stability},
      {"L2 equivalence band", l2_equivalence},
      {"Sobolev embedding constants", sobolev_embedding},
      {"operator agreement and power bound", operator_agreement},
      {"flagship boundedness trend", flagship},
      {"budget arithmetic", budget_examples},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::printf("criterion %zu [%s]: %s (%s)\n", i + 1, criteria[i].first.c_str(), o.passed ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

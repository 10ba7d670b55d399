#include "fiotk/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fiotk/dyadic.hpp"
#include "fiotk/error.hpp"
#include "fiotk/field_io.hpp"
#include "fiotk/fourier.hpp"
#include "fiotk/norms.hpp"
#include "fiotk/pseudo_op.hpp"
#include "fiotk/symbol_calculus.hpp"

namespace fiotk {

using nlohmann::json;

namespace {

json grid_json(const GridSpec& g) { return json{{"n", g.dim}, {"N", g.size}, {"L", g.period}}; }

GridSpec grid_from(const json& j, GridSpec g) {
  g.dim = j.value("n", g.dim);
  g.size = j.value("N", g.size);
  g.period = j.value("L", g.period);
  return g;
}

template <typename T>
void read_if(const json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

CheckResult check(std::string name, double measured, double tolerance, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.passed = std::isfinite(measured) && measured <= tolerance;
  c.detail = std::move(detail);
  return c;
}

CheckResult failure(std::string name, const std::string& why) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = false;
  c.measured = std::nan("");
  c.detail = why;
  return c;
}

GridField random_field(const GridSpec& spec, std::uint64_t seed) {
  return random_band_limited(spec, 0.0, spec.frequency_step() * (spec.size / 2 - 1), seed);
}

}  // namespace

void RunConfig::validate() const {
  grid.validate();
  DyadicProfile check_eps(eps);
  (void)check_eps;
  require(frame.directions >= 0, ErrorKind::Parameter, "direction count must be nonnegative");
  require(frame.tau_nodes >= 8, ErrorKind::Parameter, "tau_nodes must be at least 8");
  for (double pv : p) require(std::isfinite(pv) && pv > 1.0, ErrorKind::Parameter, "p must lie in (1, inf)");
  for (double sv : s) require(std::isfinite(sv), ErrorKind::Parameter, "s must be finite");
  require(r > 0.0, ErrorKind::Parameter, "r must be positive");
  require(delta >= 0.0 && delta <= 0.5, ErrorKind::Parameter, "delta must lie in [0, 1/2]");
  require(eps_slack > 0.0, ErrorKind::Parameter, "eps_slack must be positive");
  bench.grid.validate();
  require(bench.bands.size() >= 2, ErrorKind::Parameter, "bench needs at least two bands");
  require(bench.r > 0.0, ErrorKind::Parameter, "bench r must be positive");
  require(bench.delta >= 0.0 && bench.delta <= 0.5, ErrorKind::Parameter, "bench delta must lie in [0, 1/2]");
}

json RunConfig::to_json() const {
  return json{
      {"grid", grid_json(grid)},
      {"frame", {{"directions", frame.directions}, {"tau_nodes", frame.tau_nodes}, {"eps", eps}}},
      {"experiment", experiment},
      {"norm", {{"p", p}, {"s", s}, {"r", r}, {"delta", delta}, {"m", m}, {"eps_slack", eps_slack}}},
      {"seed", seed},
      {"output", {{"csv", csv_path}, {"json", json_path}}},
      {"tolerances", {{"exact", tol_exact}, {"frame", tol_frame}, {"calderon", tol_calderon}}},
      {"bench",
       {{"grid", grid_json(bench.grid)},
        {"bands", bench.bands},
        {"r", bench.r},
        {"delta", bench.delta},
        {"s", bench.s},
        {"shift", bench.shift},
        {"symbol_seed", bench.symbol_seed},
        {"identity_row", bench.identity_row},
        {"power_check", bench.power_check},
        {"max_slope", bench.max_slope},
        {"max_growth", bench.max_growth}}},
  };
}

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig c;
  try {
    require(doc.is_object(), ErrorKind::InvalidInput, "configuration must be a JSON object");
    static const std::vector<std::string> known{"grid", "frame", "experiment", "norm", "seed",
                                                "output", "tolerances", "bench"};
    for (const auto& [key, value] : doc.items())
      require(std::find(known.begin(), known.end(), key) != known.end(), ErrorKind::InvalidInput,
              "unknown configuration key '" + key + "'");
    if (doc.contains("grid")) c.grid = grid_from(doc.at("grid"), c.grid);
    if (doc.contains("frame")) {
      const auto& f = doc.at("frame");
      read_if(f, "directions", c.frame.directions);
      read_if(f, "tau_nodes", c.frame.tau_nodes);
      read_if(f, "eps", c.eps);
    }
    read_if(doc, "experiment", c.experiment);
    if (doc.contains("norm")) {
      const auto& n = doc.at("norm");
      read_if(n, "p", c.p);
      read_if(n, "s", c.s);
      read_if(n, "r", c.r);
      read_if(n, "delta", c.delta);
      read_if(n, "m", c.m);
      read_if(n, "eps_slack", c.eps_slack);
    }
    read_if(doc, "seed", c.seed);
    if (doc.contains("output")) {
      read_if(doc.at("output"), "csv", c.csv_path);
      read_if(doc.at("output"), "json", c.json_path);
    }
    if (doc.contains("tolerances")) {
      const auto& t = doc.at("tolerances");
      read_if(t, "exact", c.tol_exact);
      read_if(t, "frame", c.tol_frame);
      read_if(t, "calderon", c.tol_calderon);
    }
    if (doc.contains("bench")) {
      const auto& b = doc.at("bench");
      if (b.contains("grid")) c.bench.grid = grid_from(b.at("grid"), c.bench.grid);
      read_if(b, "bands", c.bench.bands);
      read_if(b, "r", c.bench.r);
      read_if(b, "delta", c.bench.delta);
      read_if(b, "s", c.bench.s);
      read_if(b, "shift", c.bench.shift);
      read_if(b, "symbol_seed", c.bench.symbol_seed);
      read_if(b, "identity_row", c.bench.identity_row);
      read_if(b, "power_check", c.bench.power_check);
      read_if(b, "max_slope", c.bench.max_slope);
      read_if(b, "max_growth", c.bench.max_growth);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed configuration: ") + e.what());
  }
  return c;
}

std::string RunConfig::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open configuration " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return RunConfig::from_json(doc);
}

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json SuiteReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    json item{{"name", c.name}, {"passed", c.passed}, {"tolerance", c.tolerance}};
    item["measured"] = std::isfinite(c.measured) ? json(c.measured) : json(nullptr);
    if (!c.detail.empty()) item["detail"] = c.detail;
    list.push_back(item);
  }
  return json{{"passed", passed()}, {"checks", list}};
}

json provenance(const RunConfig& config) {
  return json{{"toolkit_version", kToolkitVersion}, {"config_hash", config.hash()}, {"config", config.to_json()}};
}

SuiteReport run_calibration(const RunConfig& config) {
  config.validate();
  SuiteReport report;
  const GridSpec& spec = config.grid;
  const LittlewoodPaleyFamily fam(spec, config.eps);
  const DyadicProfile& prof = fam.profile();

  double partition = 0.0, dilation = 0.0, tilde = 0.0, low = 0.0;
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const double r = spec.frequency_norm(i);
    double sum = 0.0;
    for (int j = 0; j <= fam.max_band(); ++j) {
      const double w = fam.weight(j, i);
      sum += w;
      if (j >= 2) dilation = std::max(dilation, std::fabs(w - prof.psi(1, std::ldexp(r, 1 - j))));
      tilde = std::max(tilde, std::fabs(prof.psi_tilde(j, r) * w - w));
    }
    partition = std::max(partition, std::fabs(sum - 1.0));
    const double w0 = fam.weight(0, i);
    low = std::max(low, std::fabs(DyadicProfile::low_cutoff(r) * w0 - w0));
  }
  report.checks.push_back(check("lp_partition_of_unity", partition, config.tol_exact));
  report.checks.push_back(check("lp_dilation_consistency", dilation, config.tol_exact));
  report.checks.push_back(check("tilde_family_identity", tilde, 0.0));
  report.checks.push_back(check("low_cutoff_identity", low, 0.0));
  report.checks.push_back(check("square_function_floor", 1.0 / std::sqrt(2.0) - fam.square_function_floor(), 1e-15,
                                "floor = " + format_number(fam.square_function_floor())));

  const CalderonProfile psi;
  double calderon = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double r = std::pow(10.0, -2.0 + 5.0 * i / 19.0);
    calderon = std::max(calderon, std::fabs(psi.reproducing_integral(r) - 1.0));
  }
  report.checks.push_back(check("calderon_normalization", calderon, config.tol_calderon));
  const double c16 = c_sigma(16.0);
  report.checks.push_back(
      check("c_sigma_closed_form", std::fabs(c16 * std::sqrt(2.0 * kPi) - 1.0), 1e-8));

  if (spec.dim != 2) {
    report.checks.push_back(failure("frame_construction", "directional frame requires n = 2"));
    return report;
  }
  try {
    const ParabolicFrame frame(spec, config.frame);
    const int count = frame.direction_count();
    double support = 0.0;
    for (int q = 0; q < 8; ++q) {
      const int l = (q * count) / 8;
      const Point omega = frame.directions().direction(l);
      std::vector<char> nonzero(spec.count(), 0);
      for (const auto& e : frame.lattice_phi(l)) nonzero[e.index] = e.value > 0.0;
      for (std::size_t i = 0; i < spec.count(); ++i) {
        if (!nonzero[i]) continue;
        const Point z = spec.frequency(i);
        const double r = std::hypot(z[0], z[1]);
        const double chord = std::hypot(z[0] / r - omega[0], z[1] / r - omega[1]);
        if (r < 0.125 || chord > 2.0 / std::sqrt(r)) support += 1.0;
      }
    }
    report.checks.push_back(check("frame_support_violations", support, 0.0));

    GridField f = random_band_limited(spec, 0.5, spec.frequency_step() * (spec.size / 2 - 1), config.seed);
    const GridField back = frame.synthesize(frame.analyze(f));
    report.checks.push_back(check("frame_reconstruction", relative_l2_error(back, f), config.tol_frame));

    double lo = INFINITY, hi = 0.0;
    const auto& m = frame.reproducing_multiplier();
    for (std::size_t i = 0; i < spec.count(); ++i) {
      const double r = spec.frequency_norm(i);
      if (r < 1.0 || r > 0.5 * spec.max_frequency()) continue;
      const double v = m[i] * std::pow(r, -0.25);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CheckResult growth = check("reproducing_growth_band", hi / lo, 1e6,
                               "m |xi|^{-1/4} in [" + format_number(lo) + ", " + format_number(hi) + "]");
    if (!(lo > 0.0)) growth.passed = hi == 0.0;
    report.checks.push_back(growth);
  } catch (const Error& e) {
    report.checks.push_back(failure("frame_construction", e.what()));
  }
  return report;
}

SuiteReport run_verification(const RunConfig& config) {
  SuiteReport report = run_calibration(config);
  const GridSpec& spec = config.grid;
  const LittlewoodPaleyFamily fam(spec, config.eps);
  const GridField f = random_field(spec, config.seed);
  const GridField g = random_field(spec, config.seed + 1);

  report.checks.push_back(
      check("transform_round_trip", relative_l2_error(inverse_transform(forward_transform(f)), f), config.tol_exact));
  const auto m1 = SpectralMultiplier::radial(spec, [](double r) { return std::cos(r) + 2.0; });
  const auto m2 = SpectralMultiplier::radial(spec, [](double r) { return 1.0 / (1.0 + r); });
  report.checks.push_back(check("multiplier_composition",
                                relative_l2_error(apply_multiplier(apply_multiplier(f, m1), m2),
                                                  apply_multiplier(f, m1 * m2)),
                                config.tol_exact));
  report.checks.push_back(check("bessel_group_law",
                                relative_l2_error(bessel_potential(bessel_potential(f, 1.5), -3.5),
                                                  bessel_potential(f, -2.0)),
                                1e-11));
  GridField sum(spec);
  for (const auto& band : fam.project_all(f)) sum += band;
  report.checks.push_back(check("lp_reconstruction", relative_l2_error(sum, f), config.tol_exact));

  const Paraproducts pp = paraproducts(g, f, fam);
  report.checks.push_back(check("paraproduct_completeness",
                                relative_max_error(pp.high_high + pp.high_low + pp.low_high, pointwise_product(g, f)),
                                config.tol_exact));

  const GridField b = random_band_limited(spec, 0.0, 1.0, config.seed + 2);
  const auto coeff = std::vector<GridField>{b, identity_symbol(spec).slice(Point{})};
  const DenseSymbol a = weighted_sum_symbol(coeff, {0.5, -0.5}, SymbolClass{2.0, 0.5, 0.0});
  double split = 0.0;
  for (double gamma : {0.5, 0.625, 0.75, 1.0}) {
    const SmoothingSplit sp = smooth_split(a, gamma, config.eps);
    for (const Point& eta : {Point{0.0, 0.0, 0.0}, Point{0.7, 0.2, 0.0}, Point{1.5, -1.0, 0.0}}) {
      const GridField whole = a.slice(eta);
      split = std::max(split, relative_max_error(sp.sharp.slice(eta) + sp.flat.slice(eta), whole));
    }
  }
  report.checks.push_back(check("smoothing_split_exact", split, config.tol_exact));

  const ExponentBudget b1 = budget(2.0, 0.0, 4.0, 2, config.eps_slack);
  const ExponentBudget b2 = budget(0.5, 0.5, 4.0, 2, config.eps_slack);
  const double budget_error = std::fabs(b1.tau) + std::fabs(b1.gamma - 0.625) + std::fabs(b1.sigma) +
                              std::fabs(b2.tau - 0.125) + std::fabs(b2.gamma - 0.75) + std::fabs(b2.rho - 0.125);
  report.checks.push_back(check("budget_worked_examples", budget_error, 0.0));

  // Dense and separable application on a small grid to keep the quadratic path cheap.
  GridSpec small{2, 32, spec.period};
  if (spec.dim == 2) {
    RoughChirpOptions opts;
    opts.r = config.r;
    opts.delta = config.delta;
    opts.seed = config.seed;
    opts.eps = config.eps;
    const SeparableSymbol sep = rough_chirp(small, opts);
    const GridField h = random_field(small, config.seed + 3);
    report.checks.push_back(check("dense_separable_agreement",
                                  relative_l2_error(apply_dense(sep.densify(), h), apply_separable(sep, h)), 1e-10));

    const int k = 4;
    const GridSpec grid = band_support_grid(k);
    const DyadicProfile prof(config.eps);
    double lo = 0.25 * std::pow(2.0, 0.5 * (k - 2)), hi = std::pow(2.0, 0.75 * k - 3.0);
    const double step = grid.frequency_step();
    GridField ak(grid);
    for (int m = static_cast<int>(std::ceil(lo / step)); m * step <= hi; ++m) {
      for (std::size_t i = 0; i < ak.size(); ++i) ak[i] += std::cos(m * step * grid.position(i)[0]);
    }
    const GridField fk = apply_multiplier(random_band_limited(grid, 0.0, std::ldexp(1.0, k), config.seed),
                                          SpectralMultiplier::radial(grid, [&prof, k](double r) { return prof.chi(k, r); }));
    const BandSupportReport rep = verify_band_support(ak, fk, k);
    CheckResult c = check("band_support_compliant", rep.leak, 1e-12);
    c.passed = c.passed && rep.precondition_ok;
    report.checks.push_back(c);
  }

  const ParabolicFrame frame(spec, config.frame);
  const double p = config.p.empty() ? 2.0 : config.p.front();
  const double nf = hpfio_norm(f, 0.0, p, frame), ng = hpfio_norm(g, 0.0, p, frame);
  const double nfg = hpfio_norm(f + g, 0.0, p, frame);
  report.checks.push_back(check("hpfio_triangle", nfg - (nf + ng), 1e-10 * (nf + ng)));
  report.checks.push_back(check("hpfio_homogeneity",
                                std::fabs(hpfio_norm(cplx(-2.5, 1.0) * f, 0.0, p, frame) - std::abs(cplx(-2.5, 1.0)) * nf),
                                1e-10 * nf));
  return report;
}

BenchOutput run_bench(const RunConfig& config) {
  config.validate();
  const BenchSettings& bs = config.bench;
  const GridSpec& spec = bs.grid;
  require(spec.dim == 2, ErrorKind::Parameter, "the boundedness bench runs at n = 2");
  const int lo_band = *std::min_element(bs.bands.begin(), bs.bands.end());
  const int hi_band = *std::max_element(bs.bands.begin(), bs.bands.end());

  std::vector<double> ps = config.p;
  json budgets = json::array();
  const double s_out = bs.s;
  const double s_in = bs.s + bs.shift;
  for (double p : ps) {
    const ExponentBudget b = budget(bs.r, bs.delta, p, 2, config.eps_slack);
    require(b.admissible(s_out), ErrorKind::Parameter,
            "s = " + format_number(s_out) + " outside the admissible interval for p = " + format_number(p));
    budgets.push_back({{"p", p}, {"s_p", b.s_p}, {"tau", b.tau}, {"gamma", b.gamma}, {"sigma", b.sigma},
                       {"rho", b.rho}, {"s_lower", b.s_lower}, {"s_upper", b.s_upper}});
  }

  const ParabolicFrame frame(spec, config.frame);
  FamilyOptions fo;
  fo.bands = bs.bands;
  fo.seed = config.seed;
  fo.eps = config.eps;
  fo.frame_directions = frame.direction_count();
  const auto family = build_test_family(spec, fo);

  RoughChirpOptions ro;
  ro.r = bs.r;
  ro.delta = bs.delta;
  ro.seed = bs.symbol_seed;
  ro.eps = config.eps;
  const SeparableSymbol symbol = rough_chirp(spec, ro);
  const LinearOperator op = make_operator(symbol);
  ProbeOptions po;
  po.power_check = bs.power_check;
  po.seed = config.seed;
  const BoundednessReport rep = operator_norm_probe(op, s_in, s_out, ps, frame, family, po);

  std::ostringstream csv;
  csv << "p,s_in,s_out,k,member,in_norm,out_norm,ratio\n";
  auto emit = [&csv](const ProbeRow& row, const std::string& prefix) {
    csv << format_number(row.p) << ',' << format_number(row.s_in) << ',' << format_number(row.s_out) << ','
        << row.band << ',' << prefix << row.member << ',' << format_number(row.in_norm) << ','
        << format_number(row.out_norm) << ',' << format_number(row.ratio) << '\n';
  };
  for (const auto& row : rep.rows) emit(row, "");

  BenchOutput out;
  out.passed = true;
  json trends = json::array();
  for (double p : ps) {
    const auto& profile = rep.band_profile.at(p);
    const double slope = trend_slope(profile, lo_band, hi_band);
    const double growth = growth_factor(profile, lo_band, hi_band);
    const bool ok = std::fabs(slope) <= bs.max_slope && growth <= bs.max_growth;
    out.passed = out.passed && ok;
    json bands = json::object();
    for (const auto& [k, v] : profile) bands[std::to_string(k)] = v;
    trends.push_back({{"p", p}, {"r", bs.r}, {"delta", bs.delta}, {"slope", slope}, {"growth", growth},
                      {"band_profile", bands}, {"passed", ok}});
  }
  json summary{{"provenance", provenance(config)},
               {"grid", grid_json(spec)},
               {"frame_directions", frame.direction_count()},
               {"symbol", symbol.name()},
               {"s_in", s_in},
               {"s_out", s_out},
               {"budgets", budgets},
               {"trends", trends},
               {"l2_probe_sup", rep.l2_sup}};
  if (rep.power) {
    const bool ok = rep.l2_sup <= rep.power->norm * (1.0 + 1e-6);
    out.passed = out.passed && ok;
    summary["power_iteration"] = {{"norm", rep.power->norm},
                                  {"iterations", rep.power->iterations},
                                  {"converged", rep.power->converged},
                                  {"probe_within_bound", ok}};
  }
  if (bs.identity_row) {
    const LinearOperator id{spec, "identity", [](const GridField& f) { return f; },
                            [](const GridField& f) { return f; }};
    ProbeOptions none;
    none.power_check = false;
    const BoundednessReport idrep = operator_norm_probe(id, s_out, s_out, ps, frame, family, none);
    double deviation = 0.0;
    for (const auto& row : idrep.rows) {
      deviation = std::max(deviation, std::fabs(row.ratio - 1.0));
      emit(row, "identity/");
    }
    const bool ok = deviation <= 1e-10;
    out.passed = out.passed && ok;
    summary["identity"] = {{"max_deviation", deviation}, {"passed", ok}};
  }
  summary["passed"] = out.passed;
  out.csv = csv.str();
  out.summary = summary;
  return out;
}

DenseSymbol LoadedSymbol::as_dense() const {
  if (dense) return *dense;
  require(separable.has_value(), ErrorKind::InvalidInput, "empty symbol");
  return separable->densify();
}

LoadedSymbol symbol_from_json(const json& doc, const GridSpec& spec, const std::string& base_dir) {
  LoadedSymbol out;
  auto field_at = [&](const std::string& rel) {
    std::filesystem::path p(rel);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    GridField f = read_field(p.string());
    require(f.spec() == spec, ErrorKind::Dimension, "symbol field " + rel + " is on a different grid");
    return f;
  };
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    SymbolClass cls{doc.value("r", 1.0), doc.value("m", 0.0), doc.value("delta", 0.0)};
    if (kind == "preset") {
      const std::string name = doc.at("name").get<std::string>();
      if (name == "identity") {
        out.dense = identity_symbol(spec);
      } else if (name == "multiplier_bessel") {
        out.dense = bessel_symbol(spec, doc.value("m", 0.0));
      } else if (name == "multiplication") {
        out.dense = multiplication_symbol(field_at(doc.at("field").get<std::string>()), cls.r);
      } else if (name == "rough_chirp") {
        RoughChirpOptions o;
        o.r = doc.value("r", o.r);
        o.delta = doc.value("delta", o.delta);
        o.seed = doc.value("seed", o.seed);
        o.eps = doc.value("eps", o.eps);
        out.separable = rough_chirp(spec, o);
      } else {
        fail(ErrorKind::InvalidInput, "unknown symbol preset '" + name + "'");
      }
    } else if (kind == "separable") {
      std::vector<SeparableSymbol::Term> terms;
      for (const auto& t : doc.at("terms")) terms.push_back({t.at("band").get<int>(), field_at(t.at("field").get<std::string>())});
      out.separable = SeparableSymbol(spec, cls, std::move(terms), doc.value("eps", 0.125));
    } else if (kind == "dense") {
      std::vector<GridField> coeffs;
      std::vector<double> orders;
      for (const auto& t : doc.at("terms")) {
        coeffs.push_back(field_at(t.at("field").get<std::string>()));
        orders.push_back(t.value("order", 0.0));
      }
      out.dense = weighted_sum_symbol(coeffs, orders, cls);
    } else {
      fail(ErrorKind::InvalidInput, "unknown symbol kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed symbol descriptor: ") + e.what());
  }
  return out;
}

LoadedSymbol load_symbol(const std::string& path, const GridSpec& spec) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open symbol descriptor " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return symbol_from_json(doc, spec, std::filesystem::path(path).parent_path().string());
}

}  // namespace fiotk

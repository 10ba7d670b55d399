#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fiotk/dyadic.hpp"
#include "fiotk/error.hpp"
#include "fiotk/field_io.hpp"
#include "fiotk/fourier.hpp"
#include "fiotk/harness.hpp"
#include "fiotk/norms.hpp"
#include "fiotk/pseudo_op.hpp"
#include "fiotk/symbol_calculus.hpp"

using namespace fiotk;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kUsage = 2, kIo = 3 };

struct Overrides {
  std::string config_path;
  std::optional<int> dim, size, directions;
  std::optional<double> period, eps;
  std::optional<std::uint64_t> seed;
  std::string json_out;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--n", o.dim, "spatial dimension");
  cmd->add_option("--N", o.size, "grid points per axis");
  cmd->add_option("--L", o.period, "box side length");
  cmd->add_option("--directions", o.directions, "direction count (0 selects the default)");
  cmd->add_option("--eps", o.eps, "Littlewood-Paley margin");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--json", o.json_out, "write the JSON report here instead of stdout");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (o.dim) c.grid.dim = *o.dim;
  if (o.size) c.grid.size = *o.size;
  if (o.period) c.grid.period = *o.period;
  if (o.directions) c.frame.directions = *o.directions;
  if (o.eps) c.eps = *o.eps;
  if (o.seed) c.seed = *o.seed;
  if (!o.json_out.empty()) c.json_path = o.json_out;
  c.validate();
  return c;
}

void emit_json(const json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  out << doc.dump(2) << '\n';
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::InvalidInput:
    case ErrorKind::Parameter:
    case ErrorKind::Dimension: return kUsage;
    default: return kInvariant;
  }
}

int suite(const Overrides& o, bool full) {
  const RunConfig c = resolve(o);
  const SuiteReport rep = full ? run_verification(c) : run_calibration(c);
  json doc = rep.to_json();
  doc["provenance"] = provenance(c);
  emit_json(doc, c.json_path);
  return rep.passed() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-grid toolkit for rough symbols, dyadic and directional decompositions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  Overrides common;
  auto* calibrate = app.add_subcommand("calibrate", "verify the construction-level invariants");
  add_common(calibrate, common);
  auto* verify = app.add_subcommand("verify", "run the full invariant suite");
  add_common(verify, common);

  auto* norm_cmd = app.add_subcommand("norm", "norms of a field file");
  add_common(norm_cmd, common);
  std::string field_path;
  double s = 0.0, p = 2.0, r = 1.0;
  norm_cmd->add_option("--field", field_path, "FIOF field file")->required();
  norm_cmd->add_option("--s", s, "smoothness");
  norm_cmd->add_option("--p", p, "integrability exponent in (1, inf)");
  norm_cmd->add_option("--r", r, "Zygmund regularity");

  auto* apply_cmd = app.add_subcommand("apply", "apply a symbol to a field");
  add_common(apply_cmd, common);
  std::string symbol_path, out_path, path_kind = "auto";
  apply_cmd->add_option("--symbol", symbol_path, "JSON symbol descriptor")->required();
  apply_cmd->add_option("--field", field_path, "input FIOF field")->required();
  apply_cmd->add_option("--out", out_path, "output FIOF field")->required();
  apply_cmd->add_option("--path", path_kind, "auto, dense or separable")
      ->check(CLI::IsMember({"auto", "dense", "separable"}));

  auto* smooth_cmd = app.add_subcommand("smooth", "symbol smoothing split diagnostics");
  add_common(smooth_cmd, common);
  double gamma = 0.75;
  std::string out_sharp, out_flat;
  smooth_cmd->add_option("--symbol", symbol_path, "JSON symbol descriptor")->required();
  smooth_cmd->add_option("--gamma", gamma, "split parameter in [delta, 1]");
  smooth_cmd->add_option("--field", field_path, "optional field to which both parts are applied");
  smooth_cmd->add_option("--out-sharp", out_sharp, "output for the smooth part applied to the field");
  smooth_cmd->add_option("--out-flat", out_flat, "output for the rough remainder applied to the field");

  auto* bench_cmd = app.add_subcommand("bench-boundedness", "flagship boundedness sweep");
  add_common(bench_cmd, common);
  std::string csv_path;
  bench_cmd->add_option("--csv", csv_path, "CSV output path (stdout when empty and no JSON path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (calibrate->parsed()) return suite(common, false);
    if (verify->parsed()) return suite(common, true);

    if (norm_cmd->parsed()) {
      RunConfig c = resolve(common);
      const GridField f = read_field(field_path);
      c.grid = f.spec();
      const LittlewoodPaleyFamily fam(f.spec(), c.eps);
      json doc{{"lp", lp_norm(f, p)},
               {"sobolev", classical_norm(f, s, p)},
               {"zygmund", zygmund_norm(f, r, fam)},
               {"s", s},
               {"p", p},
               {"r", r}};
      if (f.spec().dim == 2) {
        const ParabolicFrame frame(f.spec(), c.frame);
        doc["hpfio"] = hpfio_norm(f, s, p, frame);
      } else {
        doc["hpfio"] = nullptr;
      }
      doc["provenance"] = provenance(c);
      emit_json(doc, c.json_path);
      return kOk;
    }

    if (apply_cmd->parsed()) {
      RunConfig c = resolve(common);
      const GridField f = read_field(field_path);
      c.grid = f.spec();
      const LoadedSymbol sym = load_symbol(symbol_path, f.spec());
      GridField g;
      std::string used;
      if (path_kind == "separable" || (path_kind == "auto" && sym.separable)) {
        require(sym.separable.has_value(), ErrorKind::InvalidInput, "symbol has no separable form");
        g = apply_separable(*sym.separable, f);
        used = "separable";
      } else {
        g = apply_dense(sym.as_dense(), f);
        used = "dense";
      }
      write_field(out_path, g);
      emit_json(json{{"output", out_path}, {"path", used}, {"provenance", provenance(c)}}, c.json_path);
      return kOk;
    }

    if (smooth_cmd->parsed()) {
      RunConfig c = resolve(common);
      std::optional<GridField> f;
      if (!field_path.empty()) {
        f = read_field(field_path);
        c.grid = f->spec();
      }
      const DenseSymbol a = load_symbol(symbol_path, c.grid).as_dense();
      const SmoothingSplit split = smooth_split(a, gamma, c.eps);
      const LittlewoodPaleyFamily fam(c.grid, c.eps);
      double residual = 0.0;
      for (const Point& eta : {Point{0, 0, 0}, Point{0.6, 0.3, 0}, Point{1.7, -0.4, 0}}) {
        const GridField whole = a.slice(eta);
        residual = std::max(residual, relative_max_error(split.sharp.slice(eta) + split.flat.slice(eta), whole));
      }
      auto table = [&](const DenseSymbol& sym) {
        json rows = json::array();
        for (const auto& e : estimate_seminorms(sym, 1, fam))
          rows.push_back({{"alpha", {e.alpha[0], e.alpha[1]}}, {"pointwise", e.pointwise},
                          {"zygmund", e.zygmund}, {"value", e.value}});
        return rows;
      };
      json doc{{"gamma", gamma},
               {"split_residual", residual},
               {"sharp_order", split.sharp.symbol_class().m},
               {"flat_order", split.flat.symbol_class().m},
               {"sharp_seminorms", table(split.sharp)},
               {"flat_seminorms", table(split.flat)}};
      if (f) {
        if (!out_sharp.empty()) write_field(out_sharp, apply_dense(split.sharp, *f));
        if (!out_flat.empty()) write_field(out_flat, apply_dense(split.flat, *f));
      }
      doc["provenance"] = provenance(c);
      emit_json(doc, c.json_path);
      return residual <= c.tol_exact ? kOk : kInvariant;
    }

    if (bench_cmd->parsed()) {
      RunConfig c = resolve(common);
      if (!csv_path.empty()) c.csv_path = csv_path;
      const BenchOutput out = run_bench(c);
      if (!c.csv_path.empty()) {
        std::ofstream csv(c.csv_path);
        if (!csv) fail(ErrorKind::Io, "cannot write " + c.csv_path);
        csv << out.csv;
      }
      if (c.csv_path.empty() && c.json_path.empty()) {
        std::cout << out.csv;
      } else {
        emit_json(out.summary, c.json_path);
      }
      return out.passed ? kOk : kInvariant;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}

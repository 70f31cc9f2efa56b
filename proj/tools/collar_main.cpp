// Command-line front end for the collar library: coordinate conversions,
// fiber solvers, surface cross-sections, property-verification suites, and
// ray-limit tables.  The only component with I/O.
//

// Output contract:
//   - JSON is the canonical machine format; CSV is provided for plotting.
//   - Doubles always carry 17 significant digits (lossless round trip).
//   - Identical invocations produce byte-identical output.
//   - Every record carries the tolerance used and the residuals achieved.
//   - Errors print a machine-readable record on stdout and a one-line
//     message on stderr.
//
// Exit codes: 0 success, 1 verification failure, 2 domain/usage error,
// 3 solver non-convergence.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "collar/converters.hpp"
#include "collar/errors.hpp"
#include "collar/geometry.hpp"
#include "collar/holonomy.hpp"
#include "collar/types.hpp"
#include "collar/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace collar;

// --------------------------------------------------------------------------
// Rendering.  Objects keep insertion order; doubles print with %.17g so the
// exact bit pattern survives a parse; non-finite doubles become JSON null
// (empty cells in CSV).  The writer is deterministic by construction.

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_json(const ordered_json& j, std::string& out, int indent) {
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out.append(indent + 2, ' ');
      out += ordered_json(it.key()).dump();
      out += ": ";
      dump_json(it.value(), out, indent + 2);
    }
    out += '\n';
    out.append(indent, ' ');
    out += '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& item : j) {
      if (!first) out += ",\n";
      first = false;
      out.append(indent + 2, ' ');
      dump_json(item, out, indent + 2);
    }
    out += '\n';
    out.append(indent, ' ');
    out += ']';
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    out += std::isfinite(v) ? format_double(v) : "null";
  } else {
    out += j.dump();
  }
}

std::string render(const ordered_json& j) {
  std::string out;
  dump_json(j, out, 0);
  out += '\n';
  return out;
}

std::string csv_cell(const std::optional<double>& v) {
  return (v && std::isfinite(*v)) ? format_double(*v) : std::string();
}

// Writes the rendered payload to the file named by out_path, or to standard
// output when it is empty.  Returns false after a stderr message if the
// file cannot be written.
bool emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return true;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "collar: cannot open output file '" << out_path << "'\n";
    return false;
  }
  f << payload;
  f.close();
  if (!f) {
    std::cerr << "collar: failed writing output file '" << out_path << "'\n";
    return false;
  }
  return true;
}

int emit_error(const std::string& command, const std::string& category,
               const std::string& message, int code) {
  ordered_json rec;
  ordered_json err;
  err["command"] = command;
  err["category"] = category;
  err["message"] = message;
  err["exit_code"] = code;
  rec["error"] = err;
  std::cout << render(rec);
  std::cerr << "collar " << command << ": " << message << "\n";
  return code;
}

ordered_json tolerance_json(const Tolerance& tol) {
  ordered_json t;
  t["abs_tol"] = tol.abs_tol;
  t["rel_tol"] = tol.rel_tol;
  t["max_iter"] = tol.max_iter;
  return t;
}

ordered_json residuals_json(const std::optional<double>& collar_scaled,
                            const std::optional<double>& delta) {
  ordered_json r;
  r["collar_scaled"] = collar_scaled ? ordered_json(*collar_scaled)
                                     : ordered_json(nullptr);
  r["delta"] = delta ? ordered_json(*delta) : ordered_json(nullptr);
  return r;
}

ordered_json triangle_json(const TriangleLengths& t) {
  ordered_json j;
  j["a"] = t.a;
  j["b"] = t.b;
  j["c"] = t.c;
  return j;
}

// Options shared by every subcommand; registered on the parent app with
// fallthrough so `collar <cmd> --tol ...` and a top-level key = value config
// file both reach them.
struct CommonOptions {
  std::string format = "json";
  std::string out;
  double abs_tol = Tolerance{}.abs_tol;

  Tolerance tolerance() const {
    Tolerance tol;
    tol.abs_tol = abs_tol;
    return tol;
  }
};

void require_finite_inputs(const std::vector<double>& values,
                           const std::string& command) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw OutOfDomain(command + ": input values must be finite");
    }
  }
}

// --------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::string from;
  std::string to;
  std::vector<double> values;
};

int run_convert(const ConvertArgs& args, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const std::size_t need =
      (args.from == "tri-h" || args.from == "tri-d") ? 3 : 2;
  if (args.values.size() != need) {
    throw OutOfDomain("convert: source system '" + args.from + "' takes " +
                      std::to_string(need) + " values, got " +
                      std::to_string(args.values.size()));
  }
  require_finite_inputs(args.values, "convert");

  // Residual diagnostics follow the triples actually constructed along the
  // route; when both legs touch the same surface the worse value is kept.
  std::optional<double> res_collar;
  std::optional<double> res_delta;
  const auto absorb = [](std::optional<double>& slot, double v) {
    if (!slot || std::abs(v) > std::abs(*slot)) slot = v;
  };

  // Every route passes through collar parameters.
  CollarParams cp;
  if (args.from == "fn") {
    const TriangleLengths t = fn_to_triangle({args.values[0], args.values[1]});
    absorb(res_collar, collar_residual_scaled(t));
    cp = project_pi(t);
  } else if (args.from == "dt") {
    const TriangleLengths t = dt_to_triangle({args.values[0], args.values[1]});
    absorb(res_delta, delta_residual(t));
    cp = project_pi(t);
  } else if (args.from == "cp") {
    cp = {args.values[0], args.values[1]};
  } else if (args.from == "tri-h") {
    const TriangleLengths t{args.values[0], args.values[1], args.values[2]};
    require_on_surface(t, tol, "convert");
    absorb(res_collar, collar_residual_scaled(t));
    cp = project_pi(t);
  } else {  // tri-d
    const TriangleLengths t{args.values[0], args.values[1], args.values[2]};
    if (!in_Delta(t, tol)) {
      throw NotInDelta("convert: the given triple is not a cone point at "
                       "tolerance " +
                       std::to_string(tol.abs_tol));
    }
    absorb(res_delta, delta_residual(t));
    cp = project_pi(t);
  }

  std::vector<std::pair<std::string, double>> fields;
  if (args.to == "cp") {
    fields = {{"x", cp.x}, {"y", cp.y}};
  } else if (args.to == "fn") {
    const TriangleLengths t = invert_pi_H(cp, tol);
    absorb(res_collar, collar_residual_scaled(t));
    const FenchelNielsen fn = cp_to_fn(cp, tol);
    fields = {{"two_ell", fn.two_ell}, {"two_tau", fn.two_tau}};
  } else if (args.to == "dt") {
    const TriangleLengths t = invert_pi_delta(cp);
    absorb(res_delta, delta_residual(t));
    const DehnThurston dt = cp_to_dt(cp);
    fields = {{"two_ell", dt.two_ell}, {"two_tau", dt.two_tau}};
  } else if (args.to == "tri-h") {
    const TriangleLengths t = invert_pi_H(cp, tol);
    absorb(res_collar, collar_residual_scaled(t));
    fields = {{"a", t.a}, {"b", t.b}, {"c", t.c}};
  } else {  // tri-d
    const TriangleLengths t = invert_pi_delta(cp);
    absorb(res_delta, delta_residual(t));
    fields = {{"a", t.a}, {"b", t.b}, {"c", t.c}};
  }

  std::string payload;
  if (common.format == "json") {
    ordered_json rec;
    rec["command"] = "convert";
    rec["from"] = args.from;
    rec["to"] = args.to;
    rec["input"] = args.values;
    ordered_json out_obj;
    for (const auto& [key, value] : fields) out_obj[key] = value;
    rec["output"] = out_obj;
    rec["tolerance"] = tolerance_json(tol);
    rec["residuals"] = residuals_json(res_collar, res_delta);
    payload = render(rec);
  } else {
    std::string header;
    std::string row;
    for (const auto& [key, value] : fields) {
      header += key + ",";
      row += format_double(value) + std::string(",");
    }
    header += "collar_scaled,delta\n";
    row += csv_cell(res_collar) + "," + csv_cell(res_delta) + "\n";
    payload = header + row;
  }
  return emit(common.out, payload) ? 0 : 2;
}

// --------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string surface;
  double x = 0.0;
  double y = 0.0;
};

int run_solve(const SolveArgs& args, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  require_finite_inputs({args.x, args.y}, "solve");
  const CollarParams p{args.x, args.y};

  ordered_json rec;
  rec["command"] = "solve";
  rec["surface"] = args.surface;
  rec["x"] = args.x;
  rec["y"] = args.y;

  TriangleLengths t;
  std::optional<double> res_collar;
  std::optional<double> res_delta;
  if (args.surface == "H") {
    SolveStats stats{};
    t = invert_pi_H(p, tol, &stats);
    res_collar = stats.scaled_residual;
    rec["triangle"] = triangle_json(t);
    ordered_json solve;
    solve["iterations"] = stats.iterations;
    solve["perimeter"] = stats.s;
    rec["solve"] = solve;

    // The collar-surface fiber point lies strictly inside the cone fiber of
    // the same parameters; the comparison is emitted with every H solve.
    const TriangleLengths d = invert_pi_delta(p);
    ordered_json cmp;
    cmp["cone_triangle"] = triangle_json(d);
    ordered_json margins;
    margins["a"] = t.a - d.a;
    margins["b"] = t.b - d.b;
    margins["c"] = t.c - d.c;
    cmp["margins"] = margins;
    cmp["h_exceeds_cone_componentwise"] =
        (t.a > d.a && t.b > d.b && t.c > d.c);
    rec["cone_comparison"] = cmp;
  } else {  // Delta
    t = invert_pi_delta(p);
    res_delta = delta_residual(t);
    rec["triangle"] = triangle_json(t);
  }
  rec["tolerance"] = tolerance_json(tol);
  rec["residuals"] = residuals_json(res_collar, res_delta);

  std::string payload;
  if (common.format == "json") {
    payload = render(rec);
  } else {
    payload = "surface,a,b,c,collar_scaled,delta\n" + args.surface + "," +
              format_double(t.a) + "," + format_double(t.b) + "," +
              format_double(t.c) + "," + csv_cell(res_collar) + "," +
              csv_cell(res_delta) + "\n";
  }
  return emit(common.out, payload) ? 0 : 2;
}

// --------------------------------------------------------------------------
// cross-section

struct CrossSectionArgs {
  double C = 0.0;
  int n = 64;
};

int run_cross_section(const CrossSectionArgs& args,
                      const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  require_finite_inputs({args.C}, "cross-section");
  const std::vector<CollarParams> pts = cross_section(args.C, args.n, tol);

  std::string payload;
  if (common.format == "json") {
    ordered_json rec;
    rec["command"] = "cross-section";
    rec["C"] = args.C;
    rec["n"] = args.n;
    rec["tolerance"] = tolerance_json(tol);
    ordered_json points = ordered_json::array();
    for (const CollarParams& q : pts) {
      ordered_json pt;
      pt["x"] = q.x;
      pt["y"] = q.y;
      points.push_back(pt);
    }
    rec["points"] = points;
    payload = render(rec);
  } else {
    payload = "x,y\n";
    for (const CollarParams& q : pts) {
      payload += format_double(q.x) + std::string(",") + format_double(q.y) +
                 "\n";
    }
  }
  return emit(common.out, payload) ? 0 : 2;
}

// --------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int cases = 100;
};

int run_verify(const VerifyArgs& args, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  const SuiteReport report = run_suite(args.suite, args.seed, args.cases, tol);

  std::string payload;
  if (common.format == "json") {
    ordered_json rec;
    rec["command"] = "verify";
    rec["suite"] = report.suite;
    rec["seed"] = report.seed;
    rec["cases"] = report.cases;
    rec["pass"] = report.pass;
    rec["tolerance"] = tolerance_json(tol);
    ordered_json props = ordered_json::array();
    for (const PropertyResult& pr : report.properties) {
      ordered_json row;
      row["name"] = pr.name;
      row["cases"] = pr.cases;
      row["worst"] = pr.worst;
      row["tolerance"] = pr.tolerance;
      row["pass"] = pr.pass;
      props.push_back(row);
    }
    rec["properties"] = props;
    payload = render(rec);
  } else {
    payload = "suite,property,cases,worst,tolerance,pass\n";
    for (const PropertyResult& pr : report.properties) {
      payload += report.suite + "," + pr.name + "," +
                 std::to_string(pr.cases) + "," + format_double(pr.worst) +
                 "," + format_double(pr.tolerance) + "," +
                 (pr.pass ? "true" : "false") + "\n";
    }
  }
  if (!emit(common.out, payload)) return 2;
  if (!report.pass) {
    std::cerr << "collar verify: suite '" << report.suite
              << "' failed (seed " << report.seed << ")\n";
    return 1;
  }
  return 0;
}

// --------------------------------------------------------------------------
// limit

struct LimitArgs {
  double x = 0.0;
  double y = 0.0;
  std::string word;
  std::vector<double> t_values;
};

int run_limit(const LimitArgs& args, const CommonOptions& common) {
  const Tolerance tol = common.tolerance();
  require_finite_inputs({args.x, args.y}, "limit");
  const TorusWord w = TorusWord::parse(args.word);
  const CollarParams p{args.x, args.y};
  const double prediction = foliation_half_length(p, w);
  const std::vector<RayLimitSample> samples =
      ray_limit_experiment(p, w, args.t_values, tol);

  std::string payload;
  if (common.format == "json") {
    ordered_json rec;
    rec["command"] = "limit";
    rec["x"] = args.x;
    rec["y"] = args.y;
    rec["word"] = w.letters;
    rec["tolerance"] = tolerance_json(tol);
    rec["prediction"] = prediction;
    ordered_json rows = ordered_json::array();
    for (const RayLimitSample& s : samples) {
      ordered_json row;
      row["t"] = s.t;
      row["hyperbolic"] = s.hyperbolic;
      row["normalized_length"] =
          s.hyperbolic ? ordered_json(s.normalized_length)
                       : ordered_json(nullptr);
      row["prediction"] = prediction;
      row["gap"] = s.hyperbolic
                       ? ordered_json(std::abs(s.normalized_length -
                                               prediction))
                       : ordered_json(nullptr);
      rows.push_back(row);
    }
    rec["rows"] = rows;
    payload = render(rec);
  } else {
    payload = "t,normalized_length,prediction,gap\n";
    for (const RayLimitSample& s : samples) {
      const std::optional<double> norm =
          s.hyperbolic ? std::optional<double>(s.normalized_length)
                       : std::nullopt;
      const std::optional<double> gap =
          s.hyperbolic
              ? std::optional<double>(std::abs(s.normalized_length -
                                               prediction))
              : std::nullopt;
      payload += format_double(s.t) + std::string(",") + csv_cell(norm) +
                 "," + format_double(prediction) + "," + csv_cell(gap) + "\n";
    }
  }
  return emit(common.out, payload) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Collar-parameter coordinates: conversions between length/twist "
      "charts, fiber solvers, cross-sections, verification suites, and "
      "ray-limit tables"};
  app.set_version_flag("--version", "collar 1.0.0");
  app.require_subcommand(1);
  // Shared options live on the parent; fallthrough lets them appear after
  // the subcommand name, and a key = value config file fills them when the
  // command line does not.
  app.fallthrough();
  app.set_config("--config", "",
                 "Read defaults from a key = value config file");

  CommonOptions common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", common.out,
                 "Write the record to this file instead of standard output");
  app.add_option("--tol", common.abs_tol,
                 "Absolute tolerance for solvers and membership checks")
      ->check(CLI::PositiveNumber)
      ->envname("COLLAR_TOL")
      ->capture_default_str();

  const std::vector<std::string> systems = {"fn", "dt", "cp", "tri-h",
                                            "tri-d"};
  ConvertArgs convert_args;
  CLI::App* cmd_convert = app.add_subcommand(
      "convert", "Convert coordinates between charts");
  cmd_convert->add_option("--from", convert_args.from, "Source chart")
      ->required()
      ->check(CLI::IsMember(systems));
  cmd_convert->add_option("--to", convert_args.to, "Target chart")
      ->required()
      ->check(CLI::IsMember(systems));
  cmd_convert->add_option("values", convert_args.values,
                          "Coordinate values (2 for fn/dt/cp, 3 for tri-*)");

  SolveArgs solve_args;
  CLI::App* cmd_solve = app.add_subcommand(
      "solve", "Solve for the triple with the given collar parameters");
  cmd_solve->add_option("--surface", solve_args.surface,
                        "Which fiber to solve: the collar surface (H) or "
                        "the cone (Delta)")
      ->required()
      ->check(CLI::IsMember({"H", "Delta"}));
  cmd_solve->add_option("--x", solve_args.x, "First collar parameter")
      ->required();
  cmd_solve->add_option("--y", solve_args.y, "Second collar parameter")
      ->required();

  CrossSectionArgs section_args;
  CLI::App* cmd_section = app.add_subcommand(
      "cross-section",
      "Sample the image of a constant-perimeter slice of the collar surface");
  cmd_section->add_option("--C", section_args.C, "Perimeter a + b + c")
      ->required();
  cmd_section
      ->add_option("--n", section_args.n, "Number of sample points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  VerifyArgs verify_args;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Run a seeded property-verification suite");
  cmd_verify->add_option("--suite", verify_args.suite, "Suite name")
      ->check(CLI::IsMember({"metric", "traces", "roundtrip", "limits",
                             "all"}))
      ->capture_default_str();
  cmd_verify
      ->add_option("--seed", verify_args.seed, "Seed for the fuzz stream")
      ->capture_default_str();
  cmd_verify
      ->add_option("--cases", verify_args.cases,
                   "Fuzzed samples per property")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  LimitArgs limit_args;
  CLI::App* cmd_limit = app.add_subcommand(
      "limit",
      "Tabulate normalized word lengths along a ray against the foliation "
      "prediction");
  cmd_limit->add_option("--x", limit_args.x, "Ray direction, first parameter")
      ->required();
  cmd_limit->add_option("--y", limit_args.y, "Ray direction, second parameter")
      ->required();
  cmd_limit
      ->add_option("--word", limit_args.word,
                   "Word in the letters a/A/b/B (inverse = uppercase)")
      ->required();
  cmd_limit
      ->add_option("--t", limit_args.t_values,
                   "Comma-separated ray parameters, strictly increasing")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    app.exit(e);  // prints the usage error on stderr
    ordered_json rec;
    ordered_json err;
    err["command"] = "usage";
    err["category"] = "usage";
    err["message"] = e.what();
    err["exit_code"] = 2;
    rec["error"] = err;
    std::cout << render(rec);
    return 2;
  }

  std::string active = "usage";
  try {
    if (cmd_convert->parsed()) {
      active = "convert";
      return run_convert(convert_args, common);
    }
    if (cmd_solve->parsed()) {
      active = "solve";
      return run_solve(solve_args, common);
    }
    if (cmd_section->parsed()) {
      active = "cross-section";
      return run_cross_section(section_args, common);
    }
    if (cmd_verify->parsed()) {
      active = "verify";
      return run_verify(verify_args, common);
    }
    if (cmd_limit->parsed()) {
      active = "limit";
      return run_limit(limit_args, common);
    }
    return emit_error("usage", "usage", "no subcommand given", 2);
  } catch (const DomainError& e) {
    return emit_error(active, "domain", e.what(), 2);
  } catch (const SolverError& e) {
    return emit_error(active, "solver", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error(active, "internal", e.what(), 2);
  }
}

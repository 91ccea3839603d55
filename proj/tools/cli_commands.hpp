#pragma once

// Subcommands of the hopfion command line. run_cli() is the whole program
// minus main(), so the tests can drive it with argument vectors and
// string streams.
//
// Units: massless fields are in units of the scale a (set a=1 for the
// tabulated forms); Dirac fields are in Compton units, with m a flag
// (default 1).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopfion/hopfion.hpp"

namespace hopfion::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g: round-trips every double.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- grids

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

/// Sampling grid; rows run z-major: t outermost, then z, y, and x fastest.
struct GridSpec {
  AxisRange t, x, y, z;

  std::size_t size() const {
    return static_cast<std::size_t>(t.count) * z.count * y.count * x.count;
  }

  SpacetimePoint point(std::size_t row) const {
    const auto ix = static_cast<int>(row % x.count);
    row /= x.count;
    const auto iy = static_cast<int>(row % y.count);
    row /= y.count;
    const auto iz = static_cast<int>(row % z.count);
    row /= z.count;
    return {t.at(static_cast<int>(row)), x.at(ix), y.at(iy), z.at(iz)};
  }

  AxisRange& axis(char name) {
    switch (name) {
      case 't': return t;
      case 'x': return x;
      case 'y': return y;
      case 'z': return z;
      default: throw UsageError(std::string("unknown grid axis '") + name + "'");
    }
  }

  /// "x=-2:2:101" (min:max:count) or "t=0.5" (a single value).
  void set(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq != 1) throw UsageError("grid spec '" + spec + "' must look like x=min:max:count or t=value");
    AxisRange r;
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(2));
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    try {
      if (parts.size() == 1) {
        r.min = r.max = std::stod(parts[0]);
      } else if (parts.size() == 3) {
        r.min = std::stod(parts[0]);
        r.max = std::stod(parts[1]);
        std::size_t used = 0;
        r.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("count");
      } else {
        throw std::invalid_argument("parts");
      }
    } catch (const std::logic_error&) {
      throw UsageError("grid spec '" + spec + "' must look like x=min:max:count or t=value");
    }
    if (r.count < 1) throw UsageError("grid spec '" + spec + "': count must be >= 1");
    if (!(r.min <= r.max)) throw UsageError("grid spec '" + spec + "': min must not exceed max");
    if (r.count == 1 && r.min != r.max) throw UsageError("grid spec '" + spec + "': one sample needs min == max");
    axis(spec[0]) = r;
  }
};

// ------------------------------------------------------------- solutions

/// The solution flags shared by eval and trace.
struct SolutionFlags {
  std::string family = "maxwell-hopfion-1";
  double a = 1.0;
  double m = 1.0;
  int p = 1;
  int q = 1;
  int energy_sign = 1;
  int base_index = 0;
  bool base_dotted = false;

  void attach(CLI::App& app) {
    app.add_option("--solution,-s", family, "Solution family: " + join(family_name_list()))->capture_default_str();
    app.add_option("--a", a, "Scale parameter a > 0")->capture_default_str();
    app.add_option("--m", m, "Mass m > 0 (Dirac families)")->capture_default_str();
    app.add_option("--p", p, "Knot exponent p (knot-pq)")->capture_default_str();
    app.add_option("--q", q, "Knot exponent q (knot-pq)")->capture_default_str();
    app.add_option("--energy-sign", energy_sign, "+1 or -1")->capture_default_str();
    app.add_option("--base-index", base_index, "dirac-base: spinor index 0 or 1")->capture_default_str();
    app.add_flag("--base-dotted", base_dotted, "dirac-base: dotted member of the pair");
  }

  SolutionId resolve(std::optional<Family> override_family = std::nullopt) const {
    SolutionId id;
    if (override_family) {
      id.family = *override_family;
    } else {
      const auto f = parse_family(family);
      if (!f) throw UsageError("unknown solution '" + family + "'; valid: " + join(family_name_list()));
      id.family = *f;
    }
    id.a = a;
    id.m = m;
    id.p = p;
    id.q = q;
    id.energy_sign = energy_sign;
    id.base_index = base_index;
    id.base_dotted = base_dotted;
    try {
      id.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return id;
  }

  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
  }
};

inline std::vector<std::string> component_names(Family f) {
  switch (field_kind(f)) {
    case FieldKind::spinor: return {"phi0", "phi1"};
    case FieldKind::rs_vector: return {"Fx", "Fy", "Fz"};
    default: return {"phi0", "phi1", "chi0", "chi1"};
  }
}

/// Current-like four-vector written by `eval --currents`: the Weyl current,
/// (u, S) for RS vectors, or the Dirac current.
inline FourVector current_of(const FieldValue& v) {
  if (const auto* s = std::get_if<Spinor>(&v)) return weyl_current(*s);
  if (const auto* f = std::get_if<RSVector>(&v)) {
    const MaxwellStress st = maxwell_stress(*f);
    FourVector out;
    out[0] = st.energy_density;
    for (int i = 0; i < 3; ++i) out[i + 1] = st.poynting[static_cast<std::size_t>(i)];
    return out;
  }
  return dirac_current(std::get<Bispinor>(v));
}

// ------------------------------------------------------------ reporting

/// Non-finite numbers become the strings "inf", "-inf" or "nan"; plain JSON
/// has no spelling for them.
inline json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline json to_json(const CheckRecord& r) {
  json j{{"check", r.check},
         {"solution", r.solution},
         {"pass", r.pass},
         {"max_relative", number(r.max_relative)},
         {"max_absolute", number(r.max_absolute)},
         {"tolerance", r.tolerance},
         {"points", r.points},
         {"skipped", r.skipped}};
  if (r.worst_point) j["worst_point"] = {r.worst_point->t, r.worst_point->x, r.worst_point->y, r.worst_point->z};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const VerificationReport& rep, const json& meta) {
  json records = json::array();
  for (const auto& r : rep.records) records.push_back(to_json(r));
  return {{"meta", meta}, {"all_pass", rep.all_pass()}, {"failures", rep.failures()}, {"records", records}};
}

inline std::string dump(const json& j) {
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

inline void summarize(const VerificationReport& rep, std::ostream& out) {
  for (const auto& r : rep.records) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g <= %.3g", r.max_relative, r.tolerance);
    out << (r.pass ? "PASS " : "FAIL ") << r.check << " [" << r.solution << "] " << (r.pass ? buf : fmt(r.max_relative))
        << (r.note.empty() ? "" : "  (" + r.note + ")") << "\n";
  }
  out << (rep.all_pass() ? "all checks passed" : std::to_string(rep.failures()) + " check(s) failed") << "\n";
}

/// JSON to --output when given (plus a summary on `out`), else JSON on `out`.
inline void emit_report(const VerificationReport& rep, const json& meta, const std::string& output, std::ostream& out) {
  const std::string text = dump(to_json(rep, meta));
  if (output.empty() || output == "-") {
    out << text;
    return;
  }
  std::ofstream f(output);
  if (!f) throw UsageError("cannot write '" + output + "'");
  f << text;
  summarize(rep, out);
}

/// Splits comma lists and expands "all".
inline std::vector<std::string> select_names(const std::vector<std::string>& requested,
                                             const std::vector<std::string>& valid, const std::string& what) {
  std::vector<std::string> names;
  for (const auto& item : requested) {
    std::stringstream ss(item);
    for (std::string n; std::getline(ss, n, ',');) {
      if (n.empty()) continue;
      if (n == "all") {
        for (const auto& v : valid)
          if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
        continue;
      }
      if (std::find(valid.begin(), valid.end(), n) == valid.end())
        throw UsageError("unknown " + what + " '" + n + "'; valid: " + SolutionFlags::join(valid) + ", all");
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    }
  }
  if (names.empty()) throw UsageError("no " + what + " selected; valid: " + SolutionFlags::join(valid) + ", all");
  return names;
}

// --------------------------------------------------------------- config

/// Reads key=value lines ('#' starts a comment) and returns them as
/// "--key=value" arguments.
inline std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> args;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "config") throw UsageError(path + ":" + std::to_string(lineno) + ": nested config files are not supported");
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

/// Pulls "--config FILE" / "--config=FILE" out of the arguments and splices
/// the file's options in right after the subcommand, so flags given on the
/// command line override the file.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!path) return args;
  const auto extra = config_arguments(*path);
  std::size_t sub = 0;
  while (sub < args.size() && args[sub].rfind("-", 0) == 0) ++sub;
  if (sub >= args.size()) throw UsageError("--config needs a subcommand");
  args.insert(args.begin() + static_cast<long>(sub) + 1, extra.begin(), extra.end());
  return args;
}

// ------------------------------------------------------------- commands

struct EvalOptions {
  SolutionFlags solution;
  std::vector<std::string> grid;
  bool currents = false;
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
};

inline int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const SolutionId id = o.solution.resolve();
  GridSpec g;
  for (const auto& spec : o.grid) g.set(spec);
  const std::size_t rows = g.size();

  std::vector<std::string> lines(rows);
  std::vector<json> objects(o.format == "json" ? rows : 0);
  parallel_for(rows, o.threads, [&](std::size_t r) {
    const SpacetimePoint x = g.point(r);
    const FieldValue v = evaluate(id, x);
    std::vector<double> values;
    if (o.currents) {
      const FourVector j = current_of(v);
      for (int mu = 0; mu < 4; ++mu) values.push_back(j[mu]);
    } else {
      for (int c = 0; c < component_count(id.family); ++c) {
        values.push_back(component(v, c).real());
        values.push_back(component(v, c).imag());
      }
    }
    if (o.format == "json") {
      objects[r] = {{"x", {x.t, x.x, x.y, x.z}}, {"values", values}};
      return;
    }
    std::string line = fmt(x.t) + "," + fmt(x.x) + "," + fmt(x.y) + "," + fmt(x.z);
    for (double d : values) line += "," + fmt(d);
    lines[r] = std::move(line);
  });

  std::vector<std::string> columns{"t", "x", "y", "z"};
  if (o.currents) {
    for (const char* c : {"j0", "j1", "j2", "j3"}) columns.emplace_back(c);
  } else {
    for (const auto& c : component_names(id.family)) {
      columns.push_back("re_" + c);
      columns.push_back("im_" + c);
    }
  }

  std::ofstream file;
  if (!o.output.empty() && o.output != "-") {
    file.open(o.output);
    if (!file) throw UsageError("cannot write '" + o.output + "'");
  }
  std::ostream& sink = file.is_open() ? static_cast<std::ostream&>(file) : out;
  if (o.format == "json") {
    json doc{{"solution", id.label()}, {"columns", columns}, {"rows", objects}};
    sink << doc.dump() << "\n";
  } else {
    std::string header;
    for (const auto& c : columns) header += (header.empty() ? "" : ",") + c;
    sink << header << "\n";
    for (const auto& l : lines) sink << l << "\n";
  }
  return ExitCode::ok;
}

struct VerifyOptions {
  std::vector<std::string> suites;
  double tol = 1e-6;
  int points = 100;
  int invariant_points = 1000;
  std::uint64_t seed = 20240521;
  double perturb = 0.0;
  std::string scheme = "richardson";
  double h = 1e-3;
  double a = 1.0;
  double m = 1.0;
  std::string output;
  unsigned threads = 0;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const auto names = select_names(o.suites, verify_suite_names(), "suite");
  SuiteOptions s;
  s.points = o.points;
  s.invariant_points = o.invariant_points;
  s.seed = o.seed;
  s.perturb = o.perturb;
  s.a = o.a;
  s.m = o.m;
  const auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw UsageError("unknown scheme '" + o.scheme + "'; valid: central2, central4, richardson");
  s.residual.scheme = *scheme;
  s.residual.h = o.h;
  s.residual.tolerance = o.tol;
  s.residual.threads = resolve_threads(o.threads);
  try {
    s.residual.validate();
    require_positive_scale(o.a, "scale a");
    require_positive_scale(o.m, "mass m");
    if (o.points < 1 || o.invariant_points < 1) throw DomainError("point counts must be positive");
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  VerificationReport rep;
  for (const auto& n : names) rep.append(run_verify_suite(n, s));
  json meta{{"command", "verify"}, {"suites", names},        {"tolerance", o.tol},   {"points", o.points},
            {"seed", o.seed},      {"scheme", o.scheme},     {"h", o.h},             {"perturb", o.perturb},
            {"a", o.a},            {"m", o.m}};
  emit_report(rep, meta, o.output, out);
  return rep.all_pass() ? ExitCode::ok : ExitCode::check_failed;
}

struct TraceCmdOptions {
  SolutionFlags solution;
  std::vector<std::string> seeds;  // "x,y,z"
  std::string preset;              // fig2 | fig3 | hopfion
  double t = 0.0;
  std::string out_dir = ".";
  double max_length = 50.0;
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_step = 0.05;
  double closure_eps = 1e-4;
  bool closure = true;
  double box = 0.0;  // 0: no box stop
  unsigned threads = 0;
};

inline Vec3 parse_seed(const std::string& s) {
  Vec3 v{};
  std::stringstream ss(s);
  std::string part;
  int n = 0;
  try {
    while (std::getline(ss, part, ',')) {
      if (n >= 3) throw std::invalid_argument("too many");
      v[static_cast<std::size_t>(n++)] = std::stod(part);
    }
  } catch (const std::logic_error&) {
    n = -1;
  }
  if (n != 3) throw UsageError("seed '" + s + "' must be x,y,z");
  return v;
}

inline std::string file_stem(const std::string& label) {
  std::string s;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') s += c;
    else if (c == '\'') s += 'd';
    else if (c == ',') s += '_';
    else if (!s.empty() && s.back() != '_' && (c == '(' || c == '[')) s += '_';
  }
  if (!label.empty() && label.back() == '-') s += "neg";
  return s;
}

inline int cmd_trace(const TraceCmdOptions& o, std::ostream& out) {
  struct Job {
    SolutionId id;
    Vec3 seed;
  };
  std::vector<Job> jobs;
  if (o.preset.empty()) {
    if (o.seeds.empty()) throw UsageError("trace needs --seed-point x,y,z or --preset fig2|fig3|hopfion");
    const SolutionId id = o.solution.resolve();
    for (const auto& s : o.seeds) jobs.push_back({id, parse_seed(s)});
  } else if (o.preset == "fig2") {
    for (Family f : {Family::psi2, Family::psi4, Family::psi6, Family::psi8})
      jobs.push_back({o.solution.resolve(f), figure2_seed()});
  } else if (o.preset == "fig3") {
    for (const auto& s : figure3_seeds()) jobs.push_back({o.solution.resolve(Family::psi4), s});
  } else if (o.preset == "hopfion") {
    for (const auto& s : hopfion_seeds()) jobs.push_back({o.solution.resolve(Family::weyl_hopfion_1), s});
  } else {
    throw UsageError("unknown preset '" + o.preset + "'; valid: fig2, fig3, hopfion");
  }

  TraceOptions opt;
  opt.max_length = o.max_length;
  opt.rtol = o.rtol;
  opt.atol = o.atol;
  opt.max_step = o.max_step;
  opt.closure_eps = o.closure_eps;
  opt.stop_on_closure = o.closure;
  if (o.box > 0.0) opt.box_half_width = o.box;
  if (!(o.max_length > 0) || !(o.rtol > 0) || !(o.atol > 0) || !(o.max_step > 0))
    throw UsageError("trace tolerances, step and length must be positive");

  std::vector<FieldLine> lines(jobs.size());
  parallel_for(jobs.size(), o.threads, [&](std::size_t i) {
    lines[i] = trace(flow_at_time(jobs[i].id, o.t), jobs[i].seed, opt);
    lines[i].solution = jobs[i].id.label();
  });

  std::filesystem::create_directories(o.out_dir);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const FieldLine& l = lines[i];
    const std::string stem = file_stem(l.solution) + "_seed" + std::to_string(i);
    const auto csv_path = std::filesystem::path(o.out_dir) / (stem + ".csv");
    const auto meta_path = std::filesystem::path(o.out_dir) / (stem + ".json");
    std::ofstream csv(csv_path);
    if (!csv) throw UsageError("cannot write '" + csv_path.string() + "'");
    csv << "lambda,x,y,z\n";
    for (const auto& p : l.points)
      csv << fmt(p.lambda) << "," << fmt(p.r[0]) << "," << fmt(p.r[1]) << "," << fmt(p.r[2]) << "\n";
    json meta{{"solution", l.solution},
              {"t", o.t},
              {"seed", {l.seed[0], l.seed[1], l.seed[2]}},
              {"stop_reason", to_string(l.stop)},
              {"closed", l.closed},
              {"closure_gap", number(l.closure_gap)},
              {"period_length", l.period_length},
              {"length", l.arc_length},
              {"points", l.points.size()},
              {"max_abs_coordinate", max_abs_coordinate(l)},
              {"accepted_steps", l.accepted_steps},
              {"rejected_steps", l.rejected_steps}};
    std::ofstream(meta_path) << dump(meta);
    out << csv_path.string() << "  " << to_string(l.stop) << "  length " << fmt(l.arc_length)
        << (l.closed ? "  closed, gap " + fmt(l.closure_gap) : "") << "\n";
  }
  return ExitCode::ok;
}

struct CheckCmdOptions {
  std::vector<std::string> checks;
  int samples = 0;  // 0: per-check default
  std::uint64_t seed = 20240521;
  double a = 1.0;
  std::string output;
  unsigned threads = 0;
};

inline int cmd_hopf(const CheckCmdOptions& o, std::ostream& out) {
  const auto names = select_names(o.checks, hopf_check_names(), "check");
  const int samples = o.samples > 0 ? o.samples : 1000;
  VerificationReport rep;
  for (const auto& n : names) rep.append(run_hopf_check(n, samples, o.seed));
  emit_report(rep, {{"command", "hopf"}, {"checks", names}, {"samples", samples}, {"seed", o.seed}}, o.output, out);
  return rep.all_pass() ? ExitCode::ok : ExitCode::check_failed;
}

inline int cmd_oracle(const CheckCmdOptions& o, std::ostream& out) {
  const auto names = select_names(o.checks, oracle_check_names(), "check");
  if (!(o.a > 0)) throw UsageError("scale a must be positive");
  VerificationReport rep;
  for (const auto& n : names) {
    const int samples = o.samples > 0 ? o.samples : (n == "kg-support" ? 1000 : 10);
    rep.append(run_oracle_check(n, samples, o.seed, o.a, resolve_threads(o.threads)));
  }
  emit_report(rep, {{"command", "oracle"}, {"checks", names}, {"seed", o.seed}, {"a", o.a}}, o.output, out);
  return rep.all_pass() ? ExitCode::ok : ExitCode::check_failed;
}

// ----------------------------------------------------------------- main

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form Weyl, Maxwell and Dirac solutions: evaluation, verification and field lines", "hopfion"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Evaluate a field on a grid and write CSV (or JSON)");
  eval.solution.attach(*e);
  e->add_option("--grid,-g", eval.grid, "Axis sampling, e.g. x=-2:2:101 or t=0.5 (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  e->add_flag("--currents", eval.currents, "Write the current four-vector instead of the field");
  e->add_option("--format", eval.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  e->add_option("--output,-o", eval.output, "Output file (default stdout)");
  e->add_option("--threads", eval.threads, "Worker threads (0 = all cores)")->capture_default_str();

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Run residual and invariant suites; exit 1 if any check fails");
  v->add_option("--suite", ver.suites, "Suite names or 'all' (repeatable, comma lists allowed)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',');
  v->add_option("--tol", ver.tol, "Relative tolerance for finite-difference residuals")->capture_default_str();
  v->add_option("--points", ver.points, "Sample points per residual check")->capture_default_str();
  v->add_option("--invariant-points", ver.invariant_points, "Sample points per algebraic invariant")
      ->capture_default_str();
  v->add_option("--seed", ver.seed, "Seed for the sample points")->capture_default_str();
  v->add_option("--perturb", ver.perturb, "Add eps (1 + t^2) to every field component")->capture_default_str();
  v->add_option("--scheme", ver.scheme, "central2, central4 or richardson")->capture_default_str();
  v->add_option("--fd-step", ver.h, "Finite-difference step h")->capture_default_str();
  v->add_option("--a", ver.a, "Scale parameter a")->capture_default_str();
  v->add_option("--m", ver.m, "Mass m")->capture_default_str();
  v->add_option("--output,-o", ver.output, "JSON report file (default stdout)");
  v->add_option("--threads", ver.threads, "Worker threads (0 = all cores)")->capture_default_str();

  TraceCmdOptions tr;
  auto* t = app.add_subcommand("trace", "Trace flow lines; one CSV and one JSON sidecar per seed");
  tr.solution.attach(*t);
  t->add_option("--seed-point", tr.seeds, "Seed x,y,z (repeatable)")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  t->add_option("--preset", tr.preset, "fig2 (psi2/4/6/8 from (1,0.3,0)), fig3 (psi4, four seeds) or hopfion");
  t->add_option("--t", tr.t, "Time slice")->capture_default_str();
  t->add_option("--out-dir", tr.out_dir, "Directory for the line files")->capture_default_str();
  t->add_option("--max-length", tr.max_length, "Arc length limit")->capture_default_str();
  t->add_option("--rtol", tr.rtol, "Relative step tolerance")->capture_default_str();
  t->add_option("--atol", tr.atol, "Absolute step tolerance")->capture_default_str();
  t->add_option("--max-step", tr.max_step, "Largest step")->capture_default_str();
  t->add_option("--closure-eps", tr.closure_eps, "Return distance that counts as closed")->capture_default_str();
  t->add_flag("!--no-closure", tr.closure, "Keep going after the line returns to its seed");
  t->add_option("--box", tr.box, "Stop when any |coordinate| exceeds this (0 = never)")->capture_default_str();
  t->add_option("--threads", tr.threads, "Worker threads (0 = all cores)")->capture_default_str();

  CheckCmdOptions hp;
  auto* h = app.add_subcommand("hopf", "Hopf map checks");
  h->add_option("--check", hp.checks, "Check names or 'all'")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',');
  h->add_option("--samples", hp.samples, "Random samples per check (default 1000)");
  h->add_option("--seed", hp.seed, "Seed")->capture_default_str();
  h->add_option("--output,-o", hp.output, "JSON report file (default stdout)");
  h->add_option("--threads", hp.threads, "Accepted for uniformity; the checks are serial")->capture_default_str();

  CheckCmdOptions orc;
  auto* q = app.add_subcommand("oracle", "Quadrature oracles against the closed forms");
  q->add_option("--check", orc.checks, "Check names or 'all'")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',');
  q->add_option("--samples", orc.samples, "Sample points (default 10; kg-support 1000)");
  q->add_option("--seed", orc.seed, "Seed")->capture_default_str();
  q->add_option("--a", orc.a, "Scale parameter a")->capture_default_str();
  q->add_option("--output,-o", orc.output, "JSON report file (default stdout)");
  q->add_option("--threads", orc.threads, "Worker threads (0 = all cores)")->capture_default_str();

  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return ExitCode::usage;
  }

  try {
    if (e->parsed()) return cmd_eval(eval, out);
    if (v->parsed()) return cmd_verify(ver, out);
    if (t->parsed()) return cmd_trace(tr, out);
    if (h->parsed()) return cmd_hopf(hp, out);
    return cmd_oracle(orc, out);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return ExitCode::usage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return ExitCode::check_failed;
  }
}

}  // namespace hopfion::cli

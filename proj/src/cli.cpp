#include "rfgap/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rfgap/bochner.hpp"
#include "rfgap/errors.hpp"
#include "rfgap/kahler.hpp"
#include "rfgap/report.hpp"
#include "rfgap/rng.hpp"
#include "rfgap/suites.hpp"
#include "rfgap/tensor_io.hpp"

namespace rfgap {

namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

double default_tolerance() {
  const char* env = std::getenv("RFGAP_TOL");
  if (env == nullptr || *env == '\0') return kInvariantTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
    throw UsageError(std::string("RFGAP_TOL must be a positive number, got '") + env + "'");
  }
  return v;
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// --- thresholds ---

int cmd_thresholds(bool as_json, std::ostream& out) {
  const json rep = thresholds_report();
  if (as_json) {
    out << rep.dump(2) << "\n";
    return 0;
  }
  out << std::left << std::setw(20) << "name" << std::setw(14) << "expression" << std::setw(17) << "value"
      << std::setw(22) << "relation"
      << "residual\n";
  for (const json& c : rep["constants"]) {
    std::ostringstream v, r;
    v << std::fixed << std::setprecision(12) << c["value"].get<double>();
    r << std::scientific << std::setprecision(1) << c["relation_residual"].get<double>();
    out << std::left << std::setw(20) << c["name"].get<std::string>() << std::setw(14)
        << c["expression"].get<std::string>() << std::setw(17) << v.str() << std::setw(22)
        << c["relation"].get<std::string>() << r.str() << "\n";
  }
  out << "\nreciprocal pairs\n";
  for (const json& p : rep["reciprocal_pairs"]) {
    const double prod = p["product"].get<double>();
    std::ostringstream v;
    v << std::fixed << std::setprecision(12) << prod;
    out << "  " << p["pair"][0].get<std::string>() << " * " << p["pair"][1].get<std::string>() << " = " << v.str()
        << (std::abs(prod - 1.0) <= 1e-14 ? " (exact)" : " (NOT exact)") << "\n";
  }
  return 0;
}

// --- analyze ---

int cmd_analyze(const std::string& path, const std::string& kind_name, double tol, double berger_tol,
                bool timings, std::ostream& out) {
  Stopwatch sw;
  json time = json::object();
  const std::string bytes = read_file(path);
  json rep{{"input_digest", sha256_digest(bytes)}, {"tolerance", tol}};
  const TensorFile tf = parse_tensor(bytes, parse_kind(kind_name), tol);
  rep["kind"] = std::string(to_string(tf.kind));
  time["parse_ms"] = sw.lap();

  if (tf.kind == TensorKind::kahler) {
    const KahlerCurv2& r = tf.kahler;
    if (r.max_abs() <= 1e-12) throw FlatTensor("all components vanish; nothing to certify");
    const KahlerEinstein e = kahler_einstein(r);
    if (e.residual > tol * std::max(1.0, r.max_abs())) {
      std::ostringstream msg;
      msg << "Kahler tensor is not Einstein (max |Ric - lambda g| = " << e.residual << ")";
      throw InvariantViolation(msg.str());
    }
    const HolExtremaReport h = extremize_hol(r, tol);
    rep["extrema"] = to_json(h);
    time["extrema_ms"] = sw.lap();
    const HolGridExtrema g = hol_extrema_grid(r, 2001);
    rep["grid_oracle"] = {{"n", 2001}, {"h_min", g.h_min}, {"h_max", g.h_max}};
    time["grid_ms"] = sw.lap();
    rep["pinching"] = to_json(kahler_pinching_bounds(h, tol));
    if (std::abs(e.lambda) <= tol * std::max(1.0, r.max_abs())) {
      rep["certificate"] = to_json(siu_yang_laplacian(r, Orientation::min_frame, tol));
      rep["remark"] = to_json(siu_yang_laplacian(r, Orientation::max_frame, tol));
    } else {
      rep["certificate"] = nullptr;
      rep["certificate_skipped"] = "Einstein but not Ricci-flat";
    }
    time["certificate_ms"] = sw.lap();
  } else {
    const Riemann4& r = tf.riemann;
    const double ric = ricci(r).cwiseAbs().maxCoeff();
    if (ric > tol * std::max(1.0, r.max_abs())) {
      std::ostringstream msg;
      msg << "tensor is not Ricci-flat (max |Ric| = " << ric << ")";
      throw InvariantViolation(msg.str());
    }
    const ExtremaReport e = extremize_sectional(r, tol);
    rep["extrema"] = to_json(e);
    rep["corollary"] = to_json(corollary_bounds_check(e));
    time["extrema_ms"] = sw.lap();
    try {
      const GapCertificate c = certify_min_point(r, BergerOptions{berger_tol}, tol);
      rep["berger"] = to_json(c.berger);
      rep["certificate"] = to_json(c);
    } catch (const BergerToleranceExceeded& ex) {
      rep["berger"] = to_json(ex.report());
      rep["error"] = ex.what();
      out << rep.dump(2) << "\n";
      throw;
    }
    time["certificate_ms"] = sw.lap();
  }
  if (timings) rep["timings"] = time;
  out << rep.dump(2) << "\n";
  return 0;
}

// --- sample ---

int cmd_sample(long count, std::uint64_t seed, const std::string& kind, const std::string& dir, std::ostream& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  json files = json::array();
  for (long i = 0; i < count; ++i) {
    const std::uint64_t s = stream_seed(seed, static_cast<std::uint64_t>(i));
    const json doc = kind == "kahler" ? kahler_to_json(sample_ricci_flat_kahler(s, 1.0))
                                      : weyl_to_json(sample_ricci_flat(s, 1.0));
    const std::string text = canonical_text(doc);
    std::ostringstream name;
    name << kind << "_" << std::setw(4) << std::setfill('0') << i << ".json";
    const fs::path path = fs::path(dir) / name.str();
    write_file(path, text);

    const std::string back = read_file(path);
    const TensorFile tf = parse_tensor(back);
    const json again = tf.kind == TensorKind::kahler ? kahler_to_json(tf.kahler) : weyl_to_json(*tf.weyl);
    if (canonical_text(again) != back) throw InvariantViolation("round trip changed " + path.string());
    files.push_back({{"file", name.str()}, {"digest", sha256_digest(back)}, {"sample_seed", s}});
  }
  const json manifest{{"kind", kind}, {"seed", seed}, {"count", count}, {"files", files}};
  write_file(fs::path(dir) / "manifest.json", canonical_text(manifest));
  out << manifest.dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pointwise curvature algebra for Ricci-flat 4-manifolds and Kahler surfaces", "rfgap"};
  app.require_subcommand(1);

  bool thresholds_json = false;
  auto* thresholds = app.add_subcommand("thresholds", "Print the gap constants and their defining relations");
  thresholds->add_flag("--json", thresholds_json, "Emit JSON instead of a table");

  std::string path, kind = "auto";
  std::optional<double> tol_flag;
  bool timings = false;
  auto* analyze = app.add_subcommand("analyze", "Analyze a tensor file and print a JSON report");
  analyze->add_option("path", path, "Tensor file")->required();
  analyze->add_option("--kind", kind, "auto|riemann|weyl|kahler")
      ->check(CLI::IsMember({"auto", "riemann", "weyl", "kahler"}));
  analyze->add_option("--tol", tol_flag, "Invariant tolerance (default 1e-10 or $RFGAP_TOL)")
      ->check(CLI::PositiveNumber);
  double berger_tol = BergerOptions{}.tolerance;
  analyze->add_option("--berger-tol", berger_tol, "Largest accepted |R_ijik| (j != k) in the Berger frame")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--timings", timings, "Add per-stage wall-clock timings (output is no longer bit-stable)");

  double delta = 1.0;
  int grid = 2001;
  bool remark = false, dump_grid = false;
  auto* polygon = app.add_subcommand("polygon", "Extrema of q over the region for one delta");
  polygon->add_option("--delta", delta, "delta in [0.5, 2]")->required();
  polygon->add_option("--grid", grid, "Grid oracle resolution (>= 101)")->check(CLI::Range(101, 20001));
  polygon->add_flag("--remark", remark, "Use the maximum-point region");
  polygon->add_flag("--dump-grid", dump_grid, "Include every grid point inside the region");

  long count = 1;
  std::uint64_t sample_seed = 0;
  std::string sample_kind = "weyl", out_dir;
  auto* sample = app.add_subcommand("sample", "Write seeded Ricci-flat tensor files and a manifest");
  sample->add_option("--count", count, "Number of files")->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", sample_seed, "Master seed")->required();
  sample->add_option("--kind", sample_kind, "weyl|kahler")->check(CLI::IsMember({"weyl", "kahler"}));
  sample->add_option("--out", out_dir, "Output directory")->required();

  std::string suite = "all";
  SuiteOptions sopt;
  auto* verify = app.add_subcommand("verify", "Run the seeded verification suites");
  verify->add_option("--suite", suite, "core|berger|polygon|kahler|all")
      ->check(CLI::IsMember({"core", "berger", "polygon", "kahler", "all"}));
  verify->add_option("--samples", sopt.samples, "Samples per suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", sopt.seed, "Master seed");
  verify->add_option("--jobs", sopt.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::internal);
  }

  try {
    if (*thresholds) return cmd_thresholds(thresholds_json, out);
    if (*analyze) {
      const double tol = tol_flag ? *tol_flag : default_tolerance();
      return cmd_analyze(path, kind, tol, berger_tol, timings, out);
    }
    if (*polygon) {
      PolygonReportOptions o;
      o.delta = delta;
      o.grid = grid;
      o.region = remark ? RegionKind::remark_max_point : RegionKind::min_point;
      o.dump_grid = dump_grid;
      out << polygon_report(o).dump(2) << "\n";
      return 0;
    }
    if (*sample) return cmd_sample(count, sample_seed, sample_kind, out_dir, out);
    if (*verify) {
      bool passed = false;
      out << run_verify(suite, sopt, passed).dump(2) << "\n";
      return passed ? 0 : static_cast<int>(ExitCode::invariant);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::internal);
  }
  return static_cast<int>(ExitCode::internal);
}

}  // namespace rfgap

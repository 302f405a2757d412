// elastica: command-line front end for the Sobolev elastic-flow library.
// Talks to the core exclusively through the shared-library C API.
//
// Exit codes: 0 converged/ok, 2 time limit, 3 step failure, 4 diagnostic
// warning (insufficient tail), 64 usage, 65 data/parse, 66 cannot open
// input, 70 internal.

#include <elastica/elastica.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTimeLimit = 2;
constexpr int kExitStepFailure = 3;
constexpr int kExitDiagWarning = 4;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

struct CurveDeleter {
  void operator()(ela_curve* c) const { ela_curve_free(c); }
};
struct TrajDeleter {
  void operator()(ela_trajectory* t) const { ela_trajectory_free(t); }
};
using CurvePtr = std::unique_ptr<ela_curve, CurveDeleter>;
using TrajPtr = std::unique_ptr<ela_trajectory, TrajDeleter>;

int status_exit(ela_status s) {
  switch (s) {
    case ELA_OK: return kExitOk;
    case ELA_ERR_IO: return kExitNoInput;
    case ELA_ERR_PARSE: return kExitData;
    case ELA_ERR_INVALID_ARGUMENT: return kExitUsage;
    case ELA_ERR_NON_IMMERSED: return kExitData;
    case ELA_ERR_INSUFFICIENT_TAIL: return kExitDiagWarning;
    default: return kExitInternal;
  }
}

[[noreturn]] void fail(ela_status s, const std::string& context) {
  std::cerr << "elastica: " << context << ": " << ela_last_error() << "\n";
  std::exit(status_exit(s));
}

void check(ela_status s, const std::string& context) {
  if (s != ELA_OK) fail(s, context);
}

CurvePtr load_curve_or_die(const std::string& path) {
  ela_curve* c = nullptr;
  check(ela_curve_load(path.c_str(), &c), "loading " + path);
  return CurvePtr(c);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "elastica: cannot write " << path << "\n";
    std::exit(kExitNoInput);
  }
  out << text;
}

std::string out_root() {
  const char* env = std::getenv("ELASTICA_OUT_ROOT");
  return env ? std::string(env) : std::string(".");
}

// ---- run manifest ------------------------------------------------------

json manifest_base(const std::string& command) {
  json m;
  m["command"] = command;
  m["version"] = ela_version();
  return m;
}

void finish_manifest(json& m, const fs::path& dir, double wall_seconds,
                     const std::string& status) {
  m["wall_clock_seconds"] = wall_seconds;
  m["status"] = status;
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

// ---- svg helpers -------------------------------------------------------

struct Box {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
};

std::string svg_polyline(const std::vector<std::pair<double, double>>& pts, const Box& box,
                         int size, const std::string& style, bool close) {
  double spanx = std::max(box.xmax - box.xmin, 1e-12);
  double spany = std::max(box.ymax - box.ymin, 1e-12);
  double span = std::max(spanx, spany);
  double pad = 0.05 * span;
  auto mapx = [&](double x) { return (x - box.xmin + pad) / (span + 2 * pad) * size; };
  auto mapy = [&](double y) { return size - (y - box.ymin + pad) / (span + 2 * pad) * size; };
  std::ostringstream ss;
  ss << "<polyline fill=\"none\" " << style << " points=\"";
  for (const auto& [x, y] : pts) ss << mapx(x) << "," << mapy(y) << " ";
  if (close && !pts.empty()) ss << mapx(pts.front().first) << "," << mapy(pts.front().second);
  ss << "\"/>\n";
  return ss.str();
}

// ---- curve make --------------------------------------------------------

struct MakeArgs {
  std::string shape;
  double r = 1.0;
  int folds = 1;
  double a = 1.3, b = 0.7;
  double scale = 1.0;
  std::uint64_t seed = 1;
  double decay = 0.9;
  int n = 128;
  int dim = 2;
  std::string out;
};

int cmd_curve_make(const MakeArgs& args) {
  ela_curve* c = nullptr;
  ela_status s = ELA_ERR_INVALID_ARGUMENT;
  if (args.shape == "circle")
    s = ela_curve_make_circle(args.r, args.folds, args.n, args.dim, &c);
  else if (args.shape == "ellipse")
    s = ela_curve_make_ellipse(args.a, args.b, args.n, args.dim, &c);
  else if (args.shape == "eight" || args.shape == "figure-eight")
    s = ela_curve_make_figure_eight(args.scale, args.n, args.dim, &c);
  else if (args.shape == "fourier")
    s = ela_curve_make_fourier(args.seed, args.decay, args.n, args.dim, &c);
  else {
    std::cerr << "elastica: unknown shape '" << args.shape
              << "' (expected circle|ellipse|eight|fourier)\n";
    return kExitUsage;
  }
  check(s, "generating " + args.shape);
  CurvePtr holder(c);
  check(ela_curve_save(c, args.out.c_str()), "writing " + args.out);
  std::cout << "wrote " << args.out << " (" << args.shape << ", n=" << args.n
            << ", dim=" << args.dim << ")\n";
  return kExitOk;
}

// ---- flow run ----------------------------------------------------------

struct FlowArgs {
  std::string in;
  std::string out_dir;
  double lambda = 1.0;
  std::string backend = "weak";
  std::string integrator = "rk45";
  double dt = 1e-2;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double dt_min = 1e-12;
  double dt_max = 1.0;
  double grad_tol = 1e-6;
  double t_max = 1e4;
  int stride = 25;
};

int cmd_flow_run(const FlowArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  CurvePtr c = load_curve_or_die(args.in);

  ela_flow_options opts;
  ela_flow_options_init(&opts);
  opts.lambda = args.lambda;
  opts.backend = args.backend == "kernel" ? ELA_BACKEND_KERNEL : ELA_BACKEND_WEAK;
  opts.integrator = args.integrator == "rk4" ? ELA_INTEGRATOR_RK4 : ELA_INTEGRATOR_RK45;
  opts.dt = args.dt;
  opts.rel_tol = args.rel_tol;
  opts.abs_tol = args.abs_tol;
  opts.dt_min = args.dt_min;
  opts.dt_max = args.dt_max;
  opts.grad_tol = args.grad_tol;
  opts.t_max = args.t_max;
  opts.snapshot_stride = args.stride;

  fs::path dir = args.out_dir.empty()
                     ? fs::path(out_root()) / ("flowrun-" + fs::path(args.in).stem().string() +
                                               "-" + args.backend)
                     : fs::path(args.out_dir);
  fs::create_directories(dir);

  ela_trajectory* traj = nullptr;
  check(ela_flow_run(c.get(), &opts, &traj), "running flow");
  TrajPtr holder(traj);

  check(ela_trajectory_save(traj, (dir / "trajectory.jsonl").string().c_str()),
        "writing trajectory");
  ela_curve* final = nullptr;
  check(ela_trajectory_final_curve(traj, &final), "final curve");
  CurvePtr final_holder(final);
  check(ela_curve_save(final, (dir / "final.curve").string().c_str()), "writing final curve");

  ela_terminal_kind term = ela_trajectory_terminal(traj);
  std::string status = term == ELA_TERMINAL_CONVERGED     ? "Converged"
                       : term == ELA_TERMINAL_TIME_LIMIT ? "TimeLimit"
                                                          : "StepFailure";

  long nrec = ela_trajectory_record_count(traj);
  ela_flow_record last;
  ela_trajectory_record(traj, nrec - 1, &last);

  json m = manifest_base("flow run");
  m["input"] = args.in;
  m["output_dir"] = dir.string();
  m["config"] = {{"lambda", args.lambda},   {"backend", args.backend},
                 {"integrator", args.integrator}, {"dt", args.dt},
                 {"rel_tol", args.rel_tol}, {"abs_tol", args.abs_tol},
                 {"dt_min", args.dt_min},   {"dt_max", args.dt_max},
                 {"grad_tol", args.grad_tol}, {"t_max", args.t_max},
                 {"snapshot_stride", args.stride}};
  m["records"] = nrec;
  m["final"] = {{"t", last.t}, {"energy", last.energy}, {"grad_norm", last.grad_norm},
                {"cum_length", last.cum_length}};
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finish_manifest(m, dir, wall, status);

  std::cout << status << ": t=" << last.t << " energy=" << last.energy
            << " grad=" << last.grad_norm << " records=" << nrec << " -> " << dir.string()
            << "\n";
  if (term == ELA_TERMINAL_TIME_LIMIT) return kExitTimeLimit;
  if (term == ELA_TERMINAL_STEP_FAILURE) return kExitStepFailure;
  return kExitOk;
}

// ---- flow compare ------------------------------------------------------

struct CompareArgs {
  std::string in;
  double lambda = 1.0;
  std::vector<double> dt_h2{0.1};
  std::vector<double> dt_l2{1e-7, 1e-2};
  long steps = 500;
  std::string backend = "kernel";
  std::string out;
};

int cmd_flow_compare(const CompareArgs& args) {
  CurvePtr c = load_curve_or_die(args.in);
  int n = ela_curve_samples(c.get());
  ela_backend_kind backend =
      args.backend == "weak" ? ELA_BACKEND_WEAK : ELA_BACKEND_KERNEL;

  std::ostringstream table;
  table << "method\tN\tdt\tsurvived_steps\tsurvived\tfinal_energy\n";
  auto probe = [&](int h2, double dt) {
    ela_stability_row row;
    check(ela_stability_probe(c.get(), args.lambda, h2, backend, dt, args.steps, &row),
          "stability probe");
    table << (h2 ? "h2" : "l2") << "\t" << n << "\t" << dt << "\t" << row.survived_steps << "\t"
          << (row.survived ? "yes" : "no") << "\t" << row.final_energy << "\n";
  };
  for (double dt : args.dt_h2) probe(1, dt);
  for (double dt : args.dt_l2) probe(0, dt);

  if (args.out.empty()) {
    std::cout << table.str();
  } else {
    write_text(args.out, table.str());
    std::cout << "wrote " << args.out << "\n";
  }
  return kExitOk;
}

// ---- diag --------------------------------------------------------------

int cmd_diag_lojasiewicz(const std::string& traj_path, const std::string& out) {
  ela_trajectory* traj = nullptr;
  check(ela_trajectory_load(traj_path.c_str(), &traj), "loading " + traj_path);
  TrajPtr holder(traj);

  ela_loja_fit fit;
  ela_status s = ela_fit_lojasiewicz(traj, &fit);
  if (s == ELA_ERR_INSUFFICIENT_TAIL) {
    std::cerr << "elastica: warning: " << ela_last_error() << "\n";
    return kExitDiagWarning;
  }
  check(s, "fitting");

  json rep = {{"theta", fit.theta},     {"Z", fit.z},          {"residual", fit.residual},
              {"E_inf", fit.e_inf},     {"t_start", fit.t_start}, {"t_end", fit.t_end},
              {"points", fit.points},   {"reliable", fit.reliable != 0}};
  std::string text = rep.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return kExitOk;
}

int cmd_diag_classify(const std::string& in, double lambda, const std::string& out) {
  CurvePtr c = load_curve_or_die(in);
  ela_limit_report rep;
  check(ela_classify_limit(c.get(), lambda, &rep), "classifying");

  std::vector<double> center(ela_curve_dim(c.get()));
  check(ela_curve_centroid(c.get(), center.data()), "centroid");

  const char* names[] = {"Circle", "FigureEight", "Unclassified"};
  json doc = {{"classification", names[rep.classification]},
              {"radius", rep.radius},
              {"multiplicity", rep.multiplicity},
              {"rotation_index", rep.rotation_index},
              {"rotation_valid", rep.rotation_valid != 0},
              {"curvature_mean", rep.curvature_mean},
              {"curvature_std", rep.curvature_std},
              {"stationarity_norm", rep.stationarity_norm},
              {"center", center}};
  std::string text = doc.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return kExitOk;
}

int cmd_diag_invariance(const std::string& in, double lambda, std::uint64_t seed,
                        const std::vector<double>& translation, const std::string& backend,
                        const std::string& out) {
  CurvePtr c = load_curve_or_die(in);
  int dim = ela_curve_dim(c.get());
  std::vector<double> tr(translation);
  tr.resize(dim, 0.0);

  ela_invariance_report rep;
  check(ela_invariance_audit(c.get(), lambda, seed, tr.data(),
                             backend == "kernel" ? ELA_BACKEND_KERNEL : ELA_BACKEND_WEAK, &rep),
        "invariance audit");
  json doc = {{"translation", {{"energy_rel", rep.translation_energy_rel},
                               {"grad_rel", rep.translation_grad_rel}}},
              {"diffeomorphism", {{"energy_rel", rep.diffeo_energy_rel},
                                  {"grad_rel", rep.diffeo_grad_rel}}},
              {"seed", seed}};
  std::string text = doc.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return kExitOk;
}

// ---- plot emit ---------------------------------------------------------

int cmd_plot_emit(const std::string& run_dir, const std::string& out_dir) {
  fs::path run(run_dir);
  ela_trajectory* traj = nullptr;
  check(ela_trajectory_load((run / "trajectory.jsonl").string().c_str(), &traj),
        "loading trajectory");
  TrajPtr holder(traj);

  fs::path out = out_dir.empty() ? run : fs::path(out_dir);
  fs::create_directories(out);

  // Columnar series.
  std::ostringstream tsv;
  tsv << "t\tenergy\tgrad_norm\tdt\tcum_length\n";
  long nrec = ela_trajectory_record_count(traj);
  std::vector<std::pair<double, double>> energy_pts;
  for (long i = 0; i < nrec; ++i) {
    ela_flow_record r;
    ela_trajectory_record(traj, i, &r);
    tsv << r.t << "\t" << r.energy << "\t" << r.grad_norm << "\t" << r.dt << "\t" << r.cum_length
        << "\n";
    energy_pts.emplace_back(r.t, r.energy);
  }
  write_text(out / "series.tsv", tsv.str());

  // Energy decay plot.
  {
    Box box;
    for (const auto& [x, y] : energy_pts) box.add(x, y);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    svg << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    svg << svg_polyline(energy_pts, box, 640, "stroke=\"#1f6feb\" stroke-width=\"2\"", false);
    svg << "</svg>\n";
    write_text(out / "energy.svg", svg.str());
  }

  // Snapshot outlines, first two coordinates.
  {
    long nsnap = ela_trajectory_snapshot_count(traj);
    Box box;
    std::vector<std::vector<std::pair<double, double>>> outlines;
    for (long i = 0; i < nsnap; ++i) {
      double t = 0.0;
      ela_curve* snap = nullptr;
      check(ela_trajectory_snapshot(traj, i, &t, &snap), "snapshot");
      CurvePtr sh(snap);
      int n = ela_curve_samples(snap), dim = ela_curve_dim(snap);
      std::vector<double> pts(static_cast<size_t>(n) * dim);
      ela_curve_points(snap, pts.data());
      std::vector<std::pair<double, double>> line;
      for (int j = 0; j < n; ++j) {
        double x = pts[static_cast<size_t>(j) * dim];
        double y = pts[static_cast<size_t>(j) * dim + 1];
        line.emplace_back(x, y);
        box.add(x, y);
      }
      outlines.push_back(std::move(line));
    }
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    svg << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    for (size_t i = 0; i < outlines.size(); ++i) {
      double opacity = outlines.size() > 1
                           ? 0.15 + 0.85 * static_cast<double>(i) / (outlines.size() - 1)
                           : 1.0;
      std::ostringstream style;
      style << "stroke=\"#d29922\" stroke-width=\"1.5\" stroke-opacity=\"" << opacity << "\"";
      svg << svg_polyline(outlines[i], box, 640, style.str(), true);
    }
    svg << "</svg>\n";
    write_text(out / "snapshots.svg", svg.str());
  }

  std::cout << "wrote " << (out / "series.tsv").string() << ", energy.svg, snapshots.svg\n";
  return kExitOk;
}

// Flags override config-file keys override built-in defaults: a key from
// the file is applied only when its flag was not given on the command line.
void apply_flow_config_file(const std::string& path, const CLI::App& cmd, FlowArgs& args) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "elastica: cannot open config file " << path << "\n";
    std::exit(kExitNoInput);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string t) {
      auto b = t.find_first_not_of(" \t\"");
      auto e = t.find_last_not_of(" \t\"\r");
      return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    for (char& ch : key)
      if (ch == '_') ch = '-';
    if (key.empty()) continue;
    if (cmd.count("--" + key) > 0) continue;  // explicit flag wins
    try {
      if (key == "lambda") args.lambda = std::stod(value);
      else if (key == "backend") args.backend = value;
      else if (key == "integrator") args.integrator = value;
      else if (key == "dt") args.dt = std::stod(value);
      else if (key == "rel-tol") args.rel_tol = std::stod(value);
      else if (key == "abs-tol") args.abs_tol = std::stod(value);
      else if (key == "dt-min") args.dt_min = std::stod(value);
      else if (key == "dt-max") args.dt_max = std::stod(value);
      else if (key == "grad-tol") args.grad_tol = std::stod(value);
      else if (key == "t-max") args.t_max = std::stod(value);
      else if (key == "stride") args.stride = std::stoi(value);
      else {
        std::cerr << "elastica: unknown config key '" << key << "' at " << path << ":" << lineno
                  << "\n";
        std::exit(kExitUsage);
      }
    } catch (const std::exception&) {
      std::cerr << "elastica: bad value for '" << key << "' at " << path << ":" << lineno
                << "\n";
      std::exit(kExitData);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sobolev gradient flow for the elastic energy on closed curves"};
  app.require_subcommand(1);

  // curve
  auto* curve = app.add_subcommand("curve", "curve fixtures and files");
  curve->require_subcommand(1);
  MakeArgs make_args;
  auto* make = curve->add_subcommand("make", "generate a closed curve file");
  make->add_option("--shape", make_args.shape, "circle|ellipse|eight|fourier")->required();
  make->add_option("--r", make_args.r, "circle radius");
  make->add_option("--p", make_args.folds, "circle cover count");
  make->add_option("--a", make_args.a, "ellipse semi-axis a");
  make->add_option("--b", make_args.b, "ellipse semi-axis b");
  make->add_option("--scale", make_args.scale, "figure-eight scale");
  make->add_option("--seed", make_args.seed, "fourier seed");
  make->add_option("--decay", make_args.decay, "fourier spectral decay");
  make->add_option("--n", make_args.n, "sample count (even, >= 16)");
  make->add_option("--dim", make_args.dim, "ambient dimension");
  make->add_option("--out", make_args.out, "output curve file")->required();

  // flow
  auto* flow = app.add_subcommand("flow", "run and compare flows");
  flow->require_subcommand(1);
  FlowArgs flow_args;
  auto* run = flow->add_subcommand("run", "integrate the Sobolev gradient flow");
  std::string run_config;
  run->add_option("--config", run_config,
                  "key = value file of defaults; explicit flags take precedence");
  run->add_option("--in", flow_args.in, "input curve file")->required();
  run->add_option("--lambda", flow_args.lambda, "length-penalty constant (nonzero)");
  run->add_option("--backend", flow_args.backend, "weak|kernel");
  run->add_option("--integrator", flow_args.integrator, "rk45|rk4");
  run->add_option("--dt", flow_args.dt, "fixed or initial step");
  run->add_option("--rel-tol", flow_args.rel_tol, "adaptive relative tolerance");
  run->add_option("--abs-tol", flow_args.abs_tol, "adaptive absolute tolerance");
  run->add_option("--dt-min", flow_args.dt_min, "smallest admissible step");
  run->add_option("--dt-max", flow_args.dt_max, "largest admissible step");
  run->add_option("--grad-tol", flow_args.grad_tol, "stopping gradient norm");
  run->add_option("--t-max", flow_args.t_max, "time horizon");
  run->add_option("--stride", flow_args.stride, "snapshot stride");
  run->add_option("--out-dir", flow_args.out_dir,
                  "run directory (default $ELASTICA_OUT_ROOT/flowrun-<name>-<backend>)");

  CompareArgs cmp_args;
  auto* compare = flow->add_subcommand("compare", "fixed-step stability table (H^2 vs L^2)");
  compare->add_option("--in", cmp_args.in, "input curve file")->required();
  compare->add_option("--lambda", cmp_args.lambda, "length-penalty constant");
  compare->add_option("--dt-h2", cmp_args.dt_h2, "H^2 flow steps to probe");
  compare->add_option("--dt-l2", cmp_args.dt_l2, "L^2 flow steps to probe");
  compare->add_option("--steps", cmp_args.steps, "step budget per probe");
  compare->add_option("--backend", cmp_args.backend, "H^2 gradient backend");
  compare->add_option("--out", cmp_args.out, "write the table here instead of stdout");

  // diag
  auto* diag = app.add_subcommand("diag", "convergence diagnostics");
  diag->require_subcommand(1);
  std::string loja_traj, loja_out;
  auto* loja = diag->add_subcommand("lojasiewicz", "fit the gradient-inequality exponent");
  loja->add_option("--traj", loja_traj, "trajectory stream file")->required();
  loja->add_option("--out", loja_out, "report file (stdout if omitted)");

  std::string cls_in, cls_out;
  double cls_lambda = 1.0;
  auto* cls = diag->add_subcommand("classify", "classify a curve as a flow limit");
  cls->add_option("--in", cls_in, "curve file")->required();
  cls->add_option("--lambda", cls_lambda, "length-penalty constant");
  cls->add_option("--out", cls_out, "report file (stdout if omitted)");

  std::string inv_in, inv_out, inv_backend = "weak";
  double inv_lambda = 1.0;
  std::uint64_t inv_seed = 1;
  std::vector<double> inv_tr{5.0, -3.0};
  auto* inv = diag->add_subcommand("invariance", "reparametrisation/translation audit");
  inv->add_option("--in", inv_in, "curve file")->required();
  inv->add_option("--lambda", inv_lambda, "length-penalty constant");
  inv->add_option("--seed", inv_seed, "diffeomorphism seed");
  inv->add_option("--translate", inv_tr, "translation vector components");
  inv->add_option("--backend", inv_backend, "weak|kernel");
  inv->add_option("--out", inv_out, "report file (stdout if omitted)");

  // plot
  auto* plot = app.add_subcommand("plot", "plot-ready data from runs");
  plot->require_subcommand(1);
  std::string plot_run, plot_out;
  auto* emit = plot->add_subcommand("emit", "columnar series and SVG snapshots");
  emit->add_option("--run", plot_run, "flow run directory")->required();
  emit->add_option("--out-dir", plot_out, "output directory (defaults to the run directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (make->parsed()) return cmd_curve_make(make_args);
    if (run->parsed()) {
      if (!run_config.empty()) apply_flow_config_file(run_config, *run, flow_args);
      return cmd_flow_run(flow_args);
    }
    if (compare->parsed()) return cmd_flow_compare(cmp_args);
    if (loja->parsed()) return cmd_diag_lojasiewicz(loja_traj, loja_out);
    if (cls->parsed()) return cmd_diag_classify(cls_in, cls_lambda, cls_out);
    if (inv->parsed())
      return cmd_diag_invariance(inv_in, inv_lambda, inv_seed, inv_tr, inv_backend, inv_out);
    if (emit->parsed()) return cmd_plot_emit(plot_run, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "elastica: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiments.hpp"
#include "msym/io.hpp"
#include "svg.hpp"

namespace msym::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Thrown for any flag/config problem; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double alpha = 0.1;
  double beta = 0.1;
  double dt = 0.08;
  double T = 200.0;
  double lambda = 5.0;
  double sigma = 0.2;
  double horizon = 200.0;
  double p0 = 0.0;
  double q0 = 1.0;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::size_t channels = 1;
  std::size_t substeps = kDefaultJumpSubsteps;
  std::vector<double> dts{0.08, 0.04, 0.02, 0.01, 0.005};
  std::string scheme = "symplectic";
  std::string out_dir = ".";
  std::string config;
  bool svg = false;
};

// JSON key -> setter. Keys mirror the long flag names.
const std::map<std::string, std::function<void(Options&, const json&)>>& config_setters() {
  static const std::map<std::string, std::function<void(Options&, const json&)>> setters = {
      {"alpha", [](Options& o, const json& v) { o.alpha = v.get<double>(); }},
      {"beta", [](Options& o, const json& v) { o.beta = v.get<double>(); }},
      {"dt", [](Options& o, const json& v) { o.dt = v.get<double>(); }},
      {"T", [](Options& o, const json& v) { o.T = v.get<double>(); }},
      {"lambda", [](Options& o, const json& v) { o.lambda = v.get<double>(); }},
      {"sigma", [](Options& o, const json& v) { o.sigma = v.get<double>(); }},
      {"horizon", [](Options& o, const json& v) { o.horizon = v.get<double>(); }},
      {"p0", [](Options& o, const json& v) { o.p0 = v.get<double>(); }},
      {"q0", [](Options& o, const json& v) { o.q0 = v.get<double>(); }},
      {"seed", [](Options& o, const json& v) { o.seed = v.get<std::uint64_t>(); }},
      {"samples", [](Options& o, const json& v) { o.samples = v.get<std::size_t>(); }},
      {"channels", [](Options& o, const json& v) { o.channels = v.get<std::size_t>(); }},
      {"substeps", [](Options& o, const json& v) { o.substeps = v.get<std::size_t>(); }},
      {"dts", [](Options& o, const json& v) { o.dts = v.get<std::vector<double>>(); }},
      {"scheme", [](Options& o, const json& v) { o.scheme = v.get<std::string>(); }},
      {"out-dir", [](Options& o, const json& v) { o.out_dir = v.get<std::string>(); }},
      {"svg", [](Options& o, const json& v) { o.svg = v.get<bool>(); }},
  };
  return setters;
}

/// Fills every option the user did not pass explicitly from the JSON config.
void apply_config(const CLI::App& sub, Options& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw UsageError("cannot read config file " + o.config);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + o.config + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config " + o.config + " must be a JSON object");
  const auto& setters = config_setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw UsageError("unknown config key '" + key + "'");
    const auto* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;  // not for this command, or flag wins
    try {
      it->second(o, value);
    } catch (const json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

void add_model_flags(CLI::App& sub, Options& o) {
  sub.add_option("--alpha", o.alpha, "Kubo drift rotation rate")->capture_default_str();
  sub.add_option("--beta", o.beta, "Kubo noise coupling")->capture_default_str();
  sub.add_option("--p0", o.p0, "initial momentum")->capture_default_str();
  sub.add_option("--q0", o.q0, "initial position")->capture_default_str();
  sub.add_option("--substeps", o.substeps, "RK4 substeps of the jump flow")->capture_default_str();
}

void add_noise_flags(CLI::App& sub, Options& o) {
  sub.add_option("--lambda", o.lambda, "jump rate")->capture_default_str();
  sub.add_option("--sigma", o.sigma, "jump mark standard deviation")->capture_default_str();
  sub.add_option("--seed", o.seed, "root random seed")->capture_default_str();
}

void add_output_flags(CLI::App& sub, Options& o) {
  sub.add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
  sub.add_option("--config", o.config, "JSON config; explicit flags take precedence");
  sub.add_flag("--svg", o.svg, "also write SVG line charts");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

void validate_model(const Options& o) {
  require(std::isfinite(o.alpha) && std::isfinite(o.beta), "--alpha/--beta must be finite");
  require(std::isfinite(o.p0) && std::isfinite(o.q0), "--p0/--q0 must be finite");
  require(o.substeps >= 1, "--substeps must be >= 1");
}

void validate_noise(const Options& o) {
  require(std::isfinite(o.lambda) && o.lambda >= 0.0, "--lambda must be finite and >= 0");
  require(std::isfinite(o.sigma) && o.sigma >= 0.0, "--sigma must be finite and >= 0");
}

KuboExperiment make_setup(const Options& o) {
  KuboExperiment setup;
  setup.params = {o.alpha, o.beta};
  setup.rate = o.lambda;
  setup.mark_sigma = o.sigma;
  setup.seed = o.seed;
  setup.initial = PhaseState{o.p0, o.q0};
  setup.controls.dt = o.dt;
  setup.controls.jump_substeps = o.substeps;
  return setup;
}

fs::path prepare_out_dir(const Options& o) {
  fs::path dir(o.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_csv(const fs::path& file, const std::function<void(std::ostream&)>& writer) {
  io::write_file_atomic(file, writer);
}

SvgSeries phase_series(const std::string& name, const Trajectory& t) {
  SvgSeries s{name, {}, {}};
  for (const auto& x : t.states) {
    s.x.push_back(x.p[0]);
    s.y.push_back(x.q[0]);
  }
  return s;
}

// --- sample-path --------------------------------------------------------

int cmd_sample_path(const Options& o, std::ostream& out) {
  validate_noise(o);
  require(std::isfinite(o.horizon) && o.horizon > 0.0, "--horizon must be > 0");
  require(o.channels >= 1, "--channels must be >= 1");
  const auto path = sample_path({o.lambda, o.sigma, o.channels, o.seed}, o.horizon);
  const auto dir = prepare_out_dir(o);
  write_csv(dir / "path.csv", [&](std::ostream& f) { write_path_csv(f, path); });
  out << "events: " << path.events().size() << '\n';
  return kExitOk;
}

// --- orbit / hamiltonian ------------------------------------------------

void validate_run(const Options& o) {
  validate_model(o);
  validate_noise(o);
  require(std::isfinite(o.dt) && o.dt > 0.0, "--dt must be > 0");
  require(std::isfinite(o.T) && o.T >= 0.0, "--T must be >= 0");
}

int report_divergence(const OrbitSet& orbits, std::ostream& out) {
  if (orbits.divergence.empty()) return kExitOk;
  for (const auto& message : orbits.divergence) {
    out << "diverged: " << message << " (partial output kept)\n";
  }
  return kExitDivergence;
}

int cmd_orbit(const Options& o, std::ostream& out) {
  validate_run(o);
  const auto orbits = run_orbits(make_setup(o), o.T);
  const auto dir = prepare_out_dir(o);
  write_csv(dir / "orbit_exact.csv", [&](std::ostream& f) { write_trajectory_csv(f, orbits.exact); });
  write_csv(dir / "orbit_symplectic.csv",
            [&](std::ostream& f) { write_trajectory_csv(f, orbits.symplectic); });
  write_csv(dir / "orbit_explicit.csv",
            [&](std::ostream& f) { write_trajectory_csv(f, orbits.explicit_euler); });
  if (o.svg) {
    write_svg_chart(dir / "orbit.svg", "Phase-plane orbits", "P", "Q",
                    {phase_series("exact", orbits.exact),
                     phase_series("symplectic", orbits.symplectic),
                     phase_series("explicit", orbits.explicit_euler)});
  }
  auto radius = [](const Trajectory& t) { return std::hypot(t.final_state().p[0], t.final_state().q[0]); };
  out << "steps: " << orbits.symplectic.size() - 1 << '\n'
      << "final radius exact: " << io::format_double(radius(orbits.exact)) << '\n'
      << "final radius symplectic: " << io::format_double(radius(orbits.symplectic)) << '\n'
      << "final radius explicit: " << io::format_double(radius(orbits.explicit_euler)) << '\n';
  return report_divergence(orbits, out);
}

int cmd_hamiltonian(const Options& o, std::ostream& out) {
  validate_run(o);
  const auto setup = make_setup(o);
  const auto orbits = run_orbits(setup, o.T);
  const auto system = kubo_system(setup.params);
  const auto h_exact = monitored_series(system, orbits.exact);
  const auto h_symp = monitored_series(system, orbits.symplectic);
  const auto h_expl = monitored_series(system, orbits.explicit_euler);
  const std::size_t rows = std::min({h_exact.size(), h_symp.size(), h_expl.size()});

  const auto dir = prepare_out_dir(o);
  write_csv(dir / "hamiltonian.csv", [&](std::ostream& f) {
    f << "t,H_exact,H_symplectic,H_explicit\n";
    for (std::size_t j = 0; j < rows; ++j) {
      f << io::format_double(h_exact[j].first) << ',' << io::format_double(h_exact[j].second)
        << ',' << io::format_double(h_symp[j].second) << ','
        << io::format_double(h_expl[j].second) << '\n';
    }
  });
  if (o.svg) {
    auto series = [rows](const std::string& name, const TimeSeries& ts) {
      SvgSeries s{name, {}, {}};
      for (std::size_t j = 0; j < rows; ++j) {
        s.x.push_back(ts[j].first);
        s.y.push_back(ts[j].second);
      }
      return s;
    };
    write_svg_chart(dir / "hamiltonian.svg", "Monitored Hamiltonian", "t", "H",
                    {series("exact", h_exact), series("symplectic", h_symp),
                     series("explicit", h_expl)});
  }
  out << "rows: " << rows << '\n'
      << "final H symplectic: " << io::format_double(h_symp[rows - 1].second) << '\n'
      << "final H explicit: " << io::format_double(h_expl[rows - 1].second) << '\n';
  return report_divergence(orbits, out);
}

// --- converge -----------------------------------------------------------

int cmd_converge(const Options& o, std::ostream& out) {
  validate_model(o);
  validate_noise(o);
  require(o.samples >= 2, "--samples must be >= 2");
  require(o.dts.size() >= 3, "--dts needs at least 3 step sizes");
  for (double dt : o.dts) require(std::isfinite(dt) && dt > 0.0, "--dts entries must be > 0");
  require(std::isfinite(o.T) && o.T > 0.0, "--T must be > 0");
  Scheme scheme{};
  try {
    scheme = parse_scheme(o.scheme);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  require(scheme != Scheme::kExact, "--scheme must be symplectic, explicit or pathwise");

  const auto fit = run_convergence(make_setup(o), o.T, o.dts, o.samples, scheme);
  const auto dir = prepare_out_dir(o);
  write_csv(dir / "converge.csv", [&](std::ostream& f) { write_order_csv(f, fit); });
  write_csv(dir / "converge_summary.csv", [&](std::ostream& f) { write_order_summary_csv(f, fit); });
  if (o.svg) {
    SvgSeries measured{"ms error", {}, {}};
    SvgSeries reference{"slope 0.5", {}, {}};
    for (std::size_t i = 0; i < fit.dts.size(); ++i) {
      measured.x.push_back(std::log(fit.dts[i]));
      measured.y.push_back(std::log(fit.errors[i]));
    }
    const double c = measured.y.back() - 0.5 * measured.x.back();
    for (double x : measured.x) {
      reference.x.push_back(x);
      reference.y.push_back(c + 0.5 * x);
    }
    write_svg_chart(dir / "converge.svg", "Mean-square convergence", "log dt", "log error",
                    {measured, reference});
  }
  out << "scheme: " << scheme_name(scheme) << '\n'
      << "slope: " << io::format_double(fit.slope) << '\n'
      << "intercept: " << io::format_double(fit.intercept) << '\n'
      << "residual: " << io::format_double(fit.residual) << '\n'
      << "residual vs slope 0.5: " << io::format_double(fit.reference_residual) << '\n';
  return kExitOk;
}

// --- symplectic-check ---------------------------------------------------

int cmd_symplectic_check(const Options& o, std::ostream& out) {
  validate_model(o);
  require(o.samples >= 1, "--samples must be >= 1");
  const auto report = run_symplectic_check({o.alpha, o.beta}, o.samples, o.seed, StepControls{});
  const auto dir = prepare_out_dir(o);
  write_csv(dir / "symplectic_check.csv", [&](std::ostream& f) {
    f << "kind,p,q,dt,dL,a,defect_symplectic,defect_explicit\n";
    for (const auto& r : report.rows) {
      f << (r.control ? "control" : "sample") << ',' << io::format_double(r.p) << ','
        << io::format_double(r.q) << ',' << io::format_double(r.dt) << ','
        << io::format_double(r.dL) << ',' << io::format_double(r.a) << ','
        << io::format_double(r.defect_symplectic) << ',' << io::format_double(r.defect_explicit)
        << '\n';
    }
  });
  write_csv(dir / "symplectic_check_summary.csv", [&](std::ostream& f) {
    f << "samples,max_defect_symplectic,max_defect_explicit,min_defect_explicit_large_a,"
         "max_defect_control\n"
      << o.samples << ',' << io::format_double(report.max_symplectic) << ','
      << io::format_double(report.max_explicit) << ','
      << io::format_double(report.min_explicit_large_a) << ','
      << io::format_double(report.max_control) << '\n';
  });
  out << "max defect symplectic: " << io::format_double(report.max_symplectic) << '\n'
      << "max defect explicit: " << io::format_double(report.max_explicit) << '\n'
      << "min explicit defect (|a| >= " << kLargeStepParameter
      << "): " << io::format_double(report.min_explicit_large_a) << '\n'
      << "max control defect: " << io::format_double(report.max_control) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure-preserving integrators for Hamiltonian SDEs with Marcus jump noise",
               "msym"};
  app.require_subcommand(1);

  Options path_opts, orbit_opts, ham_opts, conv_opts, check_opts;
  conv_opts.T = 10.0;
  conv_opts.samples = 500;
  check_opts.samples = 1000;

  auto* sample = app.add_subcommand("sample-path", "sample a compound Poisson path to CSV");
  add_noise_flags(*sample, path_opts);
  sample->add_option("--horizon", path_opts.horizon, "path horizon T")->capture_default_str();
  sample->add_option("--channels", path_opts.channels, "noise channels m")->capture_default_str();
  add_output_flags(*sample, path_opts);

  auto* orbit = app.add_subcommand("orbit", "exact / symplectic / explicit Kubo orbits");
  auto* ham = app.add_subcommand("hamiltonian", "monitored Hamiltonian along the three orbits");
  for (auto [sub, o] : {std::pair{orbit, &orbit_opts}, std::pair{ham, &ham_opts}}) {
    add_model_flags(*sub, *o);
    add_noise_flags(*sub, *o);
    sub->add_option("--dt", o->dt, "step size")->capture_default_str();
    sub->add_option("--T", o->T, "end time")->capture_default_str();
    add_output_flags(*sub, *o);
  }

  auto* conv = app.add_subcommand("converge", "mean-square convergence order on the Kubo model");
  add_model_flags(*conv, conv_opts);
  add_noise_flags(*conv, conv_opts);
  conv->add_option("--T", conv_opts.T, "end time")->capture_default_str();
  conv->add_option("--samples", conv_opts.samples, "Monte-Carlo paths M")->capture_default_str();
  conv->add_option("--dts", conv_opts.dts, "comma separated step sizes")
      ->delimiter(',')
      ->capture_default_str();
  conv->add_option("--scheme", conv_opts.scheme, "symplectic | explicit | pathwise")
      ->capture_default_str();
  add_output_flags(*conv, conv_opts);

  auto* check = app.add_subcommand("symplectic-check", "one-step symplectic defect report");
  check->add_option("--alpha", check_opts.alpha, "Kubo drift rotation rate")->capture_default_str();
  check->add_option("--beta", check_opts.beta, "Kubo noise coupling")->capture_default_str();
  check->add_option("--samples", check_opts.samples, "random samples")->capture_default_str();
  check->add_option("--seed", check_opts.seed, "random seed")->capture_default_str();
  add_output_flags(*check, check_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  const std::vector<std::pair<CLI::App*, Options*>> commands = {
      {sample, &path_opts}, {orbit, &orbit_opts}, {ham, &ham_opts},
      {conv, &conv_opts},   {check, &check_opts}};
  try {
    for (auto [sub, o] : commands) {
      if (!sub->parsed()) continue;
      apply_config(*sub, *o);
      if (sub == sample) return cmd_sample_path(*o, out);
      if (sub == orbit) return cmd_orbit(*o, out);
      if (sub == ham) return cmd_hamiltonian(*o, out);
      if (sub == conv) return cmd_converge(*o, out);
      if (sub == check) return cmd_symplectic_check(*o, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const InvalidSpecError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"msym"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace msym::cli

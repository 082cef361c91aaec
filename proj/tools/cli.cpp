#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qeac/qeac.hpp"

namespace qeac::cli {

namespace {

struct Options {
  int l_max = 10;
  int L = 0;
  std::string format = "json";
  std::string source = "computed";
  std::string model = "collective";
  std::string lamb = "zero";
  std::string geometry_path;
  double gamma0 = 1.0;
  double delta0 = 0.0;
  double t_max = 5.0;
  int samples = 51;
  double dt = 1e-3;
  std::optional<double> c0, c1;
  bool singlet = false;
  std::string state_path;
  std::string initial;
  std::vector<double> dark;
  int n_traj = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  bool sweep = false;
  double k0d_max = 2.0;
  double k0d_step = 0.1;
  std::string out_path;
  std::string summary_path;
};

// Reported as exit code 2.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error("UsageError", msg) {}
};

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json check(const std::string& name, double residual, bool pass) {
  return Json{{"name", name}, {"residual", residual}, {"pass", pass}};
}

int cmd_table(const Options& o, std::ostream& out) {
  Sink sink(o.out_path, out);
  auto& s = sink.stream();
  if (o.format == "csv") {
    s << "L,multiplicities,dark_count,efficiency,asymptote,gap\n";
    for (int L = 1; L <= o.l_max; ++L) {
      const IrrepTable t = irrep_multiplicities(L);
      std::string mult;
      for (auto it = t.multiplicities.rbegin(); it != t.multiplicities.rend(); ++it)
        mult += (mult.empty() ? "" : ";") + format_spin(it->first) + ":" + it->second.str();
      const double eta = efficiency(L);
      const double asym = efficiency_asymptote(L);
      s << L << ',' << mult << ',' << dark_count(L).str() << ',' << format_number(eta) << ','
        << format_number(asym) << ',' << format_number(std::abs(eta - asym)) << '\n';
    }
    return 0;
  }
  Json rows = Json::array();
  for (int L = 1; L <= o.l_max; ++L) {
    Json row = table_to_json(L);
    row["asymptote"] = efficiency_asymptote(L);
    row["gap"] = std::abs(efficiency(L) - efficiency_asymptote(L));
    rows.push_back(row);
  }
  write_json(s, Json{{"command", "table"}, {"rows", rows}});
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const int L = o.L;
  const DarkBasis basis = compute_dark_basis(L);
  const auto k = basis.size();
  Json checks = Json::array();
  const BigInt expected = dark_count(L);
  checks.push_back(check("kernel_count", std::abs(static_cast<double>(k) - expected.convert_to<double>()),
                         BigInt(k) == expected));
  const double gram = max_abs(basis.vectors.adjoint() * basis.vectors - CMatrix::Identity(k, k));
  checks.push_back(check("orthonormality", gram, gram <= 1e-12));
  double residual = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) residual = std::max(residual, dark_residual(basis.vectors.col(c), L));
  checks.push_back(check("dark_residual", residual, residual <= 1e-12));
  if (L <= 4) {
    const CMatrix paper = paper_codewords(L).codewords;
    const double dist = paper.cols() == k
                            ? (paper * paper.adjoint() - basis.vectors * basis.vectors.adjoint()).norm()
                            : std::numeric_limits<double>::infinity();
    checks.push_back(check("published_span", dist, dist <= 1e-10));
  }
  bool all = true;
  for (const auto& c : checks) all = all && c["pass"].get<bool>();
  const Json summary{{"command", "verify"}, {"L", L}, {"dark_states", k}, {"checks", checks}, {"pass", all}};

  out << "L = " << L << ": " << k << " dark states\n";
  for (const auto& c : checks)
    out << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << c["name"].get<std::string>()
        << "  residual = " << format_number(c["residual"].get<double>()) << '\n';
  if (!o.summary_path.empty()) {
    Sink sink(o.summary_path, out);
    write_json(sink.stream(), summary);
  }
  return all ? 0 : 1;
}

int cmd_codewords(const Options& o, std::ostream& out) {
  const CodeSpec spec = o.source == "paper" ? paper_codewords(o.L) : to_code_spec(compute_dark_basis(o.L));
  Sink sink(o.out_path, out);
  Json j = codewords_to_json(spec);
  j["source"] = o.source;
  write_json(sink.stream(), j);
  return 0;
}

// Picks the initial state from the mutually exclusive state flags.
CVector initial_state(const Options& o, int& L) {
  const int chosen = (o.c0 || o.c1 ? 1 : 0) + (o.singlet ? 1 : 0) + (o.state_path.empty() ? 0 : 1) +
                     (o.initial.empty() ? 0 : 1) + (o.dark.empty() ? 0 : 1);
  if (chosen > 1) throw UsageError("give only one of --c0/--c1, --singlet, --state, --initial, --dark");
  if (o.c0 || o.c1) {
    L = 2;
    return encode_two_bit(o.c0.value_or(0.0), o.c1.value_or(0.0));
  }
  if (o.singlet) {
    L = 2;
    return (ket("01") - ket("10")) / std::sqrt(2.0);
  }
  if (!o.state_path.empty()) {
    CVector psi = state_from_json(read_json_file(o.state_path), &L);
    return psi;
  }
  if (!o.initial.empty()) {
    L = static_cast<int>(o.initial.size());
    return ket(o.initial);
  }
  if (!o.dark.empty()) {
    if (o.L < 1) throw UsageError("--dark needs --l");
    L = o.L;
    CVector logical(static_cast<Eigen::Index>(o.dark.size()));
    for (std::size_t i = 0; i < o.dark.size(); ++i) logical(static_cast<Eigen::Index>(i)) = o.dark[i];
    return logical_encode(L, logical);
  }
  throw UsageError("no initial state: use --c0/--c1, --singlet, --state, --initial or --dark");
}

LambParams lamb_params(const Options& o) {
  LambParams p;
  p.delta0 = o.delta0;
  p.gamma0 = o.gamma0;
  if (o.lamb == "collective") p.model = LambModel::collective;
  if (o.lamb == "cos_kernel") p.model = LambModel::cos_kernel;
  return p;
}

DampingModel build_model(const Options& o, int L) {
  if (o.model == "collective") return collective_model(L, o.gamma0, o.delta0);
  if (o.model == "independent") return independent_model(L, o.gamma0, o.delta0);
  if (o.geometry_path.empty()) throw UsageError("--model correlated requires --geometry");
  const Geometry g = geometry_from_json(read_json_file(o.geometry_path));
  if (static_cast<int>(g.size()) != L)
    throw DimensionMismatch("geometry has " + std::to_string(g.size()) + " positions for " + std::to_string(L) +
                            " qubits");
  return correlated_model(g, o.gamma0, lamb_params(o));
}

int cmd_sweep(const Options& o, std::ostream& out) {
  int L = 0;
  CVector psi;
  const bool has_state = o.c0 || o.c1 || o.singlet || !o.state_path.empty() || !o.initial.empty() || !o.dark.empty();
  if (has_state) {
    psi = initial_state(o, L);
  } else {
    // default: first computed dark state of the lowest spin
    L = o.L > 0 ? o.L : 3;
    const DarkBasis basis = compute_dark_basis(L);
    Eigen::Index pick = 0;
    for (Eigen::Index c = 1; c < basis.size(); ++c)
      if (basis.labels[static_cast<std::size_t>(c)].two_j < basis.labels[static_cast<std::size_t>(pick)].two_j)
        pick = c;
    psi = basis.vectors.col(pick);
  }
  if (!(o.k0d_step > 0.0) || !(o.k0d_max >= 0.0)) throw UsageError("--k0d-step must be positive");
  std::vector<double> xs;
  const auto points = static_cast<long>(std::floor(o.k0d_max / o.k0d_step + 1e-9));
  for (long i = 0; i <= points; ++i) xs.push_back(o.k0d_step * static_cast<double>(i));
  const SeparationSweep s = sweep_separation(psi, L, xs, o.gamma0, o.t_max, o.samples, o.dt, lamb_params(o));
  Sink sink(o.out_path, out);
  auto& stream = sink.stream();
  stream << "k0d,fidelity,max_trace_error,min_eigenvalue\n";
  for (std::size_t k = 0; k < xs.size(); ++k)
    stream << format_number(s.k0d[k]) << ',' << format_number(s.fidelity[k]) << ','
           << format_number(s.max_trace_error[k]) << ',' << format_number(s.min_eigenvalue[k]) << '\n';
  return 0;
}

int cmd_evolve(const Options& o, std::ostream& out) {
  if (o.sweep) return cmd_sweep(o, out);
  int L = 0;
  const CVector psi = initial_state(o, L);
  if (o.L > 0 && o.L != L) throw DimensionMismatch("--l disagrees with the initial state");
  const DampingModel model = build_model(o, L);
  const auto grid = uniform_grid(o.t_max, o.samples);
  const EvolutionResult r = evolve_master(psi * psi.adjoint(), model, grid, o.dt, psi);
  Sink sink(o.out_path, out);
  write_timeseries_csv(sink.stream(), r);
  return 0;
}

int cmd_trajectories(const Options& o, std::ostream& out) {
  int L = 0;
  const CVector psi = initial_state(o, L);
  if (o.L > 0 && o.L != L) throw DimensionMismatch("--l disagrees with the initial state");
  const DampingModel model = build_model(o, L);
  const JumpChannels channels = jump_channels(model, collective_operators(L));
  TrajectoryConfig config;
  config.dt = o.dt;
  config.t_max = o.t_max;
  config.samples = o.samples;
  config.n_traj = o.n_traj;
  config.seed = o.seed;
  const EnsembleResult mc = ensemble_average(psi, channels, config, o.workers);
  const EvolutionResult master = evolve_master(psi * psi.adjoint(), model, mc.times, o.dt, psi, true);
  const EvolutionResult averaged = summarize(mc.times, mc.rho, psi, L);
  std::vector<double> distance;
  for (std::size_t g = 0; g < mc.rho.size(); ++g) distance.push_back(trace_distance(mc.rho[g], master.snapshots[g]));

  const double max_distance = *std::max_element(distance.begin(), distance.end());
  const Json summary{{"command", "trajectories"},
                     {"L", L},
                     {"n_traj", o.n_traj},
                     {"seed", o.seed},
                     {"total_jumps", mc.total_jumps},
                     {"final_trace_distance", distance.back()},
                     {"max_trace_distance", max_distance},
                     {"checks", Json::array({check("final_trace_distance", distance.back(), distance.back() <= 0.02)})}};
  {
    Sink sink(o.out_path, out);
    write_timeseries_csv(sink.stream(), averaged, {{"trace_distance", distance}});
  }
  if (!o.summary_path.empty()) {
    Sink sink(o.summary_path, out);
    write_json(sink.stream(), summary);
  } else if (!o.out_path.empty()) {
    write_json(out, summary);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Collective dark-state codes: tables, codewords and damping simulations", "qeac"};
  app.require_subcommand(1);

  auto* table = app.add_subcommand("table", "irrep multiplicities, dark counts and efficiencies");
  table->add_option("--l-max", o.l_max, "largest register size")->check(CLI::Range(1, 200));
  table->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  table->add_option("--out", o.out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check the dark basis for one register size");
  verify->add_option("--l", o.L, "qubit count")->required()->check(CLI::Range(2, 8));
  verify->add_option("--summary", o.summary_path, "write the JSON check report here");

  auto* codewords = app.add_subcommand("codewords", "dark-state codewords as JSON");
  codewords->add_option("--l", o.L, "qubit count")->required()->check(CLI::Range(1, kMaxDarkQubits));
  codewords->add_option("--source", o.source)->check(CLI::IsMember({"computed", "paper"}));
  codewords->add_option("--out", o.out_path, "output file (default stdout)");

  const auto add_dynamics = [&](CLI::App* sub) {
    sub->add_option("--l", o.L, "qubit count")->check(CLI::Range(1, 6));
    sub->add_option("--model", o.model)->check(CLI::IsMember({"collective", "independent", "correlated"}));
    sub->add_option("--geometry", o.geometry_path, "geometry JSON for the correlated model");
    sub->add_option("--lamb", o.lamb, "Lamb shift for the correlated model")
        ->check(CLI::IsMember({"zero", "collective", "cos_kernel"}));
    sub->add_option("--gamma0", o.gamma0, "damping rate")->check(CLI::PositiveNumber);
    sub->add_option("--delta0", o.delta0, "Lamb shift");
    sub->add_option("--t-max", o.t_max, "final time")->check(CLI::PositiveNumber);
    sub->add_option("--samples", o.samples, "grid points")->check(CLI::Range(2, 100000));
    sub->add_option("--dt", o.dt, "integration step")->check(CLI::PositiveNumber);
    sub->add_option("--c0", o.c0, "encoded amplitude of logical 0");
    sub->add_option("--c1", o.c1, "encoded amplitude of logical 1");
    sub->add_flag("--singlet", o.singlet, "start in the two-qubit singlet");
    sub->add_option("--state", o.state_path, "state JSON file");
    sub->add_option("--initial", o.initial, "computational basis bitstring, qubit 1 first");
    sub->add_option("--dark", o.dark, "real coefficients over the computed dark basis (needs --l)")->delimiter(',');
    sub->add_option("--out", o.out_path, "CSV output file (default stdout)");
  };

  auto* evolve = app.add_subcommand("evolve", "master-equation time series");
  add_dynamics(evolve);
  evolve->add_flag("--sweep-separation", o.sweep, "dark-state fidelity against collinear spacing k0d");
  evolve->add_option("--k0d-max", o.k0d_max, "largest spacing in the sweep");
  evolve->add_option("--k0d-step", o.k0d_step, "spacing increment in the sweep");

  auto* trajectories = app.add_subcommand("trajectories", "quantum-jump ensemble against the master solution");
  add_dynamics(trajectories);
  trajectories->add_option("--n", o.n_traj, "trajectory count")->check(CLI::PositiveNumber);
  trajectories->add_option("--seed", o.seed, "random seed");
  trajectories->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
  trajectories->add_option("--summary", o.summary_path, "summary JSON file");

  std::vector<std::string> argv_storage{"qeac"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*table) return cmd_table(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*codewords) return cmd_codewords(o, out);
    if (*evolve) return cmd_evolve(o, out);
    return cmd_trajectories(o, out);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qeac::cli

#include "qeac/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace qeac {

namespace {

void check_model(const DampingModel& model) {
  if (model.L < 1 || model.gamma.rows() != model.L || model.gamma.cols() != model.L ||
      model.delta.rows() != model.L || model.delta.cols() != model.L)
    throw DimensionMismatch("damping model matrices do not match L");
}

std::vector<SparseCMatrix> site_operators(int L, SiteKind kind) {
  std::vector<SparseCMatrix> out;
  for (int l = 1; l <= L; ++l) out.push_back(site_operator_sparse(L, l, kind));
  return out;
}

// Σ_ij w_ij s_j⁺s_i⁻
SparseCMatrix pair_sum(const RMatrix& w, const std::vector<SparseCMatrix>& lower,
                       const std::vector<SparseCMatrix>& raise) {
  const auto n = static_cast<Eigen::Index>(lower.size());
  const Eigen::Index dim = lower.front().rows();
  SparseCMatrix sum(dim, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (w(i, j) != 0.0) sum += w(i, j) * SparseCMatrix(raise[j] * lower[i]);
  sum.makeCompressed();
  return sum;
}

}  // namespace

SparseCMatrix lamb_hamiltonian(const DampingModel& model) {
  check_model(model);
  return -pair_sum(model.delta, site_operators(model.L, SiteKind::minus),
                   site_operators(model.L, SiteKind::plus));
}

SparseCMatrix excitation_operator(int L) {
  return pair_sum(RMatrix::Ones(L, L), site_operators(L, SiteKind::minus), site_operators(L, SiteKind::plus));
}

LindbladGenerator::LindbladGenerator(const DampingModel& model, const CollectiveOperators& ops) : L_(model.L) {
  check_model(model);
  if (ops.L != model.L) throw DimensionMismatch("operators and damping model disagree on L");
  lowering_ = site_operators(L_, SiteKind::minus);
  const auto raising = site_operators(L_, SiteKind::plus);
  const SparseCMatrix decay = pair_sum(model.gamma, lowering_, raising);
  const SparseCMatrix hamiltonian = -pair_sum(model.delta, lowering_, raising);
  drift_ = Complex(0.0, -1.0) * hamiltonian - 0.5 * decay;
  drift_.makeCompressed();
  drift_adjoint_ = drift_.adjoint();
  const Eigen::Index dim = Eigen::Index{1} << L_;
  for (int i = 0; i < L_; ++i) {
    SparseCMatrix b(dim, dim);
    for (int j = 0; j < L_; ++j)
      if (model.gamma(i, j) != 0.0) b += model.gamma(i, j) * raising[static_cast<std::size_t>(j)];
    b.makeCompressed();
    weighted_raising_.push_back(std::move(b));
  }
}

CMatrix LindbladGenerator::operator()(double /*t*/, const CMatrix& rho) const {
  const Eigen::Index dim = Eigen::Index{1} << L_;
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionMismatch("density matrix does not match L");
  CMatrix out = drift_ * rho;
  out.noalias() += rho * drift_adjoint_;
  for (std::size_t i = 0; i < lowering_.size(); ++i) {
    const CMatrix tmp = rho * weighted_raising_[i];
    out.noalias() += lowering_[i] * tmp;
  }
  return out;
}

LindbladGenerator lindblad_generator(const DampingModel& model, const CollectiveOperators& ops) {
  return LindbladGenerator(model, ops);
}

EvolutionResult summarize(std::span<const double> times, std::span<const DensityMatrix> rhos,
                          const CVector& reference, int L, bool keep_snapshots) {
  if (times.size() != rhos.size()) throw DimensionMismatch("times and states differ in length");
  const Eigen::Index dim = Eigen::Index{1} << L;
  if (reference.size() != dim) throw DimensionMismatch("reference state does not match L");
  const SparseCMatrix excitation = excitation_operator(L);
  EvolutionResult r;
  r.times.assign(times.begin(), times.end());
  for (const auto& rho : rhos) {
    r.fidelity.push_back(reference.dot(rho * reference).real());
    r.trace.push_back(rho.trace().real());
    r.purity.push_back((rho * rho).trace().real());
    r.excitation.push_back(CMatrix(excitation * rho).trace().real());
    const CMatrix herm = 0.5 * (rho + rho.adjoint());
    r.min_eigenvalue.push_back(hermitian_eigensystem(herm).values(0));
    if (keep_snapshots) r.snapshots.push_back(rho);
  }
  return r;
}

EvolutionResult evolve_master(const DensityMatrix& rho0, const DampingModel& model,
                              std::span<const double> t_grid, double dt, const CVector& reference,
                              bool keep_snapshots) {
  check_model(model);
  const Eigen::Index dim = Eigen::Index{1} << model.L;
  if (rho0.rows() != dim || rho0.cols() != dim) throw DimensionMismatch("initial state does not match L");
  if (max_abs(rho0 - rho0.adjoint()) > 1e-10) throw InvalidDensityMatrix("initial state is not Hermitian");
  if (std::abs(rho0.trace() - Complex(1.0)) > 1e-10) throw InvalidDensityMatrix("initial state trace is not 1");
  if (hermitian_eigensystem(rho0).values(0) < -1e-10)
    throw InvalidDensityMatrix("initial state is not positive semidefinite");

  const LindbladGenerator generator(model, collective_operators(model.L));
  const auto states = rk4_integrate(generator, CMatrix(rho0), t_grid, dt);
  EvolutionResult result = summarize(t_grid, states, reference, model.L, keep_snapshots);
  for (std::size_t k = 0; k < result.trace.size(); ++k)
    if (std::abs(result.trace[k] - 1.0) > 1e-6)
      throw TraceDrift("trace " + std::to_string(result.trace[k]) + " at t = " + std::to_string(result.times[k]));
  return result;
}

CMatrix JumpChannels::decay_operator() const {
  const Eigen::Index dim = Eigen::Index{1} << L;
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& j : operators) sum.noalias() += j.adjoint() * j;
  return sum;
}

JumpChannels jump_channels(const DampingModel& model, const CollectiveOperators& ops) {
  check_model(model);
  if (ops.L != model.L) throw DimensionMismatch("operators and damping model disagree on L");
  const double gamma0 = model.gamma0();
  const double scale = gamma0 * model.L;
  const Eigensystem es = hermitian_eigensystem(model.gamma.cast<Complex>(), 1e-12 * scale);
  if (es.values(0) < -1e-8 * scale)
    throw NotPSD("damping matrix has eigenvalue " + std::to_string(es.values(0)));

  const auto lowering = site_operators(model.L, SiteKind::minus);
  JumpChannels out;
  out.L = model.L;
  out.hamiltonian = CMatrix(lamb_hamiltonian(model));
  for (Eigen::Index k = es.values.size() - 1; k >= 0; --k) {
    const double rate = es.values(k);
    if (rate <= 1e-12 * gamma0) continue;
    // Fix the phase so the largest component is real and positive.
    CVector v = es.vectors.col(k);
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    v *= std::conj(v(big)) / std::abs(v(big));
    SparseCMatrix j(lowering.front().rows(), lowering.front().cols());
    for (int i = 0; i < model.L; ++i) j += v(i) * lowering[static_cast<std::size_t>(i)];
    out.operators.push_back(std::sqrt(rate) * CMatrix(j));
    out.rates.push_back(rate);
  }
  return out;
}

namespace {

double gershgorin_bound(const CMatrix& a) {
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

long steps_per_interval(const TrajectoryConfig& c) {
  if (!(c.dt > 0.0)) throw InvalidStep("dt must be positive");
  const double width = c.t_max / (c.samples - 1);
  const double steps = std::round(width / c.dt);
  if (steps < 1.0 || std::abs(steps * c.dt - width) > 1e-12 * std::max(1.0, width))
    throw InvalidStep("dt does not divide the sample spacing");
  return static_cast<long>(steps);
}

double step_size(const TrajectoryConfig& c, long steps) {
  return c.t_max / (c.samples - 1) / static_cast<double>(steps);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const TrajectoryConfig& config, const JumpChannels& channels) {
  if (!(config.dt > 0.0)) throw InvalidStep("dt must be positive");
  if (!(config.t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (config.samples < 2) throw InvalidArgument("need at least two samples");
  if (config.n_traj < 1) throw InvalidArgument("n_traj must be positive");
  steps_per_interval(config);
  const double bound = config.dt * gershgorin_bound(channels.decay_operator());
  if (bound > 0.05)
    throw StepTooLarge("dt·‖ΣJ†J‖ = " + std::to_string(bound) + " exceeds 0.05");
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace {

// Dense no-jump propagator and decay operator shared by all trajectories.
struct Propagator {
  CMatrix no_jump;  // 1 − i·H_eff·dt
  CMatrix decay;    // Σ J†J
};

Propagator make_propagator(const JumpChannels& channels, double dt) {
  const CMatrix decay = channels.decay_operator();
  const CMatrix h_eff = channels.hamiltonian - Complex(0.0, 0.5) * decay;
  const Eigen::Index dim = decay.rows();
  return Propagator{CMatrix::Identity(dim, dim) - Complex(0.0, dt) * h_eff, decay};
}

Trajectory propagate(const CVector& psi0, const JumpChannels& channels, const TrajectoryConfig& config,
                     const Propagator& prop, long steps, RngStream& rng) {
  Trajectory traj;
  CVector psi = psi0;
  traj.times.push_back(0.0);
  traj.states.push_back(psi);
  const double width = config.t_max / (config.samples - 1);
  const double h = width / static_cast<double>(steps);
  CVector next(psi.size());
  for (int g = 1; g < config.samples; ++g) {
    const double t0 = config.t_max * (g - 1) / (config.samples - 1);
    for (long s = 0; s < steps; ++s) {
      const double u = rng.uniform();
      const double p = h * psi.dot(prop.decay * psi).real();
      if (p > 0.1) throw StepTooLarge("jump probability " + std::to_string(p) + " in one step");
      if (u < p) {
        double cumulative = 0.0;
        std::size_t chosen = channels.operators.size() - 1;
        for (std::size_t k = 0; k < channels.operators.size(); ++k) {
          next.noalias() = channels.operators[k] * psi;
          cumulative += h * next.squaredNorm();
          if (u < cumulative) {
            chosen = k;
            break;
          }
        }
        next.noalias() = channels.operators[chosen] * psi;
        psi = next / next.norm();
        traj.jumps.push_back({t0 + static_cast<double>(s + 1) * h, static_cast<int>(chosen)});
      } else {
        next.noalias() = prop.no_jump * psi;
        psi = next / next.norm();
      }
    }
    traj.times.push_back(config.t_max * g / (config.samples - 1));
    traj.states.push_back(psi);
  }
  return traj;
}

void check_initial(const CVector& psi0, const JumpChannels& channels) {
  if (psi0.size() != (Eigen::Index{1} << channels.L)) throw DimensionMismatch("initial state does not match L");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw NotNormalized("initial state must have unit norm");
}

}  // namespace

Trajectory run_trajectory(const CVector& psi0, const JumpChannels& channels, const TrajectoryConfig& config,
                          RngStream& rng) {
  validate(config, channels);
  check_initial(psi0, channels);
  const long steps = steps_per_interval(config);
  return propagate(psi0, channels, config, make_propagator(channels, step_size(config, steps)), steps, rng);
}

EnsembleResult ensemble_average(const CVector& psi0, const JumpChannels& channels,
                                const TrajectoryConfig& config, int workers) {
  validate(config, channels);
  check_initial(psi0, channels);
  const long steps = steps_per_interval(config);
  const Propagator prop = make_propagator(channels, step_size(config, steps));
  const Eigen::Index dim = psi0.size();
  const auto samples = static_cast<std::size_t>(config.samples);

  struct Partial {
    std::vector<CMatrix> rho;
    std::size_t jumps = 0;
  };
  constexpr int kChunk = 64;
  const int n_chunks = (config.n_traj + kChunk - 1) / kChunk;
  const auto run_chunk = [&](int chunk) {
    Partial part{std::vector<CMatrix>(samples, CMatrix::Zero(dim, dim)), 0};
    const int first = chunk * kChunk;
    const int last = std::min(config.n_traj, first + kChunk);
    for (int i = first; i < last; ++i) {
      RngStream rng(config.seed, static_cast<std::uint64_t>(i));
      const Trajectory t = propagate(psi0, channels, config, prop, steps, rng);
      for (std::size_t g = 0; g < samples; ++g) part.rho[g].noalias() += t.states[g] * t.states[g].adjoint();
      part.jumps += t.jumps.size();
    }
    return part;
  };

  EnsembleResult out;
  out.times = uniform_grid(config.t_max, config.samples);
  out.rho.assign(samples, CMatrix::Zero(dim, dim));
  const int wave = std::max(1, workers);
  for (int begin = 0; begin < n_chunks; begin += wave) {
    const int end = std::min(n_chunks, begin + wave);
    std::vector<Partial> partials(static_cast<std::size_t>(end - begin));
    if (wave == 1) {
      partials[0] = run_chunk(begin);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(partials.size());
      for (int c = begin; c < end; ++c) {
        pool.emplace_back([&, c] {
          try {
            partials[static_cast<std::size_t>(c - begin)] = run_chunk(c);
          } catch (...) {
            errors[static_cast<std::size_t>(c - begin)] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (const auto& part : partials) {
      for (std::size_t g = 0; g < samples; ++g) out.rho[g] += part.rho[g];
      out.total_jumps += part.jumps;
    }
  }
  for (auto& rho : out.rho) rho /= static_cast<double>(config.n_traj);
  return out;
}

SeparationSweep sweep_separation(const CVector& psi, int n, std::span<const double> k0d, double gamma0,
                                 double t_final, int samples, double dt, const LambParams& lamb) {
  if (n < 2) throw InvalidArgument("a separation sweep needs at least two qubits");
  const auto grid = uniform_grid(t_final, samples);
  const CMatrix rho0 = psi * psi.adjoint();
  SeparationSweep out;
  for (double x : k0d) {
    if (!(x >= 0.0)) throw InvalidArgument("k0d must be non-negative");
    LambParams params = lamb;
    params.gamma0 = gamma0;
    const Geometry g = collinear_geometry(n, x * (n - 1), 1.0, 1.0);
    const EvolutionResult r = evolve_master(rho0, correlated_model(g, gamma0, params), grid, dt, psi);
    double drift = 0.0;
    for (double tr : r.trace) drift = std::max(drift, std::abs(tr - 1.0));
    out.k0d.push_back(x);
    out.fidelity.push_back(r.fidelity.back());
    out.max_trace_error.push_back(drift);
    out.min_eigenvalue.push_back(*std::min_element(r.min_eigenvalue.begin(), r.min_eigenvalue.end()));
  }
  return out;
}

}  // namespace qeac

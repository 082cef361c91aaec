#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qeac/linalg.hpp"
#include "qeac/noise_field.hpp"
#include "qeac/spin_ops.hpp"

namespace qeac {

using DensityMatrix = CMatrix;

/// Right-hand side of the spatially-correlated amplitude-damping master
/// equation
///
///   dρ/dt = i Σ_ij δ_ij [s_j⁺s_i⁻, ρ]
///         + ½ Σ_ij γ_ij (2 s_i⁻ρs_j⁺ − s_j⁺s_i⁻ρ − ρs_j⁺s_i⁻).
///
/// With γ_ij = γ₀ and δ_ij = δ₀ this is the collective equation in S^±.
class LindbladGenerator {
 public:
  LindbladGenerator(const DampingModel& model, const CollectiveOperators& ops);

  CMatrix operator()(double t, const CMatrix& rho) const;

  int L() const { return L_; }

 private:
  int L_;
  SparseCMatrix drift_;                            // −iH − ½Σγ_ij s_j⁺s_i⁻
  SparseCMatrix drift_adjoint_;
  std::vector<SparseCMatrix> lowering_;            // s_i⁻
  std::vector<SparseCMatrix> weighted_raising_;    // Σ_j γ_ij s_j⁺
};

LindbladGenerator lindblad_generator(const DampingModel& model, const CollectiveOperators& ops);

/// Coherent part −Σ_ij δ_ij s_j⁺s_i⁻ (equal to −δ₀S⁺S⁻ in the collective case).
SparseCMatrix lamb_hamiltonian(const DampingModel& model);

/// S⁺S⁻ for L qubits.
SparseCMatrix excitation_operator(int L);

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> fidelity;    ///< ⟨ψ_ref|ρ|ψ_ref⟩
  std::vector<double> trace;
  std::vector<double> purity;      ///< tr ρ²
  std::vector<double> excitation;  ///< tr(S⁺S⁻ρ)
  std::vector<double> min_eigenvalue;
  std::vector<DensityMatrix> snapshots;  ///< filled only on request
};

/// Observables of a density-matrix series against a pure reference.
EvolutionResult summarize(std::span<const double> times, std::span<const DensityMatrix> rhos,
                          const CVector& reference, int L, bool keep_snapshots = false);

/// Integrates the master equation with RK4 and samples at `t_grid`.
///
/// rho0 must be Hermitian, unit-trace and PSD to 1e-10 (InvalidDensityMatrix
/// otherwise). Throws TraceDrift if |tr ρ − 1| > 1e-6 at any sample.
EvolutionResult evolve_master(const DensityMatrix& rho0, const DampingModel& model,
                              std::span<const double> t_grid, double dt, const CVector& reference,
                              bool keep_snapshots = false);

/// Jump operators J_k = √λ_k Σ_i (v_k)_i s_i⁻ from γ = Σ_k λ_k v_k v_k^T, for
/// every λ_k > 1e-12·γ₀. `hamiltonian` carries the Lamb-shift term needed by
/// the no-jump evolution.
struct JumpChannels {
  int L = 0;
  std::vector<CMatrix> operators;
  std::vector<double> rates;
  CMatrix hamiltonian;

  /// Σ_k J_k†J_k
  CMatrix decay_operator() const;
};

JumpChannels jump_channels(const DampingModel& model, const CollectiveOperators& ops);

struct TrajectoryConfig {
  double dt = 1e-3;
  double t_max = 1.0;
  int samples = 11;  ///< grid points t_max·i/(samples−1)
  int n_traj = 1;
  std::uint64_t seed = 0;
};

/// Checks positivity, grid divisibility (InvalidStep) and the first-order
/// guard dt·‖Σ_k J_k†J_k‖ ≤ 0.05 (StepTooLarge), using the Gershgorin row
/// bound for the norm.
void validate(const TrajectoryConfig& config, const JumpChannels& channels);

/// Independent uniform stream for one trajectory, derived from
/// (seed, trajectory index) alone.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

struct Jump {
  double time = 0.0;
  int channel = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<Jump> jumps;
};

/// First-order jump/no-jump unravelling. Each step of length dt draws one
/// uniform u. With P = dt·Σ_k‖J_kψ‖², a jump happens when u < P and the
/// channel is the first k whose cumulative weight exceeds u; then
/// ψ ← J_kψ/‖J_kψ‖. Otherwise ψ ← (1 − i·H_eff·dt)ψ, renormalized, with
/// H_eff = H − (i/2)Σ_k J_k†J_k. Throws StepTooLarge if P > 0.1.
Trajectory run_trajectory(const CVector& psi0, const JumpChannels& channels,
                          const TrajectoryConfig& config, RngStream& rng);

struct EnsembleResult {
  std::vector<double> times;
  std::vector<DensityMatrix> rho;
  std::size_t total_jumps = 0;
};

/// Mean of |ψ⟩⟨ψ| over config.n_traj trajectories. Trajectories are summed in
/// fixed chunks of 64 in index order, so the result is bitwise identical for
/// any worker count.
EnsembleResult ensemble_average(const CVector& psi0, const JumpChannels& channels,
                                const TrajectoryConfig& config, int workers = 1);

/// Dark-state fidelity against qubit spacing for n equally spaced collinear
/// qubits with the sinc kernel. Positions are in units of 1/k₀, so each
/// entry of `k0d` is the nearest-neighbour spacing k₀d.
struct SeparationSweep {
  std::vector<double> k0d;
  std::vector<double> fidelity;        ///< at t_final
  std::vector<double> max_trace_error; ///< max |tr ρ − 1| over the run
  std::vector<double> min_eigenvalue;  ///< min over the run
};

SeparationSweep sweep_separation(const CVector& psi, int n, std::span<const double> k0d, double gamma0,
                                 double t_final, int samples, double dt, const LambParams& lamb = {});

}  // namespace qeac

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "t2qc/circuits.hpp"
#include "t2qc/lattice.hpp"
#include "t2qc/rng.hpp"

namespace t2qc {

enum class Mode { Oneshot, Ensemble, Classical };
enum class InitialState { Ground, Random };

std::string to_string(Mode mode);

/// Per-(temperature, sweep) view of the counter-based random stream; a
/// site's draws depend only on (seed, stream, temp_index, sweep, site).
struct RngView {
    std::uint64_t seed = 0;
    std::uint32_t temp_index = 0;
    std::uint32_t sweep_index = 0;

    double uniform(rng::Stream stream, std::uint64_t site) const {
        return rng::uniform(seed, stream, temp_index, sweep_index, site);
    }
};

struct SweepConfig {
    Mode mode = Mode::Classical;
    int dim = 2;
    int rows = 64;
    int cols = 64;  // ignored (forced to 1) when dim == 1
    double t_start = 0.5;
    double t_end = 4.0;
    double t_step = 0.01;
    int min_iters = 20;     // also the equilibration window length
    int max_iters = 10000;
    // Running-mean stopping tolerance; ensemble mode reads it as the
    // fixed-point tolerance. Defaults: 1e-3 discrete, 1e-9 ensemble.
    std::optional<double> equil_tol;
    int sample_sweeps = 100;
    std::uint64_t seed = 1;
    InitialState init = InitialState::Ground;
    bool independent = false;  // re-initialize the lattice per temperature
    double gate_error = 0.0;   // rotation-error delta_p, one-shot mode only

    void validate() const;
    double resolved_equil_tol() const;
    std::vector<double> temperatures() const;
};

struct SweepRecord {
    double temperature = 0.0;
    double mean_abs_magnetization = 0.0;
    double std_magnetization = 0.0;
    double mean_energy_per_site = 0.0;  // Eq.-convention on-site mean; NaN in ensemble mode
    int iterations_used = 0;            // equilibration sweeps
    Mode mode = Mode::Classical;
    std::uint64_t seed = 0;
};

/// One-shot node update: stream inputs, build the node register (spins as
/// basis states, P qubits as superpositions, ancillas |0>), run the
/// circuit, destructively measure S' with one uniform draw, write back.
void oneshot_update(SpinLattice& lattice, Site site, const NodeCircuit& node,
                    const IsingParams& params, const RngView& rng, double gate_error = 0.0);

/// Ensemble node update: spin qubits are prepared with the continuous
/// probabilities q = (s+1)/2, and the full output distribution of S' is
/// streamed back as s' = 2 q' - 1 with no collapse.
void ensemble_update(SpinLattice& lattice, Site site, const NodeCircuit& node,
                     const IsingParams& params);

/// Pure-classical Metropolis oracle sharing the checkerboard schedule and
/// RNG discipline.
void classical_update(SpinLattice& lattice, Site site, const IsingParams& params,
                      const RngView& rng);

struct SweepContext {
    Mode mode = Mode::Classical;
    IsingParams params;
    const NodeCircuit* node = nullptr;  // unused in classical mode
    RngView rng;
    double gate_error = 0.0;
};

/// Updates the given same-color sites (any order; results are
/// order-independent and may be computed in parallel).
void sweep_color(SpinLattice& lattice, std::span<const Site> sites, const SweepContext& ctx);

/// One full lattice update: black pass then white pass.
void full_sweep(SpinLattice& lattice, const SweepContext& ctx);

/// Ground: all-up. Random: per-site +/-1 coin flips in discrete modes, the
/// zero-expectation ("every configuration equally likely") state in
/// ensemble mode. temp_index feeds the counter stream so --independent
/// restarts draw fresh configurations per temperature point.
SpinLattice make_initial_lattice(const SweepConfig& config, std::uint32_t temp_index = 0);

std::vector<SweepRecord> run_temperature_sweep(const SweepConfig& config);

/// First temperature where mean |M| drops below `threshold` on a heating
/// sweep, linearly interpolated between the bracketing records. Throws if
/// the curve never crosses.
double critical_temperature_estimate(std::span<const SweepRecord> records,
                                     double threshold = 0.01);

/// CSV with header temperature,mode,dim,size,iterations_used,
/// mean_abs_magnetization,std_magnetization,mean_energy_per_site,seed
std::string sweep_records_csv(const SweepConfig& config, std::span<const SweepRecord> records);

}  // namespace t2qc

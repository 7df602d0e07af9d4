#include "t2qc/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "t2qc/gate_error.hpp"

namespace t2qc {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Oneshot: return "oneshot";
        case Mode::Ensemble: return "ensemble";
        case Mode::Classical: return "classical";
    }
    return "?";
}

void SweepConfig::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
    if (!(t_start > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("t-start and t-end must be positive");
    if (!(t_step > 0.0)) throw std::invalid_argument("t-step must be positive");
    if (min_iters < 1) throw std::invalid_argument("min-iters must be at least 1");
    if (min_iters > max_iters) throw std::invalid_argument("min-iters must not exceed max-iters");
    if (sample_sweeps < 1) throw std::invalid_argument("samples must be at least 1");
    if (equil_tol && *equil_tol < 0.0) throw std::invalid_argument("equil-tol must be >= 0");
    if (gate_error < 0.0) throw std::invalid_argument("gate-error must be >= 0");
    if (gate_error > 0.0 && mode != Mode::Oneshot)
        throw std::invalid_argument("gate-error applies to one-shot mode only");
    // Lattice constructors enforce even sizes; surface the message here too.
    if (rows < 2 || rows % 2) throw std::invalid_argument("lattice sizes must be even and >= 2");
    if (dim == 2 && (cols < 2 || cols % 2))
        throw std::invalid_argument("lattice sizes must be even and >= 2");
}

double SweepConfig::resolved_equil_tol() const {
    if (equil_tol) return *equil_tol;
    return mode == Mode::Ensemble ? 1e-9 : 1e-3;
}

std::vector<double> SweepConfig::temperatures() const {
    std::vector<double> out;
    const double dir = t_end >= t_start ? 1.0 : -1.0;
    const auto count =
        static_cast<std::size_t>(std::floor(std::abs(t_end - t_start) / t_step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(t_start + dir * t_step * double(k));
    return out;
}

namespace {

int spin_to_bit(double s) { return s > 0 ? 1 : 0; }

// requested thread count: T2QC_THREADS, 0 or unset = auto
unsigned thread_budget() {
    static const unsigned budget = [] {
        if (const char* env = std::getenv("T2QC_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) return static_cast<unsigned>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1u;
    }();
    return budget;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned threads = thread_budget();
    if (threads <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<std::size_t>(threads, n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

// Reusable per-thread register; reset() puts it back to |0...0>.
QuantumRegister& scratch_register(int num_qubits) {
    thread_local std::unique_ptr<QuantumRegister> reg;
    if (!reg || reg->num_qubits() != num_qubits)
        reg = std::make_unique<QuantumRegister>(num_qubits);
    else
        reg->reset();
    return *reg;
}

struct PQubitProbs {
    double p1;
    double p2;
};

PQubitProbs node_probabilities(const IsingParams& params) {
    return {std::exp(-4.0 * params.coupling / params.temperature),
            std::exp(-8.0 * params.coupling / params.temperature)};
}

/// <S'> = P(1) - P(0) computed by sorting each side's probability mass
/// before summing. When the register is exactly symmetric under a global
/// spin flip the two sorted term lists are identical, so the difference is
/// exactly zero and the symmetric ensemble state is preserved bit-for-bit.
double spin_expectation(const QuantumRegister& reg, int qubit) {
    const auto amps = reg.amplitudes();
    const std::uint64_t t = std::uint64_t{1} << qubit;
    std::vector<double> ones, zeros;
    ones.reserve(amps.size() / 2);
    zeros.reserve(amps.size() / 2);
    for (std::uint64_t b = 0; b < amps.size(); ++b)
        (b & t ? ones : zeros).push_back(std::norm(amps[b]));
    std::sort(ones.begin(), ones.end());
    std::sort(zeros.begin(), zeros.end());
    double p1 = 0.0, p0 = 0.0;
    for (double v : ones) p1 += v;
    for (double v : zeros) p0 += v;
    return p1 - p0;
}

}  // namespace

void oneshot_update(SpinLattice& lattice, Site site, const NodeCircuit& node,
                    const IsingParams& params, const RngView& rng, double gate_error) {
    if (lattice.mode() != SpinMode::Discrete)
        throw std::logic_error("one-shot updates need a discrete lattice");
    const NodeInputs in = lattice.stream(site);
    const auto site_idx = static_cast<std::uint64_t>(lattice.site_index(site));
    auto [p1, p2] = node_probabilities(params);
    if (gate_error > 0.0) {
        p1 = inject_rotation_error(p1, gate_error, rng.uniform(rng::Stream::GateErrorP1, site_idx));
        if (node.layout.dim == 2)
            p2 = inject_rotation_error(p2, gate_error,
                                       rng.uniform(rng::Stream::GateErrorP2, site_idx));
    }

    QuantumRegister& reg = scratch_register(node.layout.num_qubits);
    reg.set_basis(node.layout.spin, spin_to_bit(in.center));
    for (int i = 0; i < in.count; ++i)
        reg.set_basis(node.layout.neighbors[i], spin_to_bit(in.neighbors[i]));
    reg.prepare_superposition(node.layout.p1, p1);
    if (node.layout.dim == 2) reg.prepare_superposition(node.layout.p2, p2);

    reg.apply(node.circuit);
    // Destructive measurement of S', with the draw oriented to the flip
    // event: u < P(flip) accepts the flip. Same outcome distribution as
    // measure(), and the classical oracle shares the convention.
    const int s_bit = spin_to_bit(in.center);
    const double p_up = reg.prob_one(node.layout.spin);
    const double p_flip = s_bit ? 1.0 - p_up : p_up;
    const double u = rng.uniform(rng::Stream::Measurement, site_idx);
    const int new_bit = u < p_flip ? 1 - s_bit : s_bit;
    reg.project(node.layout.spin, new_bit);
    lattice.write_back(site, new_bit ? 1.0 : -1.0);
}

void ensemble_update(SpinLattice& lattice, Site site, const NodeCircuit& node,
                     const IsingParams& params) {
    if (lattice.mode() != SpinMode::Ensemble)
        throw std::logic_error("ensemble updates need an ensemble lattice");
    const NodeInputs in = lattice.stream(site);
    const auto [p1, p2] = node_probabilities(params);

    QuantumRegister& reg = scratch_register(node.layout.num_qubits);
    reg.prepare_superposition(node.layout.spin, (in.center + 1.0) / 2.0);
    for (int i = 0; i < in.count; ++i)
        reg.prepare_superposition(node.layout.neighbors[i], (in.neighbors[i] + 1.0) / 2.0);
    reg.prepare_superposition(node.layout.p1, p1);
    if (node.layout.dim == 2) reg.prepare_superposition(node.layout.p2, p2);

    reg.apply(node.circuit);
    const double s = spin_expectation(reg, node.layout.spin);
    lattice.write_back(site, std::clamp(s, -1.0, 1.0));
}

void classical_update(SpinLattice& lattice, Site site, const IsingParams& params,
                      const RngView& rng) {
    if (lattice.mode() != SpinMode::Discrete)
        throw std::logic_error("classical updates need a discrete lattice");
    const NodeInputs in = lattice.stream(site);
    std::array<int, 4> nb{};
    for (int i = 0; i < in.count; ++i) nb[i] = in.neighbors[i] > 0 ? 1 : -1;
    const int s = in.center > 0 ? 1 : -1;
    const AcceptanceSpec acc =
        metropolis_flip_prob(s, std::span<const int>(nb.data(), in.count), params);
    const double u =
        rng.uniform(rng::Stream::Measurement, static_cast<std::uint64_t>(lattice.site_index(site)));
    if (u < acc.flip_prob) lattice.write_back(site, -in.center);
}

void sweep_color(SpinLattice& lattice, std::span<const Site> sites, const SweepContext& ctx) {
    parallel_for(sites.size(), [&](std::size_t i) {
        const Site site = sites[i];
        switch (ctx.mode) {
            case Mode::Oneshot:
                oneshot_update(lattice, site, *ctx.node, ctx.params, ctx.rng, ctx.gate_error);
                break;
            case Mode::Ensemble:
                ensemble_update(lattice, site, *ctx.node, ctx.params);
                break;
            case Mode::Classical:
                classical_update(lattice, site, ctx.params, ctx.rng);
                break;
        }
    });
}

void full_sweep(SpinLattice& lattice, const SweepContext& ctx) {
    const auto black = lattice.checkerboard_sites(true);
    const auto white = lattice.checkerboard_sites(false);
    sweep_color(lattice, black, ctx);
    sweep_color(lattice, white, ctx);
}

SpinLattice make_initial_lattice(const SweepConfig& config, std::uint32_t temp_index) {
    const SpinMode mode = config.mode == Mode::Ensemble ? SpinMode::Ensemble : SpinMode::Discrete;
    SpinLattice lattice = config.dim == 1 ? SpinLattice::chain(config.rows, mode)
                                          : SpinLattice::grid(config.rows, config.cols, mode);
    if (config.init == InitialState::Ground) return lattice;  // all-up ground state
    if (mode == SpinMode::Ensemble) {
        // The randomized ensemble state: every configuration equally
        // likely, i.e. expectation value 0 at every site.
        lattice.fill(0.0);
        return lattice;
    }
    for (int i = 0; i < lattice.rows(); ++i) {
        for (int j = 0; j < lattice.cols(); ++j) {
            const Site s{i, j};
            const double u = rng::uniform(config.seed, rng::Stream::Init, temp_index, 0,
                                          static_cast<std::uint64_t>(lattice.site_index(s)));
            lattice.write_back(s, u < 0.5 ? -1.0 : 1.0);
        }
    }
    return lattice;
}

namespace {

struct TemperaturePointResult {
    double mean_abs_m;
    double std_m;
    double mean_energy_per_site;
    int iterations;
};

double mean_of(const std::deque<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

TemperaturePointResult run_temperature_point(SpinLattice& lattice, const SweepConfig& config,
                                             SweepContext& ctx) {
    const double tol = config.resolved_equil_tol();
    int iters = 0;

    if (config.mode == Mode::Ensemble) {
        // Deterministic map: iterate to a fixed point.
        std::vector<double> prev;
        while (iters < config.max_iters) {
            prev = lattice.values();
            ctx.rng.sweep_index = static_cast<std::uint32_t>(iters);
            full_sweep(lattice, ctx);
            ++iters;
            double change = 0.0;
            for (std::size_t i = 0; i < prev.size(); ++i)
                change = std::max(change, std::abs(lattice.values()[i] - prev[i]));
            if (change < tol) break;
        }
    } else {
        std::deque<double> window;
        double prev_mean = std::numeric_limits<double>::quiet_NaN();
        while (iters < config.max_iters) {
            ctx.rng.sweep_index = static_cast<std::uint32_t>(iters);
            full_sweep(lattice, ctx);
            ++iters;
            window.push_back(std::abs(lattice.magnetization()));
            if (window.size() > static_cast<std::size_t>(config.min_iters)) window.pop_front();
            if (window.size() == static_cast<std::size_t>(config.min_iters)) {
                const double m = mean_of(window);
                if (!std::isnan(prev_mean) && std::abs(m - prev_mean) < tol) break;
                prev_mean = m;
            }
        }
    }

    double sum_m = 0.0, sum_m2 = 0.0, sum_e = 0.0;
    for (int s = 0; s < config.sample_sweeps; ++s) {
        ctx.rng.sweep_index = static_cast<std::uint32_t>(iters + s);
        full_sweep(lattice, ctx);
        const double m = std::abs(lattice.magnetization());
        sum_m += m;
        sum_m2 += m * m;
        if (config.mode != Mode::Ensemble)
            sum_e += lattice.total_energy(ctx.params) / lattice.num_sites();
    }
    const double n = config.sample_sweeps;
    const double mean_m = sum_m / n;
    const double var = n > 1 ? std::max(0.0, (sum_m2 - n * mean_m * mean_m) / (n - 1.0)) : 0.0;
    const double energy = config.mode == Mode::Ensemble
                              ? std::numeric_limits<double>::quiet_NaN()
                              : sum_e / n;
    return {mean_m, std::sqrt(var), energy, iters};
}

}  // namespace

std::vector<SweepRecord> run_temperature_sweep(const SweepConfig& config) {
    config.validate();
    SweepConfig cfg = config;
    if (cfg.dim == 1) cfg.cols = 1;

    const NodeCircuit node = cfg.dim == 1 ? build_1d_circuit() : build_2d_circuit();
    SpinLattice lattice = make_initial_lattice(cfg);

    SweepContext ctx;
    ctx.mode = cfg.mode;
    ctx.node = &node;
    ctx.gate_error = cfg.gate_error;
    ctx.rng.seed = cfg.seed;

    const std::vector<double> temps = cfg.temperatures();
    std::vector<SweepRecord> records;
    records.reserve(temps.size());
    for (std::size_t k = 0; k < temps.size(); ++k) {
        if (cfg.independent && k > 0)
            lattice = make_initial_lattice(cfg, static_cast<std::uint32_t>(k));
        ctx.params.temperature = temps[k];
        ctx.rng.temp_index = static_cast<std::uint32_t>(k);
        const TemperaturePointResult r = run_temperature_point(lattice, cfg, ctx);
        records.push_back({temps[k], r.mean_abs_m, r.std_m, r.mean_energy_per_site, r.iterations,
                           cfg.mode, cfg.seed});
    }
    return records;
}

double critical_temperature_estimate(std::span<const SweepRecord> records, double threshold) {
    if (records.empty()) throw std::invalid_argument("no records");
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].temperature <= records[i - 1].temperature)
            throw std::invalid_argument("records must come from a heating sweep (ascending T)");
    if (records.front().mean_abs_magnetization < threshold)
        return records.front().temperature;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double m0 = records[i - 1].mean_abs_magnetization;
        const double m1 = records[i].mean_abs_magnetization;
        if (m1 < threshold) {
            const double t0 = records[i - 1].temperature;
            const double t1 = records[i].temperature;
            return t0 + (threshold - m0) * (t1 - t0) / (m1 - m0);
        }
    }
    throw std::runtime_error("magnetization never crosses the threshold");
}

std::string sweep_records_csv(const SweepConfig& config, std::span<const SweepRecord> records) {
    std::string size = std::to_string(config.rows);
    if (config.dim == 2) size += "x" + std::to_string(config.cols);
    std::string out =
        "temperature,mode,dim,size,iterations_used,mean_abs_magnetization,"
        "std_magnetization,mean_energy_per_site,seed\n";
    char line[256];
    for (const SweepRecord& r : records) {
        std::snprintf(line, sizeof(line), "%.17g,%s,%d,%s,%d,%.17g,%.17g,%.17g,%llu\n",
                      r.temperature, to_string(r.mode).c_str(), config.dim, size.c_str(),
                      r.iterations_used, r.mean_abs_magnetization, r.std_magnetization,
                      r.mean_energy_per_site, static_cast<unsigned long long>(r.seed));
        out += line;
    }
    return out;
}

}  // namespace t2qc

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "t2qc/engine.hpp"
#include "t2qc/gate_error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitValidationError = 2;
constexpr int kExitIoError = 3;

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

t2qc::Mode parse_mode(const std::string& s) {
    if (s == "oneshot") return t2qc::Mode::Oneshot;
    if (s == "ensemble") return t2qc::Mode::Ensemble;
    if (s == "classical") return t2qc::Mode::Classical;
    throw CLI::ValidationError("--mode", "expected oneshot, ensemble or classical");
}

// "N" (1D or square 2D) or "NxM"
void parse_size(const std::string& s, int dim, int& rows, int& cols) {
    const auto x = s.find_first_of("xX");
    try {
        if (x == std::string::npos) {
            rows = std::stoi(s);
            cols = dim == 2 ? rows : 1;
        } else {
            rows = std::stoi(s.substr(0, x));
            cols = std::stoi(s.substr(x + 1));
            if (dim == 1 && cols != 1)
                throw CLI::ValidationError("--size", "1D lattices take a single length");
        }
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--size", "expected N or NxM");
    }
}

struct SweepFlags {
    std::string mode = "classical";
    int dim = 2;
    std::string size = "64x64";
    double t_start = 0.5;
    double t_end = 4.0;
    double t_step = 0.01;
    int min_iters = 20;
    int max_iters = 10000;
    int samples = 100;
    std::uint64_t seed = 1;
    std::string init = "ground";
    bool cool = false;
    double gate_error = 0.0;
    bool independent = false;
    std::string out;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--mode", f.mode, "oneshot | ensemble | classical")
        ->capture_default_str();
    cmd->add_option("--dim", f.dim, "lattice dimension, 1 or 2")->capture_default_str();
    cmd->add_option("--size", f.size, "lattice size, N or NxM (even)")->capture_default_str();
    cmd->add_option("--t-start", f.t_start, "first temperature, units of J")
        ->capture_default_str();
    cmd->add_option("--t-end", f.t_end, "last temperature, units of J")->capture_default_str();
    cmd->add_option("--t-step", f.t_step, "temperature step")->capture_default_str();
    cmd->add_option("--min-iters", f.min_iters, "equilibration window, sweeps")
        ->capture_default_str();
    cmd->add_option("--max-iters", f.max_iters, "equilibration cap, sweeps")
        ->capture_default_str();
    cmd->add_option("--samples", f.samples, "measurement sweeps per temperature")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
    cmd->add_option("--init", f.init, "ground | random")->capture_default_str();
    cmd->add_flag("--cool", f.cool, "sweep from the higher temperature down");
    cmd->add_option("--gate-error", f.gate_error,
                    "rotation-gate amplitude error delta_p (one-shot mode)")
        ->capture_default_str();
    cmd->add_flag("--independent", f.independent,
                  "re-initialize the lattice at every temperature point");
    cmd->add_option("--out", f.out, "output CSV path")->required();
}

t2qc::SweepConfig to_config(const SweepFlags& f) {
    t2qc::SweepConfig cfg;
    cfg.mode = parse_mode(f.mode);
    if (f.dim != 1 && f.dim != 2) throw CLI::ValidationError("--dim", "expected 1 or 2");
    cfg.dim = f.dim;
    parse_size(f.size, f.dim, cfg.rows, cfg.cols);
    cfg.t_start = f.t_start;
    cfg.t_end = f.t_end;
    cfg.t_step = f.t_step;
    if (f.cool && cfg.t_start < cfg.t_end) std::swap(cfg.t_start, cfg.t_end);
    cfg.min_iters = f.min_iters;
    cfg.max_iters = f.max_iters;
    cfg.sample_sweeps = f.samples;
    cfg.seed = f.seed;
    if (f.init == "ground")
        cfg.init = t2qc::InitialState::Ground;
    else if (f.init == "random")
        cfg.init = t2qc::InitialState::Random;
    else
        throw CLI::ValidationError("--init", "expected ground or random");
    cfg.gate_error = f.gate_error;
    cfg.independent = f.independent;
    return cfg;
}

int cmd_sweep(const SweepFlags& flags) {
    const t2qc::SweepConfig cfg = to_config(flags);
    cfg.validate();
    const auto records = t2qc::run_temperature_sweep(cfg);
    if (!write_file(flags.out, t2qc::sweep_records_csv(cfg, records))) {
        std::cerr << "error: cannot write " << flags.out << "\n";
        return kExitIoError;
    }
    std::cout << t2qc::to_string(cfg.mode) << " sweep, " << records.size()
              << " temperature points -> " << flags.out << "\n";
    try {
        const double tc = t2qc::critical_temperature_estimate(records);
        std::printf("estimated T_c (|M| < 0.01 crossing): %.4f\n", tc);
    } catch (const std::exception&) {
        std::cout << "no |M| threshold crossing in this sweep\n";
    }
    return kExitOk;
}

int cmd_verify(int dim, const std::vector<double>& temps, const std::string& out_path,
               int drop_gate) {
    t2qc::NodeCircuit node = dim == 1 ? t2qc::build_1d_circuit() : t2qc::build_2d_circuit();
    if (drop_gate >= 0) {
        if (drop_gate >= static_cast<int>(node.circuit.ops.size()))
            throw CLI::ValidationError("--drop-gate", "gate index out of range");
        node.circuit.ops.erase(node.circuit.ops.begin() + drop_gate);
    }
    std::string csv;
    bool all_ok = true;
    bool first = true;
    for (double t : temps) {
        const auto report =
            t2qc::verify_circuit(node.circuit, node.layout, {1.0, t});
        std::string block = report.to_csv();
        if (!first) block.erase(0, block.find('\n') + 1);  // keep one header
        first = false;
        csv += block;
        const std::size_t failures =
            static_cast<std::size_t>(std::count_if(report.rows.begin(), report.rows.end(),
                                                   [](const auto& r) { return !r.pass; }));
        all_ok = all_ok && report.all_passed();
        std::printf("T=%g: %zu rows, %zu failing (gates=%zu, multi-qubit=%zu)\n", t,
                    report.rows.size(), failures, report.gate_count,
                    report.multi_qubit_gate_count);
    }
    if (!out_path.empty() && !write_file(out_path, csv)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIoError;
    }
    std::cout << (all_ok ? "circuit matches the classical Metropolis rule\n"
                         : "circuit DOES NOT match the classical Metropolis rule\n");
    return all_ok ? kExitOk : kExitVerificationFailure;
}

int cmd_truthtable(int dim, double temp) {
    const t2qc::NodeCircuit node =
        dim == 1 ? t2qc::build_1d_circuit() : t2qc::build_2d_circuit();
    const t2qc::IsingParams params{1.0, temp};
    auto report = t2qc::verify_circuit(node.circuit, node.layout, params);
    std::sort(report.rows.begin(), report.rows.end(),
              [](const auto& a, const auto& b) { return a.input_bits < b.input_bits; });

    const char* header = dim == 1 ? " A S B" : " A B C D S";
    std::printf("%s | %-24s | S'_cl | p_cl\n", header, "|S'>");
    for (const auto& row : report.rows) {
        std::string spins;
        for (char c : row.input_bits) spins += (c == '1') ? " ^" : " v";
        const char s_in = row.input_bits[dim == 1 ? 1 : 4];
        const char stay = s_in == '1' ? '^' : 'v';
        const char flip = s_in == '1' ? 'v' : '^';
        const double flip_prob = s_in == '1' ? 1.0 - row.observed_prob : row.observed_prob;
        if (flip_prob >= 1.0 - 1e-12 || flip_prob <= 1e-12) {
            const char out = flip_prob >= 0.5 ? flip : stay;
            std::printf("%s | |%c>%21s | %c     | 1\n", spins.c_str(), out, "", out);
        } else {
            const std::string super = std::string("sqrt(P)|") + flip + ">+sqrt(1-P)|" + stay + ">";
            std::printf("%s | %-24s | %c     | 1-P = %.6f\n", spins.c_str(), super.c_str(), stay,
                        1.0 - flip_prob);
            std::printf("%*s | %24s | %c     | P   = %.6f\n", static_cast<int>(spins.size()), "",
                        "", flip, flip_prob);
        }
    }
    if (dim == 1) {
        std::printf("P = exp(-4J/T) = %.6f at T = %g\n", std::exp(-4.0 / temp), temp);
    } else {
        std::printf("P1 = exp(-4J/T) = %.6f, P2 = exp(-8J/T) = %.6f at T = %g\n",
                    std::exp(-4.0 / temp), std::exp(-8.0 / temp), temp);
    }
    return kExitOk;
}

// "lo:hi:step"
std::vector<double> parse_t_range(const std::string& s) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':')
        throw CLI::ValidationError("--t-range", "expected lo:hi:step");
    if (!(step > 0.0)) throw CLI::ValidationError("--t-range", "step must be positive");
    if (!(lo > 0.0)) throw CLI::ValidationError("--t-range", "temperatures must be positive");
    if (hi < lo) throw CLI::ValidationError("--t-range", "range must be ascending");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = lo + k * step;
        if (t > hi + 1e-9) break;
        out.push_back(t);
    }
    return out;
}

int cmd_accuracy(double delta_t, const std::string& t_range, const std::string& out_path) {
    const std::vector<double> temps = parse_t_range(t_range);
    if (!(delta_t > 0.0)) throw CLI::ValidationError("--delta-t", "must be positive");
    const std::string csv = t2qc::accuracy_curve_csv(delta_t, temps);
    if (!out_path.empty()) {
        if (!write_file(out_path, csv)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitIoError;
        }
        std::cout << temps.size() << " rows -> " << out_path << "\n";
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

struct SnapshotFlags {
    std::string mode = "classical";
    int dim = 2;
    std::string size = "64x64";
    double temp = 2.0;
    int sweeps = 100;
    std::uint64_t seed = 1;
    std::string init = "ground";
    double gate_error = 0.0;
    std::string out;
};

int cmd_snapshot(const SnapshotFlags& flags) {
    SweepFlags base;
    base.mode = flags.mode;
    base.dim = flags.dim;
    base.size = flags.size;
    base.seed = flags.seed;
    base.init = flags.init;
    base.gate_error = flags.gate_error;
    base.out = flags.out;
    t2qc::SweepConfig cfg = to_config(base);
    cfg.t_start = cfg.t_end = flags.temp;
    cfg.validate();
    const double temp = flags.temp;
    const int sweeps = flags.sweeps;
    const std::string& out_path = flags.out;
    if (sweeps < 0) throw CLI::ValidationError("--sweeps", "must be >= 0");

    const t2qc::NodeCircuit node =
        cfg.dim == 1 ? t2qc::build_1d_circuit() : t2qc::build_2d_circuit();
    t2qc::SpinLattice lattice = t2qc::make_initial_lattice(cfg);
    t2qc::SweepContext ctx;
    ctx.mode = cfg.mode;
    ctx.params.temperature = temp;
    ctx.node = &node;
    ctx.gate_error = cfg.gate_error;
    ctx.rng.seed = cfg.seed;
    for (int s = 0; s < sweeps; ++s) {
        ctx.rng.sweep_index = static_cast<std::uint32_t>(s);
        t2qc::full_sweep(lattice, ctx);
    }
    if (!write_file(out_path, lattice.snapshot())) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIoError;
    }
    std::printf("%s lattice after %d sweeps at T=%g -> %s (|M| = %.6f)\n",
                t2qc::to_string(cfg.mode).c_str(), sweeps, temp, out_path.c_str(),
                std::abs(lattice.magnetization()));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "t2qc: type-II quantum computer simulation of the Ising model\n"
        "(Metropolis node circuits, one-shot / ensemble / classical modes).\n"
        "T2QC_THREADS caps update parallelism (0 or unset = auto)."};
    app.require_subcommand(1);

    SweepFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "temperature sweep -> records CSV");
    add_sweep_flags(sweep, sweep_flags);

    int verify_dim = 1;
    std::vector<double> verify_temps{0.5, 2.0, 10.0};
    std::string verify_out;
    int drop_gate = -1;
    CLI::App* verify =
        app.add_subcommand("verify", "exhaustive circuit check against the Metropolis rule");
    verify->add_option("--dim", verify_dim, "1 or 2")->required();
    verify->add_option("--temps", verify_temps, "comma-separated temperatures")
        ->delimiter(',')
        ->capture_default_str();
    verify->add_option("--out", verify_out, "report CSV path");
    verify->add_option("--drop-gate", drop_gate, "testing hook: drop one gate by index")
        ->group("");

    int tt_dim = 1;
    double tt_temp = 2.0;
    CLI::App* truthtable = app.add_subcommand("truthtable", "print the node truth table");
    truthtable->add_option("--dim", tt_dim, "1 or 2")->required();
    truthtable->add_option("--temp", tt_temp, "temperature, units of J")->capture_default_str();

    double acc_delta_t = 0.1;
    std::string acc_range = "0.5:4:0.1";
    std::string acc_out;
    CLI::App* accuracy =
        app.add_subcommand("accuracy", "allowable rotation error delta_p vs temperature");
    accuracy->add_option("--delta-t", acc_delta_t, "temperature resolution target")
        ->capture_default_str();
    accuracy->add_option("--t-range", acc_range, "lo:hi:step")->capture_default_str();
    accuracy->add_option("--out", acc_out, "output CSV path");

    SnapshotFlags snap;
    CLI::App* snapshot = app.add_subcommand("snapshot", "write a lattice snapshot");
    snapshot->add_option("--mode", snap.mode, "oneshot | ensemble | classical")
        ->capture_default_str();
    snapshot->add_option("--dim", snap.dim, "lattice dimension, 1 or 2")->capture_default_str();
    snapshot->add_option("--size", snap.size, "lattice size, N or NxM (even)")
        ->capture_default_str();
    snapshot->add_option("--temp", snap.temp, "temperature, units of J")->capture_default_str();
    snapshot->add_option("--sweeps", snap.sweeps, "sweeps to run before the snapshot")
        ->capture_default_str();
    snapshot->add_option("--seed", snap.seed, "random seed")->capture_default_str();
    snapshot->add_option("--init", snap.init, "ground | random")->capture_default_str();
    snapshot->add_option("--gate-error", snap.gate_error,
                         "rotation-gate amplitude error delta_p (one-shot mode)")
        ->capture_default_str();
    snapshot->add_option("--out", snap.out, "snapshot path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidationError;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(sweep_flags);
        if (verify->parsed()) {
            if (verify_dim != 1 && verify_dim != 2)
                throw CLI::ValidationError("--dim", "expected 1 or 2");
            return cmd_verify(verify_dim, verify_temps, verify_out, drop_gate);
        }
        if (truthtable->parsed()) {
            if (tt_dim != 1 && tt_dim != 2)
                throw CLI::ValidationError("--dim", "expected 1 or 2");
            t2qc::IsingParams{1.0, tt_temp}.validate();
            return cmd_truthtable(tt_dim, tt_temp);
        }
        if (accuracy->parsed()) return cmd_accuracy(acc_delta_t, acc_range, acc_out);
        if (snapshot->parsed()) return cmd_snapshot(snap);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitOk;
}

#include "t2qc/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace t2qc {

void IsingParams::validate() const {
    if (coupling != 1.0)
        throw std::invalid_argument(
            "coupling is fixed to +1 (ferromagnetic, energies in units of J)");
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
}

double IsingParams::boltzmann_acceptance(double delta_e) const {
    validate();
    return delta_e <= 0.0 ? 1.0 : std::exp(-delta_e / temperature);
}

namespace {

void check_spin(int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
}

}  // namespace

int flip_delta_e(int spin, std::span<const int> neighbors) {
    if (neighbors.size() != 2 && neighbors.size() != 4)
        throw std::invalid_argument("expected 2 (1D) or 4 (2D) neighbor spins");
    check_spin(spin);
    int sum = 0;
    for (int n : neighbors) {
        check_spin(n);
        sum += n;
    }
    return 2 * spin * sum;
}

AcceptanceSpec metropolis_flip_prob(int spin, std::span<const int> neighbors,
                                    const IsingParams& params) {
    const int de = flip_delta_e(spin, neighbors);
    return {de, params.boltzmann_acceptance(static_cast<double>(de))};
}

void NodeLayout::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("layout dim must be 1 or 2");
    if (dim == 1 && num_qubits != 5)
        throw std::invalid_argument("the 1D node layout requires exactly 5 qubits");
    if (dim == 2 && num_qubits > 12)
        throw std::invalid_argument("the 2D node layout allows at most 12 qubits");
    std::vector<int> roles{spin, p1};
    for (int i = 0; i < neighbor_count(); ++i) roles.push_back(neighbors[i]);
    if (dim == 2) roles.push_back(p2);
    for (int a : roles)
        if (a < 0) throw std::invalid_argument("layout role unassigned");
    roles.insert(roles.end(), ancillas.begin(), ancillas.end());
    std::uint32_t seen = 0;
    for (int q : roles) {
        if (q < 0 || q >= num_qubits) throw std::invalid_argument("layout role out of range");
        if (seen & (1u << q)) throw std::invalid_argument("layout roles must be distinct");
        seen |= 1u << q;
    }
    if (seen != (1u << num_qubits) - 1)
        throw std::invalid_argument("layout roles must cover every qubit");
}

NodeCircuit build_1d_circuit() {
    NodeLayout layout;
    layout.dim = 1;
    layout.num_qubits = 5;
    layout.neighbors = {0, 2, -1, -1};  // A, B
    layout.spin = 1;                    // S sits between its neighbors
    layout.p1 = 3;
    layout.ancillas = {4};
    layout.validate();

    const int a = layout.neighbors[0], s = layout.spin, b = layout.neighbors[1];
    const int p = layout.p1, an = layout.ancillas[0];

    Circuit c{layout.num_qubits, {}};
    c.append(GateOp::multi_controlled_not(
        {{a, Polarity::Closed}, {s, Polarity::Closed}, {b, Polarity::Closed}}, an));
    c.append(GateOp::multi_controlled_not(
        {{a, Polarity::Open}, {s, Polarity::Open}, {b, Polarity::Open}}, an));
    c.append(GateOp::cnot(an, s, Polarity::Open));
    c.append(GateOp::multi_controlled_not({{an, Polarity::Closed}, {p, Polarity::Closed}}, s));
    return {std::move(c), std::move(layout)};
}

NodeCircuit build_2d_circuit() {
    NodeLayout layout;
    layout.dim = 2;
    layout.num_qubits = 9;
    layout.neighbors = {0, 1, 2, 3};  // A, B, C, D
    layout.spin = 4;
    layout.p1 = 5;
    layout.p2 = 6;
    layout.ancillas = {7, 8};  // E1 (dE=+4J), E2 (dE=+8J)
    layout.validate();

    const int s = layout.spin, p1 = layout.p1, p2 = layout.p2;
    const int e1 = layout.ancillas[0], e2 = layout.ancillas[1];

    Circuit c{layout.num_qubits, {}};

    // E2: every neighbor agrees with S (all five spin qubits equal).
    for (Polarity pol : {Polarity::Closed, Polarity::Open}) {
        std::vector<Control> ctrls;
        for (int n : layout.neighbors) ctrls.push_back({n, pol});
        ctrls.push_back({s, pol});
        c.append(GateOp::multi_controlled_not(std::move(ctrls), e2));
    }

    // E1: exactly one neighbor disagrees with S. One pattern per neighbor
    // and per S value.
    for (int x : layout.neighbors) {
        for (Polarity s_pol : {Polarity::Closed, Polarity::Open}) {
            const Polarity other = s_pol == Polarity::Closed ? Polarity::Open : Polarity::Closed;
            std::vector<Control> ctrls;
            for (int n : layout.neighbors) ctrls.push_back({n, n == x ? other : s_pol});
            ctrls.push_back({s, s_pol});
            c.append(GateOp::multi_controlled_not(std::move(ctrls), e1));
        }
    }

    // dE <= 0: flip unconditionally; dE=+4J: flip on P1; dE=+8J: flip on P2.
    c.append(GateOp::multi_controlled_not({{e1, Polarity::Open}, {e2, Polarity::Open}}, s));
    c.append(GateOp::multi_controlled_not({{e1, Polarity::Closed}, {p1, Polarity::Closed}}, s));
    c.append(GateOp::multi_controlled_not({{e2, Polarity::Closed}, {p2, Polarity::Closed}}, s));
    return {std::move(c), std::move(layout)};
}

bool VerificationReport::all_passed() const {
    for (const VerificationRow& r : rows)
        if (!r.pass) return false;
    return !rows.empty();
}

std::string VerificationReport::to_csv() const {
    std::string out = "input_bits,expected_prob,observed_prob,abs_error,pass\n";
    char line[160];
    for (const VerificationRow& r : rows) {
        std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%.17g,%d\n", r.input_bits.c_str(),
                      r.expected_prob, r.observed_prob, r.abs_error, r.pass ? 1 : 0);
        out += line;
    }
    return out;
}

VerificationReport verify_circuit(const Circuit& circuit, const NodeLayout& layout,
                                  const IsingParams& params, double tolerance) {
    layout.validate();
    params.validate();
    if (circuit.num_qubits != layout.num_qubits)
        throw std::invalid_argument("circuit and layout sizes disagree");

    const int nn = layout.neighbor_count();
    const double kP1 = std::exp(-4.0 * params.coupling / params.temperature);
    const double kP2 = std::exp(-8.0 * params.coupling / params.temperature);

    VerificationReport report;
    report.temperature = params.temperature;
    report.tolerance = tolerance;
    report.gate_count = circuit.ops.size();
    for (const GateOp& op : circuit.ops)
        if (!op.controls.empty() || op.kind == GateKind::Swap) ++report.multi_qubit_gate_count;

    QuantumRegister reg(layout.num_qubits);
    for (int input = 0; input < (1 << (nn + 1)); ++input) {
        // Bit i of `input` is neighbor i; the top bit is S.
        std::array<int, 4> nb_bits{};
        for (int i = 0; i < nn; ++i) nb_bits[i] = (input >> i) & 1;
        const int s_bit = (input >> nn) & 1;

        reg.reset();
        reg.set_basis(layout.spin, s_bit);
        for (int i = 0; i < nn; ++i) reg.set_basis(layout.neighbors[i], nb_bits[i]);
        reg.prepare_superposition(layout.p1, kP1);
        if (layout.dim == 2) reg.prepare_superposition(layout.p2, kP2);
        reg.apply(circuit);

        std::vector<int> nb_spins(nn);
        for (int i = 0; i < nn; ++i) nb_spins[i] = 2 * nb_bits[i] - 1;
        const double flip = metropolis_flip_prob(2 * s_bit - 1, nb_spins, params).flip_prob;

        VerificationRow row;
        if (layout.dim == 1) {
            // A S B, matching the truth-table layout.
            row.input_bits = {char('0' + nb_bits[0]), char('0' + s_bit), char('0' + nb_bits[1])};
        } else {
            for (int i = 0; i < nn; ++i) row.input_bits += char('0' + nb_bits[i]);
            row.input_bits += char('0' + s_bit);
        }
        row.expected_prob = s_bit ? 1.0 - flip : flip;
        row.observed_prob = reg.prob_one(layout.spin);
        row.abs_error = std::abs(row.observed_prob - row.expected_prob);

        row.neighbors_preserved = true;
        for (int i = 0; i < nn; ++i)
            if (reg.wrong_bit_mass(layout.neighbors[i], nb_bits[i]) != 0.0)
                row.neighbors_preserved = false;

        row.p_marginals_preserved = std::abs(reg.prob_one(layout.p1) - kP1) <= tolerance;
        if (layout.dim == 2 && std::abs(reg.prob_one(layout.p2) - kP2) > tolerance)
            row.p_marginals_preserved = false;

        row.pass = row.abs_error <= tolerance && row.neighbors_preserved &&
                   row.p_marginals_preserved;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace t2qc

#include "t2qc/qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace t2qc {

namespace {

constexpr double kBasisTol = 1e-12;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

GateOp GateOp::not_gate(int target) { return {GateKind::Not, target, -1, {}}; }

GateOp GateOp::swap_gate(int a, int b) { return {GateKind::Swap, a, b, {}}; }

GateOp GateOp::cnot(int control, int target, Polarity polarity) {
    return {GateKind::ControlledNot, target, -1, {{control, polarity}}};
}

GateOp GateOp::toffoli(int control_a, int control_b, int target) {
    return {GateKind::ControlledNot, target, -1,
            {{control_a, Polarity::Closed}, {control_b, Polarity::Closed}}};
}

GateOp GateOp::multi_controlled_not(std::vector<Control> controls, int target) {
    return {GateKind::ControlledNot, target, -1, std::move(controls)};
}

void validate_gate(const GateOp& op, int num_qubits) {
    auto check_index = [&](int q) {
        if (q < 0 || q >= num_qubits)
            fail("gate qubit index " + std::to_string(q) + " out of range for " +
                 std::to_string(num_qubits) + " qubits");
    };
    check_index(op.target);
    std::uint32_t seen = 1u << op.target;
    if (op.kind == GateKind::Swap) {
        check_index(op.target2);
        if (op.target2 == op.target) fail("swap targets must differ");
        seen |= 1u << op.target2;
    } else if (op.target2 != -1) {
        fail("target2 is only meaningful for swap gates");
    }
    for (const Control& c : op.controls) {
        check_index(c.qubit);
        if (seen & (1u << c.qubit)) fail("gate qubit indices must be distinct");
        seen |= 1u << c.qubit;
    }
}

void Circuit::append(GateOp op) {
    validate_gate(op, num_qubits);
    ops.push_back(std::move(op));
}

QuantumRegister::QuantumRegister(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 16)
        fail("register size must be in [1, 16], got " + std::to_string(num_qubits));
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void QuantumRegister::reset() {
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void QuantumRegister::set_basis(int qubit, int bit) {
    if (qubit < 0 || qubit >= num_qubits_) fail("set_basis: qubit out of range");
    if (bit != 0 && bit != 1) fail("set_basis: bit must be 0 or 1");
    const double p1 = prob_one(qubit);
    int current;
    if (p1 <= kBasisTol)
        current = 0;
    else if (p1 >= 1.0 - kBasisTol)
        current = 1;
    else
        fail("set_basis: qubit is in superposition");
    if (current != bit) apply(GateOp::not_gate(qubit));
}

void QuantumRegister::prepare_superposition(int qubit, double prob_one_target) {
    if (qubit < 0 || qubit >= num_qubits_) fail("prepare_superposition: qubit out of range");
    if (!(prob_one_target >= 0.0 && prob_one_target <= 1.0))
        fail("prepare_superposition: probability must be in [0, 1]");
    if (prob_one(qubit) > kBasisTol) fail("prepare_superposition: qubit must be |0>");
    const double a1 = std::sqrt(prob_one_target);
    const double a0 = std::sqrt(1.0 - prob_one_target);
    const std::uint64_t t = std::uint64_t{1} << qubit;
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        if (b & t) continue;
        amps_[b | t] = amps_[b] * a1;
        amps_[b] *= a0;
    }
}

void QuantumRegister::apply(const GateOp& op) {
    validate_gate(op, num_qubits_);
    std::uint64_t ctrl_mask = 0, ctrl_want = 0;
    for (const Control& c : op.controls) {
        ctrl_mask |= std::uint64_t{1} << c.qubit;
        if (c.polarity == Polarity::Closed) ctrl_want |= std::uint64_t{1} << c.qubit;
    }
    const std::uint64_t size = amps_.size();
    if (op.kind == GateKind::Swap) {
        const std::uint64_t t1 = std::uint64_t{1} << op.target;
        const std::uint64_t t2 = std::uint64_t{1} << op.target2;
        for (std::uint64_t b = 0; b < size; ++b) {
            if ((b & ctrl_mask) != ctrl_want) continue;
            if ((b & t1) && !(b & t2)) std::swap(amps_[b], amps_[b ^ t1 ^ t2]);
        }
    } else {
        const std::uint64_t t = std::uint64_t{1} << op.target;
        for (std::uint64_t b = 0; b < size; ++b) {
            if (b & t) continue;
            if ((b & ctrl_mask) != ctrl_want) continue;
            std::swap(amps_[b], amps_[b | t]);
        }
    }
}

void QuantumRegister::apply(const Circuit& circuit) {
    if (circuit.num_qubits != num_qubits_)
        fail("apply: circuit is for " + std::to_string(circuit.num_qubits) +
             " qubits, register has " + std::to_string(num_qubits_));
    for (const GateOp& op : circuit.ops) apply(op);
}

double QuantumRegister::prob_one(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) fail("prob_one: qubit out of range");
    const std::uint64_t t = std::uint64_t{1} << qubit;
    double p = 0.0;
    for (std::uint64_t b = 0; b < amps_.size(); ++b)
        if (b & t) p += std::norm(amps_[b]);
    return p;
}

double QuantumRegister::wrong_bit_mass(int qubit, int bit) const {
    if (qubit < 0 || qubit >= num_qubits_) fail("wrong_bit_mass: qubit out of range");
    const std::uint64_t t = std::uint64_t{1} << qubit;
    const std::uint64_t want = bit ? t : 0;
    double p = 0.0;
    for (std::uint64_t b = 0; b < amps_.size(); ++b)
        if ((b & t) != want) p += std::norm(amps_[b]);
    return p;
}

int QuantumRegister::measure(int qubit, double u) {
    if (!(u >= 0.0 && u < 1.0)) fail("measure: u must be in [0, 1)");
    const int outcome = u < prob_one(qubit) ? 1 : 0;
    project(qubit, outcome);
    return outcome;
}

void QuantumRegister::project(int qubit, int outcome) {
    if (outcome != 0 && outcome != 1) fail("project: outcome must be 0 or 1");
    const double p1 = prob_one(qubit);
    const double keep = outcome ? p1 : 1.0 - p1;
    if (keep <= 0.0) fail("project: outcome has zero probability");
    const double scale = 1.0 / std::sqrt(keep);
    const std::uint64_t t = std::uint64_t{1} << qubit;
    const std::uint64_t want = outcome ? t : 0;
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        if ((b & t) == want)
            amps_[b] *= scale;
        else
            amps_[b] = 0.0;
    }
}

double QuantumRegister::norm_squared() const {
    double n = 0.0;
    for (const Amplitude& a : amps_) n += std::norm(a);
    return n;
}

}  // namespace t2qc

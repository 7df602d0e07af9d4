#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace t2qc {

using Amplitude = std::complex<double>;

/// Control polarity: a closed control fires on |1>, an open control on |0>.
enum class Polarity { Closed, Open };

struct Control {
    int qubit;
    Polarity polarity;
};

enum class GateKind { Not, Swap, ControlledNot };

/// One reversible gate: a (multi-)controlled NOT on `target`, or a
/// (multi-)controlled swap of `target` and `target2`. With no controls a
/// ControlledNot degenerates to Not; with two closed controls it is the
/// Toffoli gate. Every gate is a permutation of computational basis states
/// and is its own inverse.
struct GateOp {
    GateKind kind = GateKind::Not;
    int target = 0;
    int target2 = -1;  // Swap only
    std::vector<Control> controls;

    static GateOp not_gate(int target);
    static GateOp swap_gate(int a, int b);
    static GateOp cnot(int control, int target, Polarity polarity = Polarity::Closed);
    static GateOp toffoli(int control_a, int control_b, int target);
    static GateOp multi_controlled_not(std::vector<Control> controls, int target);
};

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> ops;

    void append(GateOp op);  // validates against num_qubits
};

/// Throws std::invalid_argument if the gate's indices collide or fall
/// outside [0, num_qubits).
void validate_gate(const GateOp& op, int num_qubits);

/// Exact statevector for one node register. Amplitudes are complex even
/// though every circuit in this project keeps them real and non-negative:
/// "imaginary part stays zero" is then a free correctness check.
class QuantumRegister {
  public:
    /// Constructs |0...0>. num_qubits must be in [1, 16].
    explicit QuantumRegister(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }

    /// Back to |0...0> without reallocating.
    void reset();

    /// Sets a qubit that currently holds a classical value to `bit`.
    /// Throws if the qubit is in superposition.
    void set_basis(int qubit, int bit);

    /// Takes a qubit from |0> to sqrt(1-P)|0> + sqrt(P)|1>. The qubit must
    /// currently be |0>; callers pass the probability P, not the amplitude.
    void prepare_superposition(int qubit, double prob_one);

    void apply(const GateOp& op);
    void apply(const Circuit& circuit);

    /// Probability of reading 1 on `qubit`; the register is unchanged.
    double prob_one(int qubit) const;

    /// Probability mass on basis states whose `qubit` bit differs from
    /// `bit`. Exactly 0.0 when no gate ever moved amplitude there.
    double wrong_bit_mass(int qubit, int bit) const;

    /// Destructive measurement with an externally drawn u in [0,1):
    /// returns 1 iff u < prob_one(qubit), zeroes inconsistent amplitudes
    /// and renormalizes. Deterministic given (state, u).
    int measure(int qubit, double u);

    /// Post-measurement collapse onto a chosen outcome: zeroes the
    /// inconsistent amplitudes and renormalizes. The outcome must have
    /// nonzero probability.
    void project(int qubit, int outcome);

    double norm_squared() const;

  private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

}  // namespace t2qc

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "t2qc/qstate.hpp"

namespace t2qc {

/// Coupling is pinned to the ferromagnetic unit J = +1 and the Boltzmann
/// constant to k = 1, so temperature is expressed in units of J.
struct IsingParams {
    double coupling = 1.0;
    double temperature = 1.0;

    void validate() const;  // throws on T <= 0 or coupling != +1

    /// min{1, exp(-delta_e / T)} for an energy change in units of J.
    double boltzmann_acceptance(double delta_e) const;
};

struct AcceptanceSpec {
    int delta_e;       // units of J
    double flip_prob;  // min{1, exp(-delta_e/T)}
};

/// Energy change from flipping spin s against its nearest neighbors:
/// dE = 2 s sum_j s_j, each affected bond counted once. Spins are +/-1;
/// 2 neighbors in 1D, 4 in 2D.
int flip_delta_e(int spin, std::span<const int> neighbors);

AcceptanceSpec metropolis_flip_prob(int spin, std::span<const int> neighbors,
                                    const IsingParams& params);

/// Qubit roles inside one node register. Spin-up (+1) is encoded as bit 1,
/// spin-down (-1) as bit 0. The probability qubits hold |P> = sqrt(P)|1> +
/// sqrt(1-P)|0> with P1 = exp(-4J/T) and, in 2D, P2 = exp(-8J/T).
struct NodeLayout {
    int dim = 1;
    int num_qubits = 0;
    int spin = -1;                    // S, the on-site spin (circuit target)
    std::array<int, 4> neighbors{};  // A,B (1D) or A,B,C,D (2D)
    int p1 = -1;
    int p2 = -1;  // 2D only
    std::vector<int> ancillas;

    int neighbor_count() const { return dim == 1 ? 2 : 4; }
    void validate() const;  // roles must form a bijection onto 0..num_qubits-1
};

struct NodeCircuit {
    Circuit circuit;
    NodeLayout layout;
};

/// 5-qubit node circuit for the 1D chain. Gate list (A, S, B spins, P the
/// probability qubit, An the ancilla):
///   1. An ^= (A=1 & S=1 & B=1)
///   2. An ^= (A=0 & S=0 & B=0)      -> An marks "all three aligned"
///   3. S  ^= (An=0)                  -> dE <= 0: flip unconditionally
///   4. S  ^= (An=1 & P=1)            -> dE = +4J: flip with probability P
NodeCircuit build_1d_circuit();

/// Node circuit for the 2D lattice: 9 qubits, 13 gates. Two indicator
/// ancillas classify the neighbor agreement pattern (E2: all four agree
/// with S, dE=+8J; E1: exactly three agree, dE=+4J), then S is flipped
/// unconditionally for dE<=0, on P1 for dE=+4J and on P2 for dE=+8J.
/// Neighbor and P qubits are only ever used as controls.
NodeCircuit build_2d_circuit();

struct VerificationRow {
    std::string input_bits;  // "ASB" in 1D (truth-table order), "ABCDS" in 2D
    double expected_prob;    // probability of measuring S' = 1
    double observed_prob;
    double abs_error;
    bool neighbors_preserved;  // exact: zero amplitude on altered neighbors
    bool p_marginals_preserved;
    bool pass;
};

struct VerificationReport {
    double temperature = 0.0;
    double tolerance = 0.0;
    std::size_t gate_count = 0;
    std::size_t multi_qubit_gate_count = 0;
    std::vector<VerificationRow> rows;

    bool all_passed() const;
    /// CSV with header input_bits,expected_prob,observed_prob,abs_error,pass
    std::string to_csv() const;
};

/// Enumerates every classical assignment of the spin qubits (8 inputs in
/// 1D, 32 in 2D), runs the circuit on a register prepared per `params`,
/// and compares the measured-S' statistics against the classical
/// Metropolis rule. Failures are rows, not exceptions.
VerificationReport verify_circuit(const Circuit& circuit, const NodeLayout& layout,
                                  const IsingParams& params, double tolerance = 1e-10);

}  // namespace t2qc

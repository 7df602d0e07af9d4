#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <vector>

#include <cmath>
#include <random>

#include "t2qc/qstate.hpp"

using namespace t2qc;

namespace {

std::uint64_t basis_index(std::initializer_list<int> bits) {
    std::uint64_t b = 0;
    int q = 0;
    for (int bit : bits) b |= std::uint64_t(bit) << q++;
    return b;
}

GateOp random_gate(std::mt19937_64& gen, int num_qubits) {
    std::uniform_int_distribution<int> qubit(0, num_qubits - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> n_ctrl(0, std::min(2, num_qubits - 2));
    std::vector<int> perm(num_qubits);
    for (int i = 0; i < num_qubits; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), gen);
    switch (kind(gen)) {
        case 0: return GateOp::not_gate(perm[0]);
        case 1: {
            GateOp op = GateOp::swap_gate(perm[0], perm[1]);
            if (num_qubits > 2 && gen() % 2) op.controls.push_back({perm[2], Polarity::Closed});
            return op;
        }
        default: {
            std::vector<Control> ctrls;
            const int n = n_ctrl(gen);
            for (int i = 0; i < n; ++i)
                ctrls.push_back({perm[1 + i], gen() % 2 ? Polarity::Closed : Polarity::Open});
            return GateOp::multi_controlled_not(std::move(ctrls), perm[0]);
        }
    }
}

}  // namespace

TEST_CASE("register construction gives the all-zeros basis state") {
    QuantumRegister r1(1);
    CHECK(r1.amplitudes()[0] == Amplitude{1.0, 0.0});
    CHECK(r1.amplitudes()[1] == Amplitude{0.0, 0.0});

    QuantumRegister r2(2);
    CHECK(r2.amplitudes().size() == 4);
    CHECK(r2.amplitudes()[0] == Amplitude{1.0, 0.0});
    for (int i = 1; i < 4; ++i) CHECK(r2.amplitudes()[i] == Amplitude{0.0, 0.0});

    CHECK_THROWS_AS(QuantumRegister(0), std::invalid_argument);
    CHECK_THROWS_AS(QuantumRegister(17), std::invalid_argument);
}

TEST_CASE("set_basis relabels classical qubits and rejects superpositions") {
    QuantumRegister reg(2);
    reg.set_basis(1, 1);  // |00> -> qubit 1 on
    CHECK(reg.amplitudes()[basis_index({0, 1})] == Amplitude{1.0, 0.0});

    reg.set_basis(1, 1);  // idempotent
    CHECK(reg.amplitudes()[basis_index({0, 1})] == Amplitude{1.0, 0.0});

    QuantumRegister single(1);
    single.set_basis(0, 0);
    CHECK(single.amplitudes()[0] == Amplitude{1.0, 0.0});

    QuantumRegister super(1);
    super.prepare_superposition(0, 0.5);
    CHECK_THROWS_AS(super.set_basis(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(reg.set_basis(2, 0), std::invalid_argument);
}

TEST_CASE("prepare_superposition endpoints and closed-form amplitudes") {
    QuantumRegister reg(1);
    reg.prepare_superposition(0, 1.0);
    CHECK(reg.amplitudes()[1].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reg.amplitudes()[0].real() == doctest::Approx(0.0).epsilon(1e-15));

    QuantumRegister reg0(1);
    reg0.prepare_superposition(0, 0.0);
    CHECK(reg0.amplitudes()[0].real() == doctest::Approx(1.0).epsilon(1e-15));

    // P = exp(-4J/T) at J=1, T=4
    const double p = std::exp(-1.0);
    CHECK(p == doctest::Approx(0.367879).epsilon(1e-6));
    QuantumRegister regp(1);
    regp.prepare_superposition(0, p);
    CHECK(regp.amplitudes()[0].real() == doctest::Approx(std::sqrt(1.0 - p)).epsilon(1e-15));
    CHECK(regp.amplitudes()[1].real() == doctest::Approx(std::sqrt(p)).epsilon(1e-15));

    QuantumRegister bad(1);
    CHECK_THROWS_AS(bad.prepare_superposition(0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(bad.prepare_superposition(0, -0.1), std::invalid_argument);
    bad.set_basis(0, 1);
    CHECK_THROWS_AS(bad.prepare_superposition(0, 0.5), std::invalid_argument);
}

TEST_CASE("CNOT truth table") {
    // control qubit 0, target qubit 1
    const int table[4][2][2] = {
        {{0, 0}, {0, 0}},
        {{0, 1}, {0, 1}},
        {{1, 0}, {1, 1}},
        {{1, 1}, {1, 0}},
    };
    for (const auto& row : table) {
        QuantumRegister reg(2);
        reg.set_basis(0, row[0][0]);
        reg.set_basis(1, row[0][1]);
        reg.apply(GateOp::cnot(0, 1));
        CHECK(reg.amplitudes()[basis_index({row[1][0], row[1][1]})] == Amplitude{1.0, 0.0});
    }
}

TEST_CASE("Toffoli truth table") {
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                QuantumRegister reg(3);
                reg.set_basis(0, a);
                reg.set_basis(1, b);
                reg.set_basis(2, c);
                reg.apply(GateOp::toffoli(0, 1, 2));
                const int c_out = (a & b) ? 1 - c : c;
                CHECK(reg.amplitudes()[basis_index({a, b, c_out})] == Amplitude{1.0, 0.0});
            }
        }
    }
}

TEST_CASE("open-control CNOT fires when the control is 0") {
    QuantumRegister reg(2);
    reg.apply(GateOp::cnot(0, 1, Polarity::Open));
    CHECK(reg.amplitudes()[basis_index({0, 1})] == Amplitude{1.0, 0.0});

    QuantumRegister reg2(2);
    reg2.set_basis(0, 1);
    reg2.apply(GateOp::cnot(0, 1, Polarity::Open));
    CHECK(reg2.amplitudes()[basis_index({1, 0})] == Amplitude{1.0, 0.0});
}

TEST_CASE("swap gate exchanges two qubits") {
    QuantumRegister reg(2);
    reg.set_basis(0, 1);
    reg.apply(GateOp::swap_gate(0, 1));
    CHECK(reg.amplitudes()[basis_index({0, 1})] == Amplitude{1.0, 0.0});
}

TEST_CASE("gate validation rejects bad indices") {
    QuantumRegister reg(2);
    CHECK_THROWS_AS(reg.apply(GateOp::cnot(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(reg.apply(GateOp::cnot(0, 2)), std::invalid_argument);
    CHECK_THROWS_AS(reg.apply(GateOp::swap_gate(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(reg.apply(GateOp::not_gate(-1)), std::invalid_argument);
}

TEST_CASE("apply_circuit: identity, involution, dimension check") {
    QuantumRegister reg(2);
    reg.set_basis(0, 1);
    const auto before = std::vector<Amplitude>(reg.amplitudes().begin(), reg.amplitudes().end());

    Circuit empty{2, {}};
    reg.apply(empty);
    CHECK(std::equal(before.begin(), before.end(), reg.amplitudes().begin()));

    Circuit twice{2, {}};
    twice.append(GateOp::not_gate(0));
    twice.append(GateOp::not_gate(0));
    reg.apply(twice);
    CHECK(std::equal(before.begin(), before.end(), reg.amplitudes().begin()));

    Circuit cnots{2, {}};
    cnots.append(GateOp::cnot(0, 1));
    cnots.append(GateOp::cnot(0, 1));
    reg.apply(cnots);
    CHECK(std::equal(before.begin(), before.end(), reg.amplitudes().begin()));

    Circuit wrong{3, {}};
    CHECK_THROWS_AS(reg.apply(wrong), std::invalid_argument);
}

TEST_CASE("prob_one basics") {
    QuantumRegister one(1);
    one.set_basis(0, 1);
    CHECK(one.prob_one(0) == 1.0);

    QuantumRegister sup(1);
    sup.prepare_superposition(0, 0.25);
    CHECK(sup.prob_one(0) == doctest::Approx(0.25).epsilon(1e-15));

    QuantumRegister two(2);
    CHECK(two.prob_one(1) == 0.0);
    CHECK_THROWS_AS(two.prob_one(2), std::invalid_argument);
}

TEST_CASE("measurement convention and collapse") {
    QuantumRegister reg(1);
    reg.prepare_superposition(0, 0.25);
    CHECK(reg.measure(0, 0.20) == 1);
    CHECK(reg.prob_one(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reg.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

    QuantumRegister reg2(1);
    reg2.prepare_superposition(0, 0.25);
    CHECK(reg2.measure(0, 0.30) == 0);
    CHECK(reg2.prob_one(0) == 0.0);

    QuantumRegister certain(1);
    certain.set_basis(0, 1);
    CHECK(certain.measure(0, 0.0) == 1);
    QuantumRegister certain2(1);
    certain2.set_basis(0, 1);
    CHECK(certain2.measure(0, 0.999999) == 1);

    CHECK_THROWS_AS(certain.measure(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(certain.measure(0, -0.1), std::invalid_argument);
}

TEST_CASE("projection collapses onto a chosen reachable outcome") {
    QuantumRegister reg(2);
    reg.prepare_superposition(0, 0.25);
    reg.apply(GateOp::cnot(0, 1));  // entangle: sqrt(.75)|00> + sqrt(.25)|11>
    reg.project(1, 1);
    CHECK(reg.prob_one(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reg.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

    QuantumRegister zero(1);
    CHECK_THROWS_AS(zero.project(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(zero.project(0, 2), std::invalid_argument);
}

TEST_CASE("norm preservation fuzz over random circuits") {
    std::mt19937_64 gen(20260811);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + int(gen() % 7);  // up to 8 qubits
        QuantumRegister reg(n);
        std::uniform_real_distribution<double> prob(0.0, 1.0);
        for (int q = 0; q < n; ++q)
            if (gen() % 2) reg.prepare_superposition(q, prob(gen));
        const int len = int(gen() % 101);
        for (int g = 0; g < len; ++g) reg.apply(random_gate(gen, n));
        CHECK(std::abs(reg.norm_squared() - 1.0) < 1e-12);
        for (const Amplitude& a : reg.amplitudes()) CHECK(std::abs(a.imag()) < 1e-12);
    }
}

TEST_CASE("every gate is a basis permutation (exhaustive, n <= 6)") {
    std::mt19937_64 gen(7);
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const GateOp op = random_gate(gen, n);
            std::vector<bool> hit(std::size_t{1} << n, false);
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
                QuantumRegister reg(n);
                for (int q = 0; q < n; ++q) reg.set_basis(q, int((b >> q) & 1));
                reg.apply(op);
                int nonzero = 0;
                std::uint64_t image = 0;
                for (std::uint64_t i = 0; i < reg.amplitudes().size(); ++i) {
                    if (reg.amplitudes()[i] != Amplitude{0.0, 0.0}) {
                        ++nonzero;
                        image = i;
                    }
                }
                CHECK(nonzero == 1);
                CHECK(reg.amplitudes()[image] == Amplitude{1.0, 0.0});
                CHECK_FALSE(hit[image]);
                hit[image] = true;
            }
        }
    }
}

TEST_CASE("reversibility: a circuit followed by its reverse restores the state") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + int(gen() % 4);
        Circuit c{n, {}};
        for (int g = 0; g < 30; ++g) c.append(random_gate(gen, n));

        QuantumRegister reg(n);
        for (int q = 0; q < n; ++q)
            if (gen() % 2) reg.prepare_superposition(q, prob(gen));
        const std::vector<Amplitude> before(reg.amplitudes().begin(), reg.amplitudes().end());

        reg.apply(c);
        for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) reg.apply(*it);

        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(std::abs(reg.amplitudes()[i] - before[i]) < 1e-12);
    }
}

TEST_CASE("measurement obeys the law of total probability on a u grid") {
    const int grid = 10000;
    for (double p : {0.0, 0.135335, 0.25, 0.5, 0.867, 1.0}) {
        int ones = 0;
        for (int i = 0; i < grid; ++i) {
            QuantumRegister reg(1);
            reg.prepare_superposition(0, p);
            ones += reg.measure(0, (i + 0.5) / grid);
        }
        CHECK(std::abs(double(ones) / grid - p) <= 1.0 / grid);
    }
}

#pragma once

#include <string>
#include <vector>

#include "t2qc/circuits.hpp"

namespace t2qc {

/// Discrete lattices hold spins in {-1, +1}; ensemble lattices hold the
/// continuous expectation value of each spin in [-1, +1].
enum class SpinMode { Discrete, Ensemble };

struct Site {
    int row = 0;
    int col = 0;  // always 0 in 1D
};

/// Streamed inputs for one node update: the on-site spin and copies of its
/// nearest neighbors. 1D: A = S_{i-1}, B = S_{i+1}. 2D: A = S_{i,j+1},
/// B = S_{i-1,j}, C = S_{i,j-1}, D = S_{i+1,j}.
struct NodeInputs {
    double center = 0.0;
    std::array<double, 4> neighbors{};
    int count = 0;
};

/// Periodic Ising lattice, 1D chain or 2D grid. Sizes must be even so the
/// checkerboard sublattices tile cleanly under the periodic wrap.
class SpinLattice {
  public:
    static SpinLattice chain(int length, SpinMode mode);          // dim 1
    static SpinLattice grid(int rows, int cols, SpinMode mode);   // dim 2

    int dim() const { return dim_; }
    SpinMode mode() const { return mode_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int num_sites() const { return rows_ * cols_; }

    double at(Site s) const;
    int site_index(Site s) const { return s.row * cols_ + s.col; }
    const std::vector<double>& values() const { return values_; }

    /// Read-only streaming step: center spin plus neighbor copies with
    /// periodic wrap.
    NodeInputs stream(Site s) const;

    /// Sites of one checkerboard color, row-major. Black is even parity
    /// (index in 1D, row+col in 2D).
    std::vector<Site> checkerboard_sites(bool black) const;

    /// Point update; validates the value against the lattice mode.
    void write_back(Site s, double spin);

    /// Mean spin value.
    double magnetization() const;

    /// Eq.-style total energy: sum over sites of -J sum_j s_i s_j with the
    /// sum over all nearest neighbors, so every bond is counted twice.
    /// Discrete mode only.
    double total_energy(const IsingParams& params) const;

    /// One line per row; '+'/'-' in discrete mode, fixed-point decimals in
    /// ensemble mode.
    std::string snapshot() const;

    void fill(double spin);

  private:
    SpinLattice(int dim, int rows, int cols, SpinMode mode);
    void check_site(Site s) const;

    int dim_;
    int rows_;
    int cols_;
    SpinMode mode_;
    std::vector<double> values_;
};

}  // namespace t2qc

#include "t2qc/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace t2qc {

namespace {

void check_even(int n, const char* what) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument(std::string(what) +
                                    " must be even and >= 2 for the checkerboard scheme");
}

}  // namespace

SpinLattice::SpinLattice(int dim, int rows, int cols, SpinMode mode)
    : dim_(dim), rows_(rows), cols_(cols), mode_(mode) {
    values_.assign(static_cast<std::size_t>(rows) * cols, 1.0);
}

SpinLattice SpinLattice::chain(int length, SpinMode mode) {
    check_even(length, "chain length");
    return SpinLattice(1, length, 1, mode);
}

SpinLattice SpinLattice::grid(int rows, int cols, SpinMode mode) {
    check_even(rows, "grid rows");
    check_even(cols, "grid cols");
    return SpinLattice(2, rows, cols, mode);
}

void SpinLattice::check_site(Site s) const {
    if (s.row < 0 || s.row >= rows_ || s.col < 0 || s.col >= cols_)
        throw std::out_of_range("site out of bounds");
}

double SpinLattice::at(Site s) const {
    check_site(s);
    return values_[site_index(s)];
}

NodeInputs SpinLattice::stream(Site s) const {
    check_site(s);
    NodeInputs in;
    in.center = values_[site_index(s)];
    if (dim_ == 1) {
        in.count = 2;
        in.neighbors[0] = values_[(s.row + rows_ - 1) % rows_];  // A = S_{i-1}
        in.neighbors[1] = values_[(s.row + 1) % rows_];          // B = S_{i+1}
    } else {
        in.count = 4;
        const int up = (s.col + 1) % cols_;
        const int down = (s.col + cols_ - 1) % cols_;
        const int left = (s.row + rows_ - 1) % rows_;
        const int right = (s.row + 1) % rows_;
        in.neighbors[0] = values_[site_index({s.row, up})];    // A = S_{i,j+1}
        in.neighbors[1] = values_[site_index({left, s.col})];  // B = S_{i-1,j}
        in.neighbors[2] = values_[site_index({s.row, down})];  // C = S_{i,j-1}
        in.neighbors[3] = values_[site_index({right, s.col})]; // D = S_{i+1,j}
    }
    return in;
}

std::vector<Site> SpinLattice::checkerboard_sites(bool black) const {
    const int want = black ? 0 : 1;
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(num_sites()) / 2);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((i + j) % 2 == want) sites.push_back({i, j});
    return sites;
}

void SpinLattice::write_back(Site s, double spin) {
    check_site(s);
    if (mode_ == SpinMode::Discrete) {
        if (spin != 1.0 && spin != -1.0)
            throw std::invalid_argument("discrete lattices hold spins +1 or -1");
    } else if (!(spin >= -1.0 && spin <= 1.0)) {
        throw std::invalid_argument("ensemble spin values live in [-1, 1]");
    }
    values_[site_index(s)] = spin;
}

double SpinLattice::magnetization() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
}

double SpinLattice::total_energy(const IsingParams& params) const {
    if (mode_ != SpinMode::Discrete)
        throw std::logic_error("total_energy is defined for discrete lattices only");
    params.validate();
    double total = 0.0;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            const NodeInputs in = stream({i, j});
            double nb_sum = 0.0;
            for (int k = 0; k < in.count; ++k) nb_sum += in.neighbors[k];
            total += -params.coupling * in.center * nb_sum;
        }
    }
    return total;
}

std::string SpinLattice::snapshot() const {
    // A 1D chain is one row regardless of how it is stored.
    const int out_rows = dim_ == 1 ? 1 : rows_;
    const int out_cols = dim_ == 1 ? rows_ : cols_;
    std::string out;
    char buf[32];
    for (int i = 0; i < out_rows; ++i) {
        for (int j = 0; j < out_cols; ++j) {
            const double v = values_[static_cast<std::size_t>(i) * out_cols + j];
            if (mode_ == SpinMode::Discrete) {
                out += v > 0 ? '+' : '-';
            } else {
                std::snprintf(buf, sizeof(buf), "%s%.6f", j ? " " : "", v);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

void SpinLattice::fill(double spin) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) write_back({i, j}, spin);
}

}  // namespace t2qc

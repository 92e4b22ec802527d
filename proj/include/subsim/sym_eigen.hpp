#pragma once

#include <vector>

namespace subsim {

// Dense real symmetric matrix, row-major storage.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    double trace() const;
    double max_abs() const;
};

// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
// Iterates until the off-diagonal Frobenius mass drops below tol times the
// Frobenius norm of the input. The matrix is destroyed in place.
std::vector<double> symmetric_eigenvalues(SymMatrix m, double tol = 1e-14);

// Sum of |eigenvalue| over the spectrum. Matrices whose nonzeros all sit on
// the main antidiagonal are handled directly: their spectrum is the paired
// +/- antidiagonal magnitudes.
double abs_eigenvalue_sum(const SymMatrix& m, double tol = 1e-14);

} // namespace subsim

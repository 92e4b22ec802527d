#include "subsim/sym_eigen.hpp"

#include <cmath>
#include <stdexcept>

namespace subsim {

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<double> symmetric_eigenvalues(SymMatrix m, double tol) {
    const int n = m.n;
    std::vector<double> d(n);
    if (n == 0) return d;
    for (int i = 0; i < n; ++i) d[i] = m.at(i, i);
    if (n == 1) return d;

    double fnorm = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q)
            fnorm += m.at(p, q) * m.at(p, q) * (p == q ? 1.0 : 2.0);
    fnorm = std::sqrt(fnorm);
    if (fnorm == 0.0) return d;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += m.at(p, q) * m.at(p, q);
        off = std::sqrt(2.0 * off);
        if (off <= tol * fnorm) return d;

        // Skip tiny elements in the first sweeps to avoid churning.
        double thresh = (sweep < 3) ? 0.2 * off / (n * n) : 0.0;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m.at(p, q);
                double g = 100.0 * std::fabs(apq);
                if (sweep > 3 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
                    std::fabs(d[q]) + g == std::fabs(d[q])) {
                    m.at(p, q) = 0.0;
                    continue;
                }
                if (std::fabs(apq) <= thresh) continue;

                double h = d[q] - d[p];
                double t;
                if (std::fabs(h) + g == std::fabs(h)) {
                    t = apq / h;
                } else {
                    double theta = 0.5 * h / apq;
                    t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau = s / (1.0 + c);
                double hpq = t * apq;
                d[p] -= hpq;
                d[q] += hpq;
                m.at(p, q) = 0.0;
                auto rotate = [&](int i, int j, int k, int l) {
                    double gij = m.at(i, j), hkl = m.at(k, l);
                    m.at(i, j) = gij - s * (hkl + gij * tau);
                    m.at(k, l) = hkl + s * (gij - hkl * tau);
                };
                for (int j = 0; j < p; ++j) rotate(j, p, j, q);
                for (int j = p + 1; j < q; ++j) rotate(p, j, j, q);
                for (int j = q + 1; j < n; ++j) rotate(p, j, q, j);
            }
        }
    }
    throw std::runtime_error("symmetric_eigenvalues: Jacobi sweep limit exceeded");
}

namespace {

// True when every entry off the main antidiagonal is exactly zero.
bool antidiagonal_only(const SymMatrix& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (j != m.n - 1 - i && m.at(i, j) != 0.0) return false;
    return true;
}

} // namespace

double abs_eigenvalue_sum(const SymMatrix& m, double tol) {
    if (m.n == 0) return 0.0;
    if (m.n == 1) return std::fabs(m.at(0, 0));
    if (antidiagonal_only(m)) {
        // Index pairs (i, n-1-i) decouple into 2x2 swaps with spectrum
        // +/- |a_i|; the centre element (odd n) is its own eigenvalue.
        double s = 0.0;
        for (int i = 0; i < m.n; ++i) s += std::fabs(m.at(i, m.n - 1 - i));
        return s;
    }
    double s = 0.0;
    for (double ev : symmetric_eigenvalues(m, tol)) s += std::fabs(ev);
    return s;
}

} // namespace subsim

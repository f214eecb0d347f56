#include "cmo/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmo::linalg {

double det(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix must be square");
    const auto n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return Eigen::PartialPivLU<Mat>(m).determinant();
}

std::vector<std::complex<double>> eigenvalues(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    if (!a.allFinite()) throw std::invalid_argument("eigenvalues: matrix must be finite");
    Eigen::EigenSolver<Mat> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: QR iteration did not converge");
    std::vector<std::complex<double>> ev(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) ev[i] = solver.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return ev;
}

double spectral_abscissa(const Mat& a) {
    const auto ev = eigenvalues(a);
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& z : ev) m = std::max(m, z.real());
    return m;
}

Mat solve_lyapunov(const Mat& a, const Mat& d) {
    const auto n = a.rows();
    if (a.cols() != n || d.rows() != n || d.cols() != n)
        throw std::invalid_argument("solve_lyapunov: dimension mismatch");
    if (spectral_abscissa(a) >= 0.0)
        throw std::runtime_error("solve_lyapunov: drift matrix is not stable, no unique steady state");

    // K = (I (x) A) + (A (x) I) acting on the column-major vec of V.
    Mat k = Mat::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) k.block(j * n, j * n, n, n) = a;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            k.block(i * n, j * n, n, n).diagonal().array() += a(i, j);

    Eigen::VectorXd rhs(n * n);
    for (Eigen::Index j = 0; j < n; ++j) rhs.segment(j * n, n) = -d.col(j);

    Eigen::PartialPivLU<Mat> lu(k);
    Eigen::VectorXd x = lu.solve(rhs);
    Mat v(n, n);
    for (Eigen::Index j = 0; j < n; ++j) v.col(j) = x.segment(j * n, n);
    v = 0.5 * (v + v.transpose()).eval();

    if (lyapunov_residual(a, d, v) > kLyapunovResidualTol)
        throw std::runtime_error("solve_lyapunov: residual bound violated (singular system?)");
    return v;
}

Mat solve_lyapunov_ode(const Mat& a, const Mat& d, double tol) {
    const auto n = a.rows();
    if (a.cols() != n || d.rows() != n || d.cols() != n)
        throw std::invalid_argument("solve_lyapunov_ode: dimension mismatch");
    const double d_norm = d.norm();
    if (d_norm == 0.0) return Mat::Zero(n, n);

    const double a_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
    if (a_inf == 0.0) throw std::runtime_error("solve_lyapunov_ode: zero drift matrix");
    const double h = 0.1 / a_inf;
    const double stop = tol * d_norm;

    auto rate = [&](const Mat& v) -> Mat { return a * v + v * a.transpose() + d; };

    Mat v = Mat::Zero(n, n);
    for (long step = 0; step < kLyapunovOdeMaxSteps; ++step) {
        const Mat k1 = rate(v);
        if (k1.norm() < stop) return 0.5 * (v + v.transpose()).eval();
        const Mat k2 = rate(v + 0.5 * h * k1);
        const Mat k3 = rate(v + 0.5 * h * k2);
        const Mat k4 = rate(v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    throw std::runtime_error("solve_lyapunov_ode: step cap exceeded before reaching tolerance");
}

double lyapunov_residual(const Mat& a, const Mat& d, const Mat& v) {
    const double num = (a * v + v * a.transpose() + d).norm();
    const double den = a.norm() * v.norm() + d.norm();
    return den > 0.0 ? num / den : num;
}

Mat symplectic_form(int n_modes) {
    Mat om = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        om(2 * k, 2 * k + 1) = 1.0;
        om(2 * k + 1, 2 * k) = -1.0;
    }
    return om;
}

std::vector<double> symplectic_eigenvalues(const Mat& v) {
    const auto n = v.rows();
    if (v.cols() != n || n % 2 != 0 || n == 0)
        throw std::invalid_argument("symplectic_eigenvalues: matrix must be 2m x 2m");
    const double asym = (v - v.transpose()).norm();
    if (asym > 1e-10 * std::max(1e-300, v.norm()))
        throw std::invalid_argument("symplectic_eigenvalues: matrix not symmetric");

    const int m = static_cast<int>(n) / 2;
    // |eig(i Omega V)| = |eig(Omega V)|; the spectrum comes in +-i nu pairs.
    const Mat om_v = symplectic_form(m) * v;
    Eigen::EigenSolver<Mat> solver(om_v, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symplectic_eigenvalues: eigenvalue iteration did not converge");
    std::vector<double> moduli(n);
    for (Eigen::Index i = 0; i < n; ++i) moduli[i] = std::abs(solver.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end());
    std::vector<double> out(m);
    for (int k = 0; k < m; ++k) out[k] = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
    return out;
}

}  // namespace cmo::linalg

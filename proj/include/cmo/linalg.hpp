#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace cmo::linalg {

using Mat = Eigen::MatrixXd;

// Relative residual bound enforced by solve_lyapunov:
// ||A V + V A^T + D||_F <= tol * (||A||_F ||V||_F + ||D||_F).
inline constexpr double kLyapunovResidualTol = 1e-9;

// Step cap for the time-integration solver.
inline constexpr long kLyapunovOdeMaxSteps = 10'000'000;

/// Determinant via LU with partial pivoting (closed form for n <= 2).
double det(const Mat& m);

/// Complete eigenvalue multiset of a real square matrix,
/// sorted by real part descending (ties by imaginary part descending).
std::vector<std::complex<double>> eigenvalues(const Mat& a);

/// Spectral abscissa: max over eigenvalues of the real part.
double spectral_abscissa(const Mat& a);

/// Unique symmetric solution V of A V + V A^T + D = 0 for stable A,
/// via the vectorized dense solve (A (x) I + I (x) A) vec(V) = -vec(D).
/// Throws std::runtime_error if A is not stable or the system is singular.
Mat solve_lyapunov(const Mat& a, const Mat& d);

/// Independent route to the same V: integrates Vdot = A V + V A^T + D from
/// V(0) = 0 with classical fixed-step RK4, h = 0.1 / ||A||_inf, until
/// ||Vdot||_F < tol * ||D||_F. Throws std::runtime_error on the step cap.
Mat solve_lyapunov_ode(const Mat& a, const Mat& d, double tol);

/// Relative Lyapunov residual of a candidate solution.
double lyapunov_residual(const Mat& a, const Mat& d, const Mat& v);

/// Symplectic spectrum of a 2m x 2m symmetric matrix: the m moduli of the
/// eigenvalues of i*Omega*V (each eigenvalue pair deduplicated), ascending.
/// Omega = direct sum of [[0,1],[-1,0]] blocks in the ordering of V.
/// Throws std::invalid_argument if V is not symmetric to 1e-10 relative.
std::vector<double> symplectic_eigenvalues(const Mat& v);

/// The symplectic form matrix used by symplectic_eigenvalues.
Mat symplectic_form(int n_modes);

}  // namespace cmo::linalg

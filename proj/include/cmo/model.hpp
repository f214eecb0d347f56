#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace cmo::model {

using Mat8 = Eigen::Matrix<double, 8, 8>;

// Quadrature ordering used throughout: [x1, y1, x2, y2, xa, ya, q, p].

/// Laboratory-frame inputs. All frequencies and rates are angular (rad/s),
/// decay rates are half widths, temperature in kelvin.
struct PhysicalParams {
    double omega_a = 0.0;   ///< cavity frequency
    double omega_b = 0.0;   ///< mechanical frequency
    double omega_1 = 0.0;   ///< Kittel-mode frequency, sphere 1
    double omega_2 = 0.0;   ///< Kittel-mode frequency, sphere 2
    double omega_0 = 0.0;   ///< drive frequency
    double kappa_a = 0.0;
    double kappa_1 = 0.0;
    double kappa_2 = 0.0;
    double gamma_b = 0.0;
    double g0 = 0.0;        ///< single-photon optomechanical coupling
    double g1 = 0.0;        ///< magnon-photon coupling, sphere 1
    double g2 = 0.0;        ///< magnon-photon coupling, sphere 2
    double drive_amplitude = 0.0;  ///< Omega
    double temperature = 0.0;      ///< bath temperature (K)

    void validate() const;  ///< throws std::invalid_argument on violated invariants
};

/// Inputs of the linearized model. Detunings are relative to the drive;
/// occupations are the mean thermal excitation numbers of the four baths.
struct EffectiveParams {
    double delta_a_tilde = 0.0;  ///< effective cavity detuning
    double delta_1 = 0.0;
    double delta_2 = 0.0;
    double G = 0.0;              ///< linearized optomechanical coupling (real, >= 0)
    double g1 = 0.0;
    double g2 = 0.0;
    double kappa_a = 0.0;
    double kappa_1 = 0.0;
    double kappa_2 = 0.0;
    double gamma_b = 0.0;
    double omega_b = 0.0;
    double nbar_a = 0.0;
    double nbar_1 = 0.0;
    double nbar_2 = 0.0;
    double nbar_b = 0.0;

    void validate() const;
};

struct SteadyState {
    double a_mean = 0.0;   ///< |<a>| (drive phase fixed so <a> is real)
    double q_mean = 0.0;
    double p_mean = 0.0;   ///< exactly zero in steady state
    std::complex<double> m1_mean;
    std::complex<double> m2_mean;
    double delta_a_tilde = 0.0;
    double G = 0.0;        ///< sqrt(2) g0 |<a>|
};

struct StabilityReport {
    bool stable = false;
    double max_real_part = 0.0;
    std::array<std::complex<double>, 8> eigenvalues{};  // sorted by real part, descending
};

/// Mean thermal excitation number 1/(exp(hbar w / kB T) - 1); 0 at T = 0.
/// Throws std::domain_error for omega <= 0.
double thermal_occupation(double omega, double temperature);

/// Steady-state mean values under the large-detuning closed forms, made
/// self-consistent in (<a>, <q>) by fixed-point iteration (relative
/// tolerance 1e-12, at most 1000 iterations).
SteadyState steady_state(const PhysicalParams& p);

/// Full physical -> effective translation (steady state + occupations).
EffectiveParams effective_params(const PhysicalParams& p);

/// Recompute the four occupations from the carrier frequency and bath
/// temperature: mode frequencies are omega_0 + detuning (omega_b for the
/// mechanical mode).
EffectiveParams with_occupations(EffectiveParams e, double omega_0, double temperature);

/// Drift matrix A of the quadrature dynamics. gamma_b_sign scales the
/// mechanical damping entry A(7,7) = gamma_b_sign * gamma_b; the physical
/// value is -1 (+1 gives an anti-damped, unstable mechanical mode and is
/// exposed for diagnostics only).
Mat8 build_drift(const EffectiveParams& e, double gamma_b_sign = -1.0);

/// Diffusion matrix D = diag[k1(2n1+1), k1(2n1+1), k2(2n2+1), k2(2n2+1),
/// ka(2na+1), ka(2na+1), 0, gb(2nb+1)].
Mat8 build_diffusion(const EffectiveParams& e);

/// Stability verdict: stable iff max Re(eig A) < -1e-12 * ||A||_inf.
StabilityReport assess_stability(const Mat8& a);

}  // namespace cmo::model

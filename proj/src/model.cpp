#include "cmo/model.hpp"

#include "cmo/constants.hpp"
#include "cmo/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmo::model {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void PhysicalParams::validate() const {
    require(omega_b > 0.0, "PhysicalParams: omega_b must be > 0");
    require(omega_a >= 0.0 && omega_1 >= 0.0 && omega_2 >= 0.0 && omega_0 >= 0.0,
            "PhysicalParams: frequencies must be >= 0");
    require(kappa_a >= 0.0 && kappa_1 >= 0.0 && kappa_2 >= 0.0 && gamma_b >= 0.0,
            "PhysicalParams: decay rates must be >= 0");
    require(g0 >= 0.0 && g1 >= 0.0 && g2 >= 0.0, "PhysicalParams: couplings must be >= 0");
    require(drive_amplitude >= 0.0, "PhysicalParams: drive amplitude must be >= 0");
    require(temperature >= 0.0, "PhysicalParams: temperature must be >= 0");
}

void EffectiveParams::validate() const {
    require(omega_b > 0.0, "EffectiveParams: omega_b must be > 0");
    require(G >= 0.0, "EffectiveParams: G must be >= 0");
    require(kappa_a > 0.0 && kappa_1 > 0.0 && kappa_2 > 0.0 && gamma_b > 0.0,
            "EffectiveParams: decay rates must be > 0");
    require(nbar_a >= 0.0 && nbar_1 >= 0.0 && nbar_2 >= 0.0 && nbar_b >= 0.0,
            "EffectiveParams: occupations must be >= 0");
}

double thermal_occupation(double omega, double temperature) {
    if (omega <= 0.0) throw std::domain_error("thermal_occupation: omega must be > 0");
    if (temperature < 0.0) throw std::domain_error("thermal_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = kHbar * omega / (kBoltzmann * temperature);
    if (x > 700.0) return 0.0;  // exp would overflow; occupation underflows anyway
    return 1.0 / std::expm1(x);
}

SteadyState steady_state(const PhysicalParams& p) {
    p.validate();
    const double delta_a = p.omega_a - p.omega_0;
    const double delta_1 = p.omega_1 - p.omega_0;
    const double delta_2 = p.omega_2 - p.omega_0;

    if (p.g1 != 0.0 && delta_1 == 0.0)
        throw std::domain_error("steady_state: delta_1 = 0 with g1 != 0 (singular detuning)");
    if (p.g2 != 0.0 && delta_2 == 0.0)
        throw std::domain_error("steady_state: delta_2 = 0 with g2 != 0 (singular detuning)");

    SteadyState s;
    s.delta_a_tilde = delta_a;
    if (p.drive_amplitude == 0.0) return s;  // undriven: all means vanish

    // Magnon pulling of the cavity response.
    double sigma = 0.0;
    if (p.g1 != 0.0) sigma += p.g1 * p.g1 / delta_1;
    if (p.g2 != 0.0) sigma += p.g2 * p.g2 / delta_2;

    // Fixed point of a = Omega / |sigma - delta_tilde|, q = -g0 a^2 / wb,
    // delta_tilde = delta_a + g0 q.
    double a = 0.0;
    double q = 0.0;
    double dt = delta_a;
    constexpr int kMaxIter = 1000;
    constexpr double kRelTol = 1e-12;
    bool converged = false;
    for (int it = 0; it < kMaxIter; ++it) {
        const double denom = sigma - dt;
        if (denom == 0.0)
            throw std::domain_error("steady_state: vanishing effective detuning denominator");
        const double a_next = p.drive_amplitude / std::abs(denom);
        const double q_next = -p.g0 * a_next * a_next / p.omega_b;
        const double da = std::abs(a_next - a) / std::max(std::abs(a_next), 1.0);
        const double dq = std::abs(q_next - q) / std::max(std::abs(q_next), 1.0);
        a = a_next;
        q = q_next;
        dt = delta_a + p.g0 * q;
        if (da <= kRelTol && dq <= kRelTol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("steady_state: fixed point did not converge in 1000 iterations");

    s.a_mean = a;
    s.q_mean = q;
    s.delta_a_tilde = dt;
    s.G = std::sqrt(2.0) * p.g0 * a;
    if (p.g1 != 0.0) s.m1_mean = {-p.g1 * a / delta_1, 0.0};
    if (p.g2 != 0.0) s.m2_mean = {-p.g2 * a / delta_2, 0.0};
    return s;
}

EffectiveParams effective_params(const PhysicalParams& p) {
    const SteadyState s = steady_state(p);
    EffectiveParams e;
    e.delta_a_tilde = s.delta_a_tilde;
    e.delta_1 = p.omega_1 - p.omega_0;
    e.delta_2 = p.omega_2 - p.omega_0;
    e.G = s.G;
    e.g1 = p.g1;
    e.g2 = p.g2;
    e.kappa_a = p.kappa_a;
    e.kappa_1 = p.kappa_1;
    e.kappa_2 = p.kappa_2;
    e.gamma_b = p.gamma_b;
    e.omega_b = p.omega_b;
    e.nbar_a = thermal_occupation(p.omega_a, p.temperature);
    e.nbar_1 = thermal_occupation(p.omega_1, p.temperature);
    e.nbar_2 = thermal_occupation(p.omega_2, p.temperature);
    e.nbar_b = thermal_occupation(p.omega_b, p.temperature);
    return e;
}

EffectiveParams with_occupations(EffectiveParams e, double omega_0, double temperature) {
    const double wa = omega_0 + e.delta_a_tilde;
    const double w1 = omega_0 + e.delta_1;
    const double w2 = omega_0 + e.delta_2;
    if (wa <= 0.0 || w1 <= 0.0 || w2 <= 0.0)
        throw std::invalid_argument("with_occupations: mode frequency omega_0 + detuning must be > 0");
    e.nbar_a = thermal_occupation(wa, temperature);
    e.nbar_1 = thermal_occupation(w1, temperature);
    e.nbar_2 = thermal_occupation(w2, temperature);
    e.nbar_b = thermal_occupation(e.omega_b, temperature);
    return e;
}

Mat8 build_drift(const EffectiveParams& e, double gamma_b_sign) {
    e.validate();
    Mat8 a = Mat8::Zero();

    a(0, 0) = -e.kappa_1;
    a(0, 1) = e.delta_1;
    a(0, 5) = e.g1;
    a(1, 0) = -e.delta_1;
    a(1, 1) = -e.kappa_1;
    a(1, 4) = -e.g1;

    a(2, 2) = -e.kappa_2;
    a(2, 3) = e.delta_2;
    a(2, 5) = e.g2;
    a(3, 2) = -e.delta_2;
    a(3, 3) = -e.kappa_2;
    a(3, 4) = -e.g2;

    a(4, 1) = e.g1;
    a(4, 3) = e.g2;
    a(4, 4) = -e.kappa_a;
    a(4, 5) = e.delta_a_tilde;
    a(5, 0) = -e.g1;
    a(5, 2) = -e.g2;
    a(5, 4) = -e.delta_a_tilde;
    a(5, 5) = -e.kappa_a;
    a(5, 6) = -e.G;

    a(6, 7) = e.omega_b;
    a(7, 4) = -e.G;
    a(7, 6) = -e.omega_b;
    a(7, 7) = gamma_b_sign * e.gamma_b;

    return a;
}

Mat8 build_diffusion(const EffectiveParams& e) {
    e.validate();
    Mat8 d = Mat8::Zero();
    const double d1 = e.kappa_1 * (2.0 * e.nbar_1 + 1.0);
    const double d2 = e.kappa_2 * (2.0 * e.nbar_2 + 1.0);
    const double da = e.kappa_a * (2.0 * e.nbar_a + 1.0);
    d(0, 0) = d1;
    d(1, 1) = d1;
    d(2, 2) = d2;
    d(3, 3) = d2;
    d(4, 4) = da;
    d(5, 5) = da;
    d(6, 6) = 0.0;  // position quadrature carries no direct noise
    d(7, 7) = e.gamma_b * (2.0 * e.nbar_b + 1.0);
    return d;
}

StabilityReport assess_stability(const Mat8& a) {
    if (!a.allFinite()) throw std::invalid_argument("assess_stability: matrix must be finite");
    const auto ev = linalg::eigenvalues(a);
    StabilityReport r;
    for (std::size_t i = 0; i < 8; ++i) r.eigenvalues[i] = ev[i];
    r.max_real_part = ev.front().real();
    const double norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
    r.stable = r.max_real_part < -1e-12 * norm_inf;
    return r;
}

}  // namespace cmo::model

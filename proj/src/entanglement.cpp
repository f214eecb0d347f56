#include "cmo/entanglement.hpp"

#include "cmo/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cmo::ent {

namespace {

void check_physical(const Mat& v, const char* who) {
    const auto nus = linalg::symplectic_eigenvalues(v);
    if (nus.front() < 0.5 - kPhysicalityErrorTol)
        throw std::domain_error(std::string(who) + ": covariance matrix is unphysical "
                                "(min symplectic eigenvalue below vacuum)");
}

Mat two_mode_block(const Mat& v, int i, int j) {
    Mat out(4, 4);
    const std::array<int, 4> idx = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = v(idx[r], idx[c]);
    return out;
}

}  // namespace

std::pair<int, int> quadrature_indices(Mode m) {
    switch (m) {
        case Mode::M1: return {0, 1};
        case Mode::M2: return {2, 3};
        case Mode::Cav: return {4, 5};
        case Mode::Mech: return {6, 7};
    }
    throw std::invalid_argument("quadrature_indices: bad mode");
}

Mat reduce(const Mat& v8, std::span<const Mode> modes) {
    if (v8.rows() != 8 || v8.cols() != 8)
        throw std::invalid_argument("reduce: expected an 8x8 covariance matrix");
    if (modes.empty() || modes.size() > 4)
        throw std::invalid_argument("reduce: need between 1 and 4 modes");
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i] == modes[j]) throw std::invalid_argument("reduce: duplicate mode");

    std::vector<int> idx;
    idx.reserve(2 * modes.size());
    for (Mode m : modes) {
        const auto [x, y] = quadrature_indices(m);
        idx.push_back(x);
        idx.push_back(y);
    }
    Mat out(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = v8(idx[r], idx[c]);
    return out;
}

Mat partial_transpose(Mat v, std::span<const int> transposed_positions) {
    const auto n = v.rows();
    if (v.cols() != n || n % 2 != 0)
        throw std::invalid_argument("partial_transpose: matrix must be 2m x 2m");
    for (int p : transposed_positions) {
        if (p < 0 || 2 * p + 1 >= n)
            throw std::invalid_argument("partial_transpose: mode position out of range");
        const int row = 2 * p + 1;  // momentum-like quadrature
        v.row(row) *= -1.0;
        v.col(row) *= -1.0;
    }
    return v;
}

double ln_bipartite(const Mat& v4) {
    if (v4.rows() != 4 || v4.cols() != 4)
        throw std::invalid_argument("ln_bipartite: expected a 4x4 covariance matrix");
    check_physical(v4, "ln_bipartite");

    const Mat a = v4.block(0, 0, 2, 2);
    const Mat b = v4.block(2, 2, 2, 2);
    const Mat c = v4.block(0, 2, 2, 2);
    const double sigma = linalg::det(a) + linalg::det(b) - 2.0 * linalg::det(c);
    double disc = sigma * sigma - 4.0 * linalg::det(v4);
    if (disc < 0.0) {
        if (disc >= -kDiscriminantClampTol * sigma * sigma)
            disc = 0.0;  // rounding
        else
            throw std::domain_error("ln_bipartite: negative discriminant beyond rounding");
    }
    const double eta_sq = 0.5 * (sigma - std::sqrt(disc));
    if (eta_sq <= 0.0)
        throw std::domain_error("ln_bipartite: nonpositive symplectic eigenvalue");
    const double eta_minus = std::sqrt(eta_sq);
    return std::max(0.0, -std::log(2.0 * eta_minus));
}

double ln_one_vs_two(const Mat& v6, int focus) {
    if (v6.rows() != 6 || v6.cols() != 6)
        throw std::invalid_argument("ln_one_vs_two: expected a 6x6 covariance matrix");
    if (focus < 0 || focus > 2) throw std::invalid_argument("ln_one_vs_two: focus out of range");
    check_physical(v6, "ln_one_vs_two");

    const std::array<int, 1> pos = {focus};
    const auto nus = linalg::symplectic_eigenvalues(partial_transpose(v6, pos));
    const double nu_minus = nus.front();
    if (nu_minus <= 0.0)
        throw std::domain_error("ln_one_vs_two: nonpositive symplectic eigenvalue");
    return std::max(0.0, -std::log(2.0 * nu_minus));
}

double residual_contangle(const Mat& v6, int focus) {
    const double c_one_rest = ln_one_vs_two(v6, focus);
    const std::array<int, 2> others =
        focus == 0 ? std::array<int, 2>{1, 2} : focus == 1 ? std::array<int, 2>{0, 2}
                                                           : std::array<int, 2>{0, 1};
    const double c_a = ln_bipartite(two_mode_block(v6, focus, others[0]));
    const double c_b = ln_bipartite(two_mode_block(v6, focus, others[1]));
    return c_one_rest * c_one_rest - c_a * c_a - c_b * c_b;
}

double min_residual_contangle(const Mat& v6) {
    double r = residual_contangle(v6, 0);
    r = std::min(r, residual_contangle(v6, 1));
    r = std::min(r, residual_contangle(v6, 2));
    if (r < 0.0 && r >= -kResidualClampTol) r = 0.0;
    return r;
}

double EntanglementReport::pairwise(Mode x, Mode y) const {
    if (x == y) throw std::invalid_argument("pairwise: need two distinct modes");
    auto match = [&](Mode a, Mode b) { return (x == a && y == b) || (x == b && y == a); };
    if (match(Mode::Cav, Mode::Mech)) return en_ab;
    if (match(Mode::Cav, Mode::M1)) return en_am1;
    if (match(Mode::Cav, Mode::M2)) return en_am2;
    if (match(Mode::Mech, Mode::M1)) return en_bm1;
    if (match(Mode::Mech, Mode::M2)) return en_bm2;
    return en_m1m2;
}

double EntanglementReport::tripartite_excluding(Mode absent) const {
    switch (absent) {
        case Mode::M2: return r_abm1;
        case Mode::M1: return r_abm2;
        case Mode::Mech: return r_am1m2;
        case Mode::Cav: return r_bm1m2;
    }
    throw std::invalid_argument("tripartite_excluding: bad mode");
}

EntanglementReport entanglement_report(const Mat& v8, bool stable) {
    if (v8.rows() != 8 || v8.cols() != 8)
        throw std::invalid_argument("entanglement_report: expected an 8x8 covariance matrix");
    EntanglementReport rep;
    rep.stable = stable;
    if (!stable) return rep;

    auto pair_value = [&](Mode x, Mode y) -> double {
        const std::array<Mode, 2> ms = {x, y};
        try {
            return ln_bipartite(reduce(v8, ms));
        } catch (const std::domain_error&) {
            return EntanglementReport::nan();  // flagged: physicality violation
        }
    };
    auto triple_value = [&](Mode x, Mode y, Mode z) -> double {
        const std::array<Mode, 3> ms = {x, y, z};
        try {
            const double r = min_residual_contangle(reduce(v8, ms));
            return r < 0.0 ? EntanglementReport::nan() : r;  // beyond-clamp monogamy violation
        } catch (const std::domain_error&) {
            return EntanglementReport::nan();
        }
    };

    rep.en_ab = pair_value(Mode::Cav, Mode::Mech);
    rep.en_am1 = pair_value(Mode::Cav, Mode::M1);
    rep.en_am2 = pair_value(Mode::Cav, Mode::M2);
    rep.en_bm1 = pair_value(Mode::Mech, Mode::M1);
    rep.en_bm2 = pair_value(Mode::Mech, Mode::M2);
    rep.en_m1m2 = pair_value(Mode::M1, Mode::M2);
    rep.r_abm1 = triple_value(Mode::Cav, Mode::Mech, Mode::M1);
    rep.r_abm2 = triple_value(Mode::Cav, Mode::Mech, Mode::M2);
    rep.r_am1m2 = triple_value(Mode::Cav, Mode::M1, Mode::M2);
    rep.r_bm1m2 = triple_value(Mode::Mech, Mode::M1, Mode::M2);
    return rep;
}

}  // namespace cmo::ent

#pragma once

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <utility>

namespace cmo::ent {

using Mat = Eigen::MatrixXd;

/// The four bosonic modes, in drift order [x1,y1,x2,y2,xa,ya,q,p].
enum class Mode { M1, M2, Cav, Mech };

/// Quadrature index pair of a mode within the 8x8 covariance matrix.
std::pair<int, int> quadrature_indices(Mode m);

// Physicality thresholds on the minimum symplectic eigenvalue (vacuum = 1/2):
// inputs below the error threshold throw; the report layer flags instead.
inline constexpr double kPhysicalityErrorTol = 1e-6;
inline constexpr double kPhysicalityWarnTol = 1e-8;

// Rounding clamps.
inline constexpr double kDiscriminantClampTol = 1e-12;  // relative, on Sigma^2
inline constexpr double kResidualClampTol = 1e-9;       // absolute, on contangle residuals

/// Submatrix of the covariance matrix on the listed modes, in list order.
/// Throws std::invalid_argument on duplicate modes.
Mat reduce(const Mat& v8, std::span<const Mode> modes);

/// Partial transpose in phase space: flips the sign of the momentum-like
/// quadrature of each listed mode position (positions index mode slots
/// within v, not global modes).
Mat partial_transpose(Mat v, std::span<const int> transposed_positions);

/// Bipartite logarithmic negativity of a two-mode covariance matrix via the
/// closed form eta- = 2^{-1/2} sqrt(Sigma - sqrt(Sigma^2 - 4 det V)),
/// Sigma = det A + det B - 2 det C. Returns max(0, -ln 2 eta-).
double ln_bipartite(const Mat& v4);

/// One-vs-two-mode logarithmic negativity of a three-mode covariance matrix:
/// max(0, -ln 2 nu-) with nu- the minimum symplectic eigenvalue after
/// partially transposing the focus mode.
double ln_one_vs_two(const Mat& v6, int focus);

/// Contangle monogamy residual for one focus choice:
/// E(focus|rest)^2 - E(focus,other1)^2 - E(focus,other2)^2.
double residual_contangle(const Mat& v6, int focus);

/// Minimum of residual_contangle over the three focus choices; results
/// within -1e-9 of zero are clamped to 0.
double min_residual_contangle(const Mat& v6);

/// All six pairwise LN values and four triple residual contangles of the
/// steady state. Entries are NaN when the point is unstable or when a
/// physicality violation beyond tolerance makes a value meaningless.
struct EntanglementReport {
    bool stable = false;
    double en_ab = nan();
    double en_am1 = nan();
    double en_am2 = nan();
    double en_bm1 = nan();
    double en_bm2 = nan();
    double en_m1m2 = nan();
    double r_abm1 = nan();
    double r_abm2 = nan();
    double r_am1m2 = nan();
    double r_bm1m2 = nan();

    /// E_N of an unordered mode pair.
    double pairwise(Mode x, Mode y) const;
    /// Minimal residual contangle of the unordered triple excluding `absent`.
    double tripartite_excluding(Mode absent) const;

    static constexpr double nan() { return std::numeric_limits<double>::quiet_NaN(); }
};

EntanglementReport entanglement_report(const Mat& v8, bool stable);

}  // namespace cmo::ent

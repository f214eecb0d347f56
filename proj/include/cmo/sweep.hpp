#pragma once

#include "cmo/entanglement.hpp"
#include "cmo/model.hpp"

#include <string>
#include <vector>

namespace cmo::sweep {

/// Sweepable parameters. The *M variants set both spheres at once.
enum class AxisParam {
    DeltaATilde,
    Delta1,
    Delta2,
    DeltaM,   // delta_1 = delta_2
    G,
    Gm,       // g1 = g2
    G1,
    G2,
    KappaM,   // kappa_1 = kappa_2
    Temperature,
};

/// Reference quantity for dimensionless axis ranges, resolved against the
/// base configuration once per sweep.
enum class NormRef { None, OmegaB, KappaA, G };

struct Axis {
    AxisParam param = AxisParam::DeltaATilde;
    double start = 0.0;  ///< in units of the normalization reference (raw if None)
    double stop = 0.0;
    int count = 2;
    NormRef norm = NormRef::None;

    void validate() const;
};

/// Base configuration of a sweep: the effective parameters plus the context
/// needed to re-derive thermal occupations when detunings or the bath
/// temperature change along an axis.
struct Base {
    model::EffectiveParams params;
    double omega_0 = 0.0;      ///< carrier frequency (rad/s) for occupation lookup
    double temperature = 0.0;  ///< bath temperature (K)
    bool pin_occupations = false;  ///< keep params.nbar_* fixed during sweeps
    double gamma_b_sign = -1.0;
};

struct Record {
    double axis1_norm = nan();
    double axis1_raw = nan();
    double axis2_norm = nan();
    double axis2_raw = nan();
    bool stable = false;
    bool failed = false;  ///< solver failure at this point (value fields are NaN)
    double max_real_part = nan();
    ent::EntanglementReport report;

    static constexpr double nan() { return std::numeric_limits<double>::quiet_NaN(); }
};

struct Grid {
    int count1 = 0;
    int count2 = 0;
    std::vector<Record> records;  // row-major over (axis1, axis2)

    const Record& at(int i, int j) const { return records[static_cast<std::size_t>(i) * count2 + j]; }
};

/// Numeric value of a normalization reference in the base configuration.
double resolve_norm(const Base& base, NormRef ref);

/// Base with one parameter set to a raw (natural-unit) value; occupations are
/// re-derived unless pinned.
Base apply(Base base, AxisParam param, double raw_value);

/// Occupation-resolved effective parameters of a base point.
model::EffectiveParams resolved_params(const Base& base);

/// Full pipeline at one point: drift, diffusion, stability, Lyapunov,
/// entanglement report. Never throws for solver failures; they are flagged.
Record evaluate_point(const Base& base);

/// `axis.count` records in ascending axis order. Deterministic; the result is
/// independent of the number of workers (0 = hardware concurrency).
std::vector<Record> sweep1d(const Base& base, const Axis& axis, unsigned workers = 0);

/// Row-major count1 x count2 grid over two distinct axis parameters.
Grid sweep2d(const Base& base, const Axis& axis1, const Axis& axis2, unsigned workers = 0);

const char* axis_param_name(AxisParam p);
const char* norm_ref_name(NormRef r);

}  // namespace cmo::sweep

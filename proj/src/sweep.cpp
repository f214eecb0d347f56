#include "cmo/sweep.hpp"

#include "cmo/linalg.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace cmo::sweep {

void Axis::validate() const {
    if (count < 2) throw std::invalid_argument("Axis: count must be >= 2");
    if (start == stop) throw std::invalid_argument("Axis: start must differ from stop");
    if (param == AxisParam::Temperature && norm != NormRef::None)
        throw std::invalid_argument("Axis: temperature axis takes no normalization");
}

double resolve_norm(const Base& base, NormRef ref) {
    double v = 1.0;
    switch (ref) {
        case NormRef::None: return 1.0;
        case NormRef::OmegaB: v = base.params.omega_b; break;
        case NormRef::KappaA: v = base.params.kappa_a; break;
        case NormRef::G: v = base.params.G; break;
    }
    if (v <= 0.0) throw std::invalid_argument("Axis: normalization reference must be > 0");
    return v;
}

Base apply(Base base, AxisParam param, double raw_value) {
    auto& p = base.params;
    switch (param) {
        case AxisParam::DeltaATilde: p.delta_a_tilde = raw_value; break;
        case AxisParam::Delta1: p.delta_1 = raw_value; break;
        case AxisParam::Delta2: p.delta_2 = raw_value; break;
        case AxisParam::DeltaM: p.delta_1 = p.delta_2 = raw_value; break;
        case AxisParam::G: p.G = raw_value; break;
        case AxisParam::Gm: p.g1 = p.g2 = raw_value; break;
        case AxisParam::G1: p.g1 = raw_value; break;
        case AxisParam::G2: p.g2 = raw_value; break;
        case AxisParam::KappaM: p.kappa_1 = p.kappa_2 = raw_value; break;
        case AxisParam::Temperature: base.temperature = raw_value; break;
    }
    return base;
}

model::EffectiveParams resolved_params(const Base& base) {
    if (base.pin_occupations) return base.params;
    return model::with_occupations(base.params, base.omega_0, base.temperature);
}

Record evaluate_point(const Base& base) {
    Record rec;
    try {
        const auto params = resolved_params(base);
        const auto a = model::build_drift(params, base.gamma_b_sign);
        const auto stab = model::assess_stability(a);
        rec.stable = stab.stable;
        rec.max_real_part = stab.max_real_part;
        if (!stab.stable) {
            rec.report = ent::entanglement_report(ent::Mat::Zero(8, 8), false);
            return rec;
        }
        const auto d = model::build_diffusion(params);
        const ent::Mat v = linalg::solve_lyapunov(a, d);
        rec.report = ent::entanglement_report(v, true);
    } catch (const std::exception&) {
        rec.failed = true;
        rec.stable = false;
    }
    return rec;
}

namespace {

std::vector<double> axis_values(const Axis& axis) {
    std::vector<double> v(static_cast<std::size_t>(axis.count));
    for (int i = 0; i < axis.count; ++i)
        v[static_cast<std::size_t>(i)] =
            axis.start + static_cast<double>(i) * (axis.stop - axis.start) / (axis.count - 1);
    return v;
}

void run_slots(std::size_t total, unsigned workers, const std::function<void(std::size_t)>& work) {
    unsigned n = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    n = static_cast<unsigned>(std::min<std::size_t>(n, total));
    if (n <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<Record> sweep1d(const Base& base, const Axis& axis, unsigned workers) {
    axis.validate();
    const double ref = resolve_norm(base, axis.norm);
    const auto values = axis_values(axis);

    std::vector<Record> out(values.size());
    run_slots(values.size(), workers, [&](std::size_t i) {
        const double raw = values[i] * ref;
        Record rec = evaluate_point(apply(base, axis.param, raw));
        rec.axis1_norm = values[i];
        rec.axis1_raw = raw;
        out[i] = rec;
    });
    return out;
}

Grid sweep2d(const Base& base, const Axis& axis1, const Axis& axis2, unsigned workers) {
    axis1.validate();
    axis2.validate();
    if (axis1.param == axis2.param)
        throw std::invalid_argument("sweep2d: the two axes must sweep distinct parameters");
    const double ref1 = resolve_norm(base, axis1.norm);
    const double ref2 = resolve_norm(base, axis2.norm);
    const auto v1 = axis_values(axis1);
    const auto v2 = axis_values(axis2);

    Grid grid;
    grid.count1 = axis1.count;
    grid.count2 = axis2.count;
    grid.records.resize(v1.size() * v2.size());
    run_slots(grid.records.size(), workers, [&](std::size_t k) {
        const std::size_t i = k / v2.size();
        const std::size_t j = k % v2.size();
        const double raw1 = v1[i] * ref1;
        const double raw2 = v2[j] * ref2;
        Record rec = evaluate_point(apply(apply(base, axis1.param, raw1), axis2.param, raw2));
        rec.axis1_norm = v1[i];
        rec.axis1_raw = raw1;
        rec.axis2_norm = v2[j];
        rec.axis2_raw = raw2;
        grid.records[k] = rec;
    });
    return grid;
}

const char* axis_param_name(AxisParam p) {
    switch (p) {
        case AxisParam::DeltaATilde: return "delta_a_tilde";
        case AxisParam::Delta1: return "delta_1";
        case AxisParam::Delta2: return "delta_2";
        case AxisParam::DeltaM: return "delta_m";
        case AxisParam::G: return "G";
        case AxisParam::Gm: return "g_m";
        case AxisParam::G1: return "g_1";
        case AxisParam::G2: return "g_2";
        case AxisParam::KappaM: return "kappa_m";
        case AxisParam::Temperature: return "temperature";
    }
    return "?";
}

const char* norm_ref_name(NormRef r) {
    switch (r) {
        case NormRef::None: return "none";
        case NormRef::OmegaB: return "omega_b";
        case NormRef::KappaA: return "kappa_a";
        case NormRef::G: return "G";
    }
    return "?";
}

}  // namespace cmo::sweep

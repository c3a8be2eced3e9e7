#include "fixpoint/schemes.hpp"

#include <algorithm>
#include <cmath>

namespace fixpoint {

namespace {

void check_weight_range(double c, const char* family) {
    if (!(c >= 0.0 && c < 1.0)) {
        throw ParamError(std::string("Schedule::") + family + ": c must lie in [0, 1)");
    }
}

}  // namespace

Schedule Schedule::constant(double c) {
    check_weight_range(c, "constant");
    return Schedule(Family::constant, c, 1.0, {});
}

Schedule Schedule::harmonic(double c) {
    check_weight_range(c, "harmonic");
    return Schedule(Family::harmonic, c, 1.0, {});
}

Schedule Schedule::power(double c, double p) {
    check_weight_range(c, "power");
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ParamError("Schedule::power: exponent must be finite and >= 0");
    }
    return Schedule(Family::power, c, p, {});
}

Schedule Schedule::table(std::vector<double> values) {
    if (values.empty()) throw ParamError("Schedule::table: empty value list");
    for (double v : values) check_weight_range(v, "table");
    return Schedule(Family::table, 0.0, 1.0, std::move(values));
}

double Schedule::value(std::int64_t n) const {
    switch (family_) {
        case Family::constant: return c_;
        case Family::harmonic: return c_ / static_cast<double>(n + 1);
        case Family::power: return c_ / std::pow(static_cast<double>(n + 1), p_);
        case Family::table: {
            const auto idx = std::min<std::int64_t>(n, static_cast<std::int64_t>(values_.size()) - 1);
            return values_[static_cast<std::size_t>(idx)];
        }
    }
    return 0.0;
}

bool Schedule::sum_diverges() const {
    switch (family_) {
        case Family::constant: return c_ > 0.0;
        case Family::harmonic: return c_ > 0.0;
        case Family::power: return c_ > 0.0 && p_ <= 1.0;
        case Family::table: return values_.back() > 0.0;
    }
    return false;
}

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::new_multistep: return "new_multistep";
        case SchemeKind::rs_multistep: return "rs_multistep";
        case SchemeKind::s_iteration: return "s_iteration";
        case SchemeKind::thianwan: return "thianwan";
        case SchemeKind::sp: return "sp";
    }
    return "new_multistep";
}

SchemeKind scheme_from_name(const std::string& name) {
    if (name == "new_multistep") return SchemeKind::new_multistep;
    if (name == "rs_multistep") return SchemeKind::rs_multistep;
    if (name == "s_iteration") return SchemeKind::s_iteration;
    if (name == "thianwan") return SchemeKind::thianwan;
    if (name == "sp") return SchemeKind::sp;
    throw ParamError("unknown scheme '" + name + "'");
}

SchemeConfig SchemeConfig::new_multistep(int k, Schedule alpha, std::vector<Schedule> betas) {
    if (k < 2) throw ParamError("new_multistep: order k must be >= 2");
    if (betas.size() != static_cast<std::size_t>(k - 1)) {
        throw ParamError("new_multistep: exactly k-1 beta schedules required");
    }
    return SchemeConfig(SchemeKind::new_multistep, k, std::move(alpha), std::move(betas),
                        std::nullopt);
}

SchemeConfig SchemeConfig::rs_multistep(int k, Schedule alpha, std::vector<Schedule> betas) {
    if (k < 2) throw ParamError("rs_multistep: order k must be >= 2");
    if (betas.size() != static_cast<std::size_t>(k - 1)) {
        throw ParamError("rs_multistep: exactly k-1 beta schedules required");
    }
    return SchemeConfig(SchemeKind::rs_multistep, k, std::move(alpha), std::move(betas),
                        std::nullopt);
}

SchemeConfig SchemeConfig::s_iteration(Schedule alpha, Schedule beta) {
    return SchemeConfig(SchemeKind::s_iteration, 0, std::move(alpha), {std::move(beta)},
                        std::nullopt);
}

SchemeConfig SchemeConfig::thianwan(Schedule alpha, Schedule beta) {
    return SchemeConfig(SchemeKind::thianwan, 0, std::move(alpha), {std::move(beta)},
                        std::nullopt);
}

SchemeConfig SchemeConfig::sp(Schedule alpha, Schedule beta, Schedule gamma) {
    return SchemeConfig(SchemeKind::sp, 0, std::move(alpha), {std::move(beta)}, std::move(gamma));
}

namespace {

double weight_at(const Schedule& s, std::int64_t n, const char* role) {
    const double w = s.value(n);
    if (!(w >= 0.0 && w < 1.0)) {
        throw DomainError(std::string("schedule ") + role + " emitted " + std::to_string(w) +
                          " outside [0, 1) at n=" + std::to_string(n));
    }
    return w;
}

// (1-w)*u + w*v, computed in exactly this form per coordinate.
Point convex_combine(const Point& u, const Point& v, double w) {
    Point out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = (1.0 - w) * u[i] + w * v[i];
    }
    return out;
}

void require_kind(const SchemeConfig& cfg, SchemeKind kind, const char* fn) {
    if (cfg.kind() != kind) {
        throw ParamError(std::string(fn) + ": config is for scheme " + scheme_name(cfg.kind()));
    }
}

}  // namespace

StepState step_new_multistep(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                             const SchemeConfig& cfg) {
    require_kind(cfg, SchemeKind::new_multistep, "step_new_multistep");
    const int k = cfg.k();
    std::vector<Point> y(static_cast<std::size_t>(k));  // y[i] holds y^i, slot 0 unused

    // Innermost stage first: y^{k-1} from x_n, then chain y^i from y^{i+1}.
    {
        const double b = weight_at(cfg.betas()[static_cast<std::size_t>(k - 2)], n, "beta");
        y[static_cast<std::size_t>(k - 1)] = convex_combine(x_n, evaluate(T, x_n), b);
    }
    for (int i = k - 2; i >= 1; --i) {
        const double b = weight_at(cfg.betas()[static_cast<std::size_t>(i - 1)], n, "beta");
        const Point& prev = y[static_cast<std::size_t>(i + 1)];
        y[static_cast<std::size_t>(i)] = convex_combine(prev, evaluate(T, prev), b);
    }
    const double a = weight_at(cfg.alpha(), n, "alpha");
    StepState out;
    out.x = convex_combine(y[1], evaluate(T, y[1]), a);
    out.n = n;
    out.auxiliaries.assign(y.begin() + 1, y.end());
    return out;
}

StepState step_rs_multistep(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                            const SchemeConfig& cfg) {
    require_kind(cfg, SchemeKind::rs_multistep, "step_rs_multistep");
    const int k = cfg.k();
    std::vector<Point> y(static_cast<std::size_t>(k));

    {
        const double b = weight_at(cfg.betas()[static_cast<std::size_t>(k - 2)], n, "beta");
        y[static_cast<std::size_t>(k - 1)] = convex_combine(x_n, evaluate(T, x_n), b);
    }
    for (int i = k - 2; i >= 1; --i) {
        const double b = weight_at(cfg.betas()[static_cast<std::size_t>(i - 1)], n, "beta");
        const Point& prev = y[static_cast<std::size_t>(i + 1)];
        y[static_cast<std::size_t>(i)] = convex_combine(x_n, evaluate(T, prev), b);
    }
    const double a = weight_at(cfg.alpha(), n, "alpha");
    StepState out;
    out.x = convex_combine(x_n, evaluate(T, y[1]), a);
    out.n = n;
    out.auxiliaries.assign(y.begin() + 1, y.end());
    return out;
}

StepState step_s_iteration(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                           const SchemeConfig& cfg) {
    require_kind(cfg, SchemeKind::s_iteration, "step_s_iteration");
    const double b = weight_at(cfg.betas()[0], n, "beta");
    const double a = weight_at(cfg.alpha(), n, "alpha");
    const Point tx = evaluate(T, x_n);
    const Point y = convex_combine(x_n, tx, b);
    StepState out;
    // Both terms of the outer update are transformed points.
    out.x = convex_combine(tx, evaluate(T, y), a);
    out.n = n;
    out.auxiliaries = {y};
    return out;
}

StepState step_thianwan(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                        const SchemeConfig& cfg) {
    require_kind(cfg, SchemeKind::thianwan, "step_thianwan");
    const double b = weight_at(cfg.betas()[0], n, "beta");
    const double a = weight_at(cfg.alpha(), n, "alpha");
    const Point y = convex_combine(x_n, evaluate(T, x_n), b);
    StepState out;
    out.x = convex_combine(y, evaluate(T, y), a);
    out.n = n;
    out.auxiliaries = {y};
    return out;
}

StepState step_sp(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                  const SchemeConfig& cfg) {
    require_kind(cfg, SchemeKind::sp, "step_sp");
    const double g = weight_at(*cfg.gamma(), n, "gamma");
    const double b = weight_at(cfg.betas()[0], n, "beta");
    const double a = weight_at(cfg.alpha(), n, "alpha");
    const Point z = convex_combine(x_n, evaluate(T, x_n), g);
    const Point y = convex_combine(z, evaluate(T, z), b);
    StepState out;
    out.x = convex_combine(y, evaluate(T, y), a);
    out.n = n;
    out.auxiliaries = {y, z};
    return out;
}

StepState step(const OperatorSpec& T, const Point& x_n, std::int64_t n, const SchemeConfig& cfg) {
    switch (cfg.kind()) {
        case SchemeKind::new_multistep: return step_new_multistep(T, x_n, n, cfg);
        case SchemeKind::rs_multistep: return step_rs_multistep(T, x_n, n, cfg);
        case SchemeKind::s_iteration: return step_s_iteration(T, x_n, n, cfg);
        case SchemeKind::thianwan: return step_thianwan(T, x_n, n, cfg);
        case SchemeKind::sp: return step_sp(T, x_n, n, cfg);
    }
    throw ParamError("step: unknown scheme");
}

std::string theorem_name(TheoremTag t) {
    switch (t) {
        case TheoremTag::t1_convergence: return "t1";
        case TheoremTag::t2_datadep: return "t2";
        case TheoremTag::t3_convergence: return "t3";
        case TheoremTag::t4_datadep: return "t4";
    }
    return "t1";
}

ScheduleValidation validate_schedules(const SchemeConfig& cfg, TheoremTag theorem,
                                      std::int64_t horizon) {
    if (horizon < 1) throw ParamError("validate_schedules: horizon must be >= 1");
    ScheduleValidation report;

    auto fail = [&](std::int64_t n, const std::string& msg) {
        report.pass = false;
        report.failures.push_back(msg);
        if (!report.first_violation_n || n < *report.first_violation_n) {
            report.first_violation_n = n;
        }
    };

    auto check_membership = [&](const Schedule& s, const std::string& role) {
        for (std::int64_t n = 0; n <= horizon; ++n) {
            const double v = s.value(n);
            if (!(v >= 0.0 && v < 1.0)) {
                fail(n, role + " at n=" + std::to_string(n) + " is " + std::to_string(v) +
                         "; all schedules must stay in [0, 1)");
                return;
            }
        }
    };

    check_membership(cfg.alpha(), "alpha");
    for (std::size_t i = 0; i < cfg.betas().size(); ++i) {
        check_membership(cfg.betas()[i], "beta^" + std::to_string(i + 1));
    }
    if (cfg.gamma()) check_membership(*cfg.gamma(), "gamma");

    if (!cfg.alpha().sum_diverges()) {
        fail(0, "sum of alpha_n must diverge (condition (ii) of the data-dependence theorems "
                "and the convergence hypotheses); the declared family sums to a finite value");
    }

    if (theorem == TheoremTag::t2_datadep) {
        bool violated = false;
        for (std::int64_t n = 0; n <= horizon && !violated; ++n) {
            const double a = cfg.alpha().value(n);
            for (std::size_t i = 0; i < cfg.betas().size(); ++i) {
                const double b = cfg.betas()[i].value(n);
                if (!(b < a)) {
                    fail(n, "Theorem 2 (i) requires 0 <= beta^" + std::to_string(i + 1) +
                             "_n < alpha_n strictly; violated at n=" + std::to_string(n) +
                             " (beta=" + std::to_string(b) + ", alpha=" + std::to_string(a) + ")");
                    violated = true;
                    break;
                }
            }
        }
    }

    if (theorem == TheoremTag::t4_datadep) {
        for (std::int64_t n = 0; n <= horizon; ++n) {
            const double a = cfg.alpha().value(n);
            if (!(a >= 0.5)) {
                fail(n, "Theorem 4 (i) requires alpha_n >= 1/2; violated at n=" +
                         std::to_string(n) + " (alpha=" + std::to_string(a) + ")");
                break;
            }
        }
    }

    if (theorem == TheoremTag::t2_datadep || theorem == TheoremTag::t4_datadep) {
        for (std::int64_t n = 0; n <= horizon; ++n) {
            const double a = cfg.alpha().value(n);
            if (!(a > 0.0)) {
                fail(n, "data-dependence bounds need alpha_n > 0 (the Lemma 1 step size "
                         "alpha_n(1-delta) must lie in (0,1)); alpha=0 at n=" + std::to_string(n));
                break;
            }
        }
    }

    return report;
}

ReductionCheck reduction_check(const OperatorSpec& T, const Point& x0, const Schedule& alpha,
                               const std::vector<Schedule>& betas, int k, std::int64_t horizon,
                               Norm norm) {
    if (k != 2 && k != 3) {
        throw ParamError("reduction_check: only k=2 (two-step) and k=3 (sp) reductions exist");
    }
    if (betas.size() != static_cast<std::size_t>(k - 1)) {
        throw ParamError("reduction_check: exactly k-1 beta schedules required");
    }
    if (horizon < 1) throw ParamError("reduction_check: horizon must be >= 1");

    const SchemeConfig multistep = SchemeConfig::new_multistep(k, alpha, betas);
    const SchemeConfig named = k == 2 ? SchemeConfig::thianwan(alpha, betas[0])
                                      : SchemeConfig::sp(alpha, betas[0], betas[1]);

    Point a = x0;
    Point b = x0;
    ReductionCheck out;
    for (std::int64_t n = 0; n < horizon; ++n) {
        a = step(T, a, n, multistep).x;
        b = step(T, b, n, named).x;
        out.max_deviation = std::max(out.max_deviation, distance(a, b, norm));
    }
    out.pass = out.max_deviation <= 1e-12;
    return out;
}

}  // namespace fixpoint

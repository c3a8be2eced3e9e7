#include "fixpoint/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fixpoint/rng.hpp"

namespace fixpoint {

void StopRule::validate() const {
    if (!(residual_tol > 0.0)) throw ParamError("StopRule: residual_tol must be > 0");
    if (error_tol && !(*error_tol > 0.0)) throw ParamError("StopRule: error_tol must be > 0");
    if (max_iter < 1) throw ParamError("StopRule: max_iter must be >= 1");
}

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::residual: return "residual";
        case Termination::error: return "error";
        case Termination::max_iter: return "max_iter";
    }
    return "max_iter";
}

IterationTrace run(const RunConfig& cfg, const std::optional<Point>& known_p) {
    cfg.stop.validate();
    if (cfg.record_every < 1) throw ParamError("run: record_every must be >= 1");
    if (!contains(cfg.x0, cfg.op.domain())) {
        throw DomainError("run: x0 lies outside the operator domain");
    }

    IterationTrace trace;
    Point x = cfg.x0;

    auto record = [&](std::int64_t n, double residual, std::optional<double> error) {
        trace.entries.push_back(TraceEntry{n, x, residual, error});
    };

    for (std::int64_t n = 0;; ++n) {
        if (!all_finite(x)) {
            throw NonFiniteError("run: iterate left the finite range at n=" + std::to_string(n));
        }
        const double residual = distance(x, evaluate(cfg.op, x), cfg.norm);
        std::optional<double> error;
        if (known_p) error = distance(x, *known_p, cfg.norm);

        const bool at_cadence = n % cfg.record_every == 0;
        const bool residual_met = residual <= cfg.stop.residual_tol;
        const bool error_met = cfg.stop.error_tol && error && *error <= *cfg.stop.error_tol;
        const bool exhausted = n >= cfg.stop.max_iter;
        const bool last = residual_met || error_met || exhausted;

        if (at_cadence || last) record(n, residual, error);

        if (last) {
            trace.terminated_by = residual_met ? Termination::residual
                                 : error_met  ? Termination::error
                                              : Termination::max_iter;
            trace.final = x;
            trace.steps = n;
            return trace;
        }
        x = step(cfg.op, x, n, cfg.scheme).x;
    }
}

double residual_error_bound_check(const IterationTrace& trace, double delta, const Point& p,
                                  Norm norm) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& entry : trace.entries) {
        const double rhs = (1.0 + delta) * distance(entry.x, p, norm) + 1e-12;
        worst = std::max(worst, entry.residual - rhs);
    }
    return worst;
}

std::string theorem_bound_name(TheoremBound t) {
    return t == TheoremBound::t2 ? "t2" : "t4";
}

namespace {

// Picard refinement toward the fixed point; valid when the operator is a
// strict contraction (zero gauge). Stops when the residual stalls or falls
// to rounding level.
Point picard_polish(const OperatorSpec& T, Point x, Norm norm) {
    double residual = distance(x, evaluate(T, x), norm);
    for (int i = 0; i < 1000 && residual > 0.0; ++i) {
        Point next = evaluate(T, x);
        const double next_residual = distance(next, evaluate(T, next), norm);
        if (next_residual >= residual) break;
        x = std::move(next);
        residual = next_residual;
    }
    return x;
}

struct SolvedFixedPoint {
    Point value;
    double residual;
};

SolvedFixedPoint solve_fixed_point(const OperatorSpec& T, const SchemeConfig& scheme,
                                   const DataDepOptions& options, bool polish,
                                   const char* which) {
    RunConfig rc{scheme, T, options.x0, options.stop, options.stop.max_iter, options.norm};
    IterationTrace trace = run(rc);
    if (trace.terminated_by == Termination::max_iter &&
        trace.entries.back().residual > options.stop.residual_tol) {
        throw NoConvergenceError(std::string("data dependence: ") + which +
                                 " run hit max_iter=" + std::to_string(options.stop.max_iter) +
                                 " with residual " + std::to_string(trace.entries.back().residual) +
                                 " above tolerance " + std::to_string(options.stop.residual_tol));
    }
    Point p = trace.final;
    if (polish) p = picard_polish(T, std::move(p), options.norm);
    const double residual = distance(p, evaluate(T, p), options.norm);
    if (residual > 10.0 * options.stop.residual_tol) {
        throw NoConvergenceError(std::string("data dependence: ") + which +
                                 " fixed point residual " + std::to_string(residual) +
                                 " exceeds 10x residual_tol");
    }
    return SolvedFixedPoint{std::move(p), residual};
}

}  // namespace

DataDepReport data_dependence_experiment(const OperatorSpec& T, const ContractParams& params,
                                         const SchemeConfig& scheme,
                                         const DataDepOptions& options) {
    params.validate();
    if (!(options.epsilon >= 0.0)) throw ParamError("data dependence: epsilon must be >= 0");
    options.stop.validate();

    TheoremBound theorem;
    if (scheme.kind() == SchemeKind::new_multistep) {
        theorem = TheoremBound::t2;
    } else if (scheme.kind() == SchemeKind::s_iteration) {
        theorem = TheoremBound::t4;
    } else {
        throw ParamError("data dependence: bounds exist for new_multistep (k e/(1-delta)) and "
                         "s_iteration (3 e/(1-delta)); got " + scheme_name(scheme.kind()));
    }

    const auto tag = theorem == TheoremBound::t2 ? TheoremTag::t2_datadep : TheoremTag::t4_datadep;
    const auto horizon = std::min<std::int64_t>(options.stop.max_iter, 100000);
    const auto validation = validate_schedules(scheme, tag, horizon);
    if (!validation.pass) {
        throw ParamError("data dependence: schedule validation failed: " + validation.failures.front());
    }

    if (options.certify) {
        const SampleSpec sampler{options.certify_count, options.certify_seed, options.norm};
        const auto cert = certify_contractive_like(T, params.delta, params.gauge, sampler);
        if (cert.verdict != Verdict::holds_on_samples) {
            throw ParamError("data dependence: contractive-like certification falsified for the "
                             "declared (delta, gauge); slack " +
                             std::to_string(cert.witness ? cert.witness->slack : 0.0));
        }
    }

    const OperatorSpec Tp = perturb(T, options.epsilon, options.mode, options.perturb_seed,
                                    options.norm);
    const bool polish = params.gauge.form() == Gauge::Form::zero;

    const auto p = solve_fixed_point(T, scheme, options, polish, "base");
    const auto q = solve_fixed_point(Tp, scheme, options, polish, "perturbed");

    // Cross-check against the closed-form fixed point when one exists.
    if (const auto exact = analytic_fixed_point(T)) {
        const double deviation = distance(p.value, *exact, options.norm);
        const double allowed = std::max(1e-8, 10.0 * options.stop.residual_tol /
                                                  (1.0 - params.delta));
        if (deviation > allowed) {
            throw NoConvergenceError("data dependence: solved fixed point deviates from the "
                                     "affine closed form by " + std::to_string(deviation));
        }
    }

    DataDepReport report;
    report.epsilon_nominal = options.epsilon;
    report.epsilon_realized = Tp.perturbations().back().realized_epsilon;
    report.delta = params.delta;
    report.k = scheme.kind() == SchemeKind::new_multistep ? scheme.k() : 0;
    report.p = p.value;
    report.q = q.value;
    report.observed = distance(p.value, q.value, options.norm);
    const double factor = theorem == TheoremBound::t2 ? static_cast<double>(scheme.k()) : 3.0;
    report.bound = factor * report.epsilon_realized / (1.0 - params.delta);
    report.theorem = theorem;
    report.satisfied = report.observed <= report.bound + 1e-9;
    report.p_residual = p.residual;
    report.q_residual = q.residual;
    report.scheme = scheme.kind();
    report.seed = options.perturb_seed;
    return report;
}

SweepResult bound_tightness_sweep(const SweepGrid& grid) {
    if (grid.epsilons.empty() || grid.deltas.empty() || grid.schemes.empty() ||
        grid.modes.empty()) {
        throw ParamError("sweep: epsilons, deltas, schemes and modes must be non-empty");
    }
    const auto d = static_cast<std::size_t>(grid.domain.dimension());

    SweepResult result;
    std::int64_t index = 0;

    auto run_cell = [&](SchemeKind kind, double epsilon, double delta, int k, PerturbMode mode) {
        SweepCell cell;
        cell.index = index++;

        if (!(delta >= 0.0 && delta < 1.0)) {
            cell.status = CellStatus::skipped;
            cell.skip_reason = "delta outside [0, 1)";
            result.cells.push_back(std::move(cell));
            return;
        }

        SchemeConfig scheme = kind == SchemeKind::new_multistep
                                  ? SchemeConfig::new_multistep(
                                        k, grid.alpha,
                                        std::vector<Schedule>(static_cast<std::size_t>(k - 1),
                                                              grid.beta))
                                  : SchemeConfig::s_iteration(grid.alpha, grid.beta);
        const auto tag = kind == SchemeKind::new_multistep ? TheoremTag::t2_datadep
                                                           : TheoremTag::t4_datadep;
        const auto validation = validate_schedules(scheme, tag, std::min<std::int64_t>(
                                                                    grid.stop.max_iter, 10000));
        if (!validation.pass) {
            cell.status = CellStatus::skipped;
            cell.skip_reason = validation.failures.front();
            result.cells.push_back(std::move(cell));
            return;
        }

        // Cell operator: x -> delta * x on the grid domain.
        std::vector<double> matrix(d * d, 0.0);
        for (std::size_t i = 0; i < d; ++i) matrix[i * d + i] = delta;
        const OperatorSpec T = OperatorSpec::affine(std::move(matrix), Point(d, 0.0), grid.domain);

        ContractParams params;
        params.delta = delta;
        params.gauge = Gauge::zero();

        DataDepOptions options;
        options.epsilon = epsilon;
        options.mode = mode;
        options.perturb_seed = mix_seed(grid.seed, static_cast<std::uint64_t>(cell.index));
        options.x0 = grid.domain.midpoint();
        options.stop = grid.stop;
        options.norm = grid.norm;
        options.certify_count = grid.certify_count;
        options.certify_seed = mix_seed(grid.seed, static_cast<std::uint64_t>(cell.index) + 1);

        cell.report = data_dependence_experiment(T, params, scheme, options);
        cell.ratio = cell.report->bound > 0.0 ? cell.report->observed / cell.report->bound
                     : cell.report->observed == 0.0 ? 0.0
                                                    : std::numeric_limits<double>::infinity();
        if (!cell.report->satisfied) result.all_satisfied = false;
        result.cells.push_back(std::move(cell));
    };

    for (const SchemeKind kind : grid.schemes) {
        for (const double epsilon : grid.epsilons) {
            for (const double delta : grid.deltas) {
                if (kind == SchemeKind::new_multistep) {
                    if (grid.ks.empty()) throw ParamError("sweep: multistep cells need ks");
                    for (const int k : grid.ks) {
                        for (const PerturbMode mode : grid.modes) {
                            run_cell(kind, epsilon, delta, k, mode);
                        }
                    }
                } else if (kind == SchemeKind::s_iteration) {
                    for (const PerturbMode mode : grid.modes) {
                        run_cell(kind, epsilon, delta, 0, mode);
                    }
                } else {
                    throw ParamError("sweep: scheme must be new_multistep or s_iteration");
                }
            }
        }
    }
    return result;
}

EtaSpec EtaSpec::constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ParamError("EtaSpec: c must be finite and >= 0");
    return EtaSpec(Family::constant, c, 1.0);
}

EtaSpec EtaSpec::harmonic(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ParamError("EtaSpec: c must be finite and >= 0");
    return EtaSpec(Family::harmonic, c, 1.0);
}

EtaSpec EtaSpec::geometric(double c, double r) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ParamError("EtaSpec: c must be finite and >= 0");
    if (!(r >= 0.0 && r <= 1.0)) throw ParamError("EtaSpec: geometric ratio must lie in [0, 1]");
    return EtaSpec(Family::geometric, c, r);
}

double EtaSpec::value(std::int64_t n) const {
    switch (family_) {
        case Family::constant: return c_;
        case Family::harmonic: return c_ / static_cast<double>(n + 1);
        case Family::geometric: return c_ * std::pow(r_, static_cast<double>(n));
    }
    return 0.0;
}

LemmaOneReport lemma_one_oracle(const LemmaOneInstance& inst) {
    if (!(inst.a0 >= 0.0) || !std::isfinite(inst.a0)) {
        throw ParamError("lemma 1: a0 must be finite and >= 0");
    }
    if (inst.horizon < 2) throw ParamError("lemma 1: horizon must be >= 2");
    if (!inst.mu.sum_diverges()) {
        throw ParamError("lemma 1: the step-size series must diverge");
    }

    const std::int64_t tail_start = inst.horizon / 2;
    LemmaOneReport report;
    double a = inst.a0;
    double limsup_a = a;  // placeholder; reset at the tail start
    bool tail_started = false;

    for (std::int64_t n = 0; n <= inst.horizon; ++n) {
        if (n >= tail_start) {
            if (!tail_started) {
                limsup_a = a;
                report.limsup_eta = inst.eta.value(n);
                tail_started = true;
            } else {
                limsup_a = std::max(limsup_a, a);
                report.limsup_eta = std::max(report.limsup_eta, inst.eta.value(n));
            }
        }
        if (n == inst.horizon) break;
        const double mu = inst.mu.value(n);
        if (!(mu > 0.0 && mu < 1.0)) {
            throw ParamError("lemma 1: mu_n must lie in (0, 1); got " + std::to_string(mu) +
                             " at n=" + std::to_string(n));
        }
        const double eta = inst.eta.value(n);
        a = (1.0 - mu) * a + mu * eta;
    }

    report.limsup_a = limsup_a;
    report.satisfied = report.limsup_a <= report.limsup_eta + 1e-9;
    return report;
}

}  // namespace fixpoint

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixpoint/operators.hpp"
#include "fixpoint/space.hpp"

namespace fixpoint {

/// Closed-form weight sequence in [0, 1), a deterministic function of the
/// step index n.
class Schedule {
public:
    enum class Family { constant, harmonic, power, table };

    static Schedule constant(double c);
    /// c / (n + 1)
    static Schedule harmonic(double c);
    /// c / (n + 1)^p, p >= 0
    static Schedule power(double c, double p);
    /// Explicit prefix; indices past the end repeat the last value.
    static Schedule table(std::vector<double> values);

    Family family() const { return family_; }
    double c() const { return c_; }
    double exponent() const { return p_; }
    const std::vector<double>& values() const { return values_; }

    double value(std::int64_t n) const;

    /// Symbolic divergence of the series sum: constants and harmonics with
    /// c > 0 diverge, power families diverge iff p <= 1, tables iff the
    /// repeated tail value is positive. Divergence is undecidable from any
    /// finite prefix, so it is decided per family, never numerically.
    bool sum_diverges() const;

    bool operator==(const Schedule&) const = default;

private:
    Schedule(Family family, double c, double p, std::vector<double> values)
        : family_(family), c_(c), p_(p), values_(std::move(values)) {}

    Family family_ = Family::constant;
    double c_ = 0.0;
    double p_ = 1.0;
    std::vector<double> values_;
};

enum class SchemeKind { new_multistep, rs_multistep, s_iteration, thianwan, sp };

std::string scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

/// Scheme selection plus its weight schedules. The multistep schemes carry
/// exactly k-1 beta schedules (stages k-1 down to 1); the two- and
/// three-stage schemes carry a single beta (and gamma for sp).
class SchemeConfig {
public:
    static SchemeConfig new_multistep(int k, Schedule alpha, std::vector<Schedule> betas);
    static SchemeConfig rs_multistep(int k, Schedule alpha, std::vector<Schedule> betas);
    static SchemeConfig s_iteration(Schedule alpha, Schedule beta);
    static SchemeConfig thianwan(Schedule alpha, Schedule beta);
    static SchemeConfig sp(Schedule alpha, Schedule beta, Schedule gamma);

    SchemeKind kind() const { return kind_; }
    /// Multistep order; 0 for the fixed-shape schemes.
    int k() const { return k_; }
    const Schedule& alpha() const { return alpha_; }
    const std::vector<Schedule>& betas() const { return betas_; }
    const std::optional<Schedule>& gamma() const { return gamma_; }

    bool operator==(const SchemeConfig&) const = default;

private:
    SchemeConfig(SchemeKind kind, int k, Schedule alpha, std::vector<Schedule> betas,
                 std::optional<Schedule> gamma)
        : kind_(kind), k_(k), alpha_(std::move(alpha)), betas_(std::move(betas)),
          gamma_(std::move(gamma)) {}

    SchemeKind kind_;
    int k_;
    Schedule alpha_;
    std::vector<Schedule> betas_;
    std::optional<Schedule> gamma_;
};

/// One step's output: the new iterate and the intermediate stage points
/// (multistep: y^1 .. y^{k-1}; s_iteration/thianwan: y; sp: y, z).
struct StepState {
    Point x;
    std::int64_t n = 0;
    std::vector<Point> auxiliaries;
};

// One step of each process. Stages are evaluated innermost first and every
// convex combination is computed literally as (1-w)*u + w*v so traces are
// bit-reproducible. Schedule values outside [0,1) raise DomainError.

/// x_{n+1} = (1-a_n) y^1 + a_n T y^1, chained stages
/// y^i = (1-b^i_n) y^{i+1} + b^i_n T y^{i+1}, base y^{k-1} from x_n.
StepState step_new_multistep(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                             const SchemeConfig& cfg);

/// x_{n+1} = (1-a_n) x_n + a_n T y^1, stages y^i = (1-b^i_n) x_n + b^i_n T y^{i+1},
/// base y^{k-1} from x_n. Unlike the chained multistep, every stage combines
/// the untransformed x_n.
StepState step_rs_multistep(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                            const SchemeConfig& cfg);

/// y = (1-b_n) x_n + b_n T x_n; x_{n+1} = (1-a_n) T x_n + a_n T y.
/// With a_n = 0 this is the Picard orbit x_{n+1} = T x_n.
StepState step_s_iteration(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                           const SchemeConfig& cfg);

/// y = (1-b_n) x_n + b_n T x_n; x_{n+1} = (1-a_n) y + a_n T y.
StepState step_thianwan(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                        const SchemeConfig& cfg);

/// z = (1-g_n) x_n + g_n T x_n; y = (1-b_n) z + b_n T z;
/// x_{n+1} = (1-a_n) y + a_n T y.
StepState step_sp(const OperatorSpec& T, const Point& x_n, std::int64_t n,
                  const SchemeConfig& cfg);

/// Dispatch on cfg.kind().
StepState step(const OperatorSpec& T, const Point& x_n, std::int64_t n, const SchemeConfig& cfg);

enum class TheoremTag { t1_convergence, t2_datadep, t3_convergence, t4_datadep };

std::string theorem_name(TheoremTag t);

struct ScheduleValidation {
    bool pass = true;
    std::vector<std::string> failures;  // each names the precondition it enforces
    std::optional<std::int64_t> first_violation_n;
};

/// Checks, over n = 0..horizon: membership of every schedule value in [0,1);
/// the divergence of sum alpha_n (symbolically, per family); strictly
/// beta^i_n < alpha_n for the multistep data-dependence theorem; and
/// alpha_n >= 1/2 for the S-iteration data-dependence theorem. The
/// data-dependence bounds also need alpha_n > 0 so that the Lemma 1 step
/// sizes stay inside (0, 1).
ScheduleValidation validate_schedules(const SchemeConfig& cfg, TheoremTag theorem,
                                      std::int64_t horizon);

struct ReductionCheck {
    double max_deviation = 0.0;
    bool pass = false;
};

/// Cross-implementation identity check: the k-stage chained multistep run
/// alongside the independently implemented named scheme it collapses to
/// (k=2 -> thianwan with beta := beta^1, k=3 -> sp with beta := beta^1,
/// gamma := beta^2), from the same start for `horizon` steps. Passes iff the
/// largest per-step distance is <= 1e-12.
ReductionCheck reduction_check(const OperatorSpec& T, const Point& x0, const Schedule& alpha,
                               const std::vector<Schedule>& betas, int k, std::int64_t horizon,
                               Norm norm = Norm::euclidean);

}  // namespace fixpoint

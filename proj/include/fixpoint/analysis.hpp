#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixpoint/operators.hpp"
#include "fixpoint/schemes.hpp"
#include "fixpoint/space.hpp"

namespace fixpoint {

struct StopRule {
    double residual_tol = 1e-10;
    std::optional<double> error_tol;
    std::int64_t max_iter = 100000;

    void validate() const;
};

struct RunConfig {
    SchemeConfig scheme;
    OperatorSpec op;
    Point x0;
    StopRule stop;
    std::int64_t record_every = 1;
    Norm norm = Norm::euclidean;
};

enum class Termination { residual, error, max_iter };

std::string termination_name(Termination t);

struct TraceEntry {
    std::int64_t n = 0;
    Point x;
    double residual = 0.0;            // ||x_n - T x_n||
    std::optional<double> error;      // ||x_n - p|| when p is known
};

struct IterationTrace {
    std::vector<TraceEntry> entries;  // cadence steps plus first and last
    Termination terminated_by = Termination::max_iter;
    Point final;
    std::int64_t steps = 0;           // index n of the final iterate
};

/// Iterates cfg.scheme on cfg.op from cfg.x0 until the residual (or the
/// error to known_p, when given) drops below tolerance or max_iter is hit.
/// Entries are recorded every record_every steps plus the first and last.
IterationTrace run(const RunConfig& cfg, const std::optional<Point>& known_p = std::nullopt);

/// Checks ||x_n - T x_n|| <= (1 + delta) ||x_n - p|| + 1e-12 at every
/// recorded step and returns the largest violation; <= 0 means the estimate
/// holds on the whole trace.
double residual_error_bound_check(const IterationTrace& trace, double delta, const Point& p,
                                  Norm norm = Norm::euclidean);

enum class TheoremBound { t2, t4 };

std::string theorem_bound_name(TheoremBound t);

struct DataDepReport {
    double epsilon_nominal = 0.0;
    double epsilon_realized = 0.0;
    double delta = 0.0;
    std::int64_t k = 0;  // multistep order; 0 for s_iteration
    Point p;
    Point q;
    double observed = 0.0;  // ||p - q||
    double bound = 0.0;     // k e/(1-delta) or 3 e/(1-delta), e the realized epsilon
    TheoremBound theorem = TheoremBound::t2;
    bool satisfied = false;  // observed <= bound + 1e-9
    double p_residual = 0.0;
    double q_residual = 0.0;
    SchemeKind scheme = SchemeKind::new_multistep;
    std::uint64_t seed = 0;
};

struct DataDepOptions {
    double epsilon = 0.0;
    PerturbMode mode = PerturbMode::constant_shift;
    std::uint64_t perturb_seed = 0;
    Point x0;
    StopRule stop;
    Norm norm = Norm::euclidean;
    /// Certification of the contractive-like condition before the paired
    /// runs; disabling it lets deliberately mis-declared parameters through,
    /// which is how a bound violation is ever produced.
    bool certify = true;
    std::int64_t certify_count = 10000;
    std::uint64_t certify_seed = 0;
};

/// Builds the approximate operator, runs the scheme on both, and compares
/// ||p - q|| against the theorem bound matching the scheme (chained
/// multistep -> k e/(1-delta); S-iteration -> 3 e/(1-delta)). Fixed points
/// are polished by Picard refinement when the gauge is zero and re-checked
/// against the analytic fixed point for unperturbed affine operators.
/// Throws NoConvergenceError when either run stalls at max_iter.
DataDepReport data_dependence_experiment(const OperatorSpec& T, const ContractParams& params,
                                         const SchemeConfig& scheme, const DataDepOptions& options);

struct SweepGrid {
    std::vector<double> epsilons;
    std::vector<double> deltas;
    std::vector<int> ks;                 // multistep orders
    std::vector<SchemeKind> schemes;     // new_multistep and/or s_iteration
    std::vector<PerturbMode> modes;
    BoxDomain domain = BoxDomain{{0.0}, {1.0}};
    Schedule alpha = Schedule::constant(0.6);
    Schedule beta = Schedule::constant(0.3);
    StopRule stop;
    Norm norm = Norm::euclidean;
    std::uint64_t seed = 0;
    std::int64_t certify_count = 10000;
};

enum class CellStatus { ok, skipped };

struct SweepCell {
    std::int64_t index = 0;  // enumeration order: scheme, epsilon, delta, (k), mode
    CellStatus status = CellStatus::ok;
    std::string skip_reason;
    std::optional<DataDepReport> report;
    double ratio = 0.0;  // observed/bound, in [0, 1] for satisfied cells
};

struct SweepResult {
    std::vector<SweepCell> cells;
    bool all_satisfied = true;  // over non-skipped cells
};

/// One data-dependence experiment per grid cell, each cell an operator
/// x -> delta*x on the grid domain. Cells whose schedules fail the theorem
/// preconditions are marked skipped, not failed. Records the tightness
/// ratio observed/bound per cell; asserts nothing about it.
SweepResult bound_tightness_sweep(const SweepGrid& grid);

/// Forcing sequence eta_n of the Lemma 1 recurrence.
class EtaSpec {
public:
    enum class Family { constant, harmonic, geometric };

    static EtaSpec constant(double c);
    static EtaSpec harmonic(double c);
    /// c * r^n with r in [0, 1].
    static EtaSpec geometric(double c, double r);

    Family family() const { return family_; }
    double c() const { return c_; }
    double r() const { return r_; }
    double value(std::int64_t n) const;

    bool operator==(const EtaSpec&) const = default;

private:
    EtaSpec(Family family, double c, double r) : family_(family), c_(c), r_(r) {}
    Family family_ = Family::constant;
    double c_ = 0.0;
    double r_ = 1.0;
};

struct LemmaOneInstance {
    double a0 = 0.0;
    Schedule mu = Schedule::constant(0.5);  // values must lie in (0, 1), sum divergent
    EtaSpec eta = EtaSpec::constant(0.0);
    std::int64_t horizon = 10000;
};

struct LemmaOneReport {
    double limsup_a = 0.0;
    double limsup_eta = 0.0;
    bool satisfied = false;  // limsup_a <= limsup_eta + 1e-9
};

/// Runs the recurrence a_{n+1} = (1 - mu_n) a_n + mu_n eta_n taken with
/// equality (the extremal case: any sequence satisfying the inequality with
/// the same data is dominated by it) and estimates both limsups as the
/// maximum over the tail [horizon/2, horizon].
LemmaOneReport lemma_one_oracle(const LemmaOneInstance& inst);

}  // namespace fixpoint

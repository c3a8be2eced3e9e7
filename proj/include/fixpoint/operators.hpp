#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fixpoint/space.hpp"

namespace fixpoint {

/// Comparison function phi of the contractive-like condition: strictly
/// increasing and continuous with phi(0) = 0. Restricted to the zero,
/// linear (L*t) and power (L*t^p) families so that declared parameters
/// stay checkable.
class Gauge {
public:
    enum class Form { zero, linear, power };

    static Gauge zero();
    static Gauge linear(double L);
    static Gauge power(double L, double p);

    Form form() const { return form_; }
    double L() const { return L_; }
    double exponent() const { return p_; }

    double operator()(double t) const;

    bool operator==(const Gauge&) const = default;

private:
    Gauge(Form form, double L, double p) : form_(form), L_(L), p_(p) {}

    Form form_ = Form::zero;
    double L_ = 0.0;
    double p_ = 1.0;
};

/// Triple (a, b, c) with 0 < a < 1, 0 < b < 1/2, 0 < c < 1/2.
struct ZamfirescuTriple {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    bool operator==(const ZamfirescuTriple&) const = default;
};

void validate_zamfirescu_triple(const ZamfirescuTriple& t);

/// delta = max{a, b/(1-b), c/(1-c)}; always in (0, 1) for a valid triple.
double zamfirescu_delta(double a, double b, double c);

/// Declared or certified contraction parameters attached to an operator.
struct ContractParams {
    double delta = 0.0;                          // in [0, 1)
    Gauge gauge = Gauge::zero();
    double L = 0.0;                              // for the linear-gauge condition
    std::optional<ZamfirescuTriple> zamfirescu;

    void validate() const;
};

enum class PerturbMode { constant_shift, smooth_field };

std::string perturb_mode_name(PerturbMode m);
PerturbMode perturb_mode_from_name(const std::string& name);

/// One additive perturbation layer: evaluation becomes
/// project(base(x) + e(x), E) with ||e(x)|| <= epsilon pointwise.
/// Parameters of e are frozen at construction so evaluation stays
/// bit-deterministic.
struct PerturbationLayer {
    PerturbMode mode = PerturbMode::constant_shift;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    Norm norm = Norm::euclidean;
    /// max ||T x - T~ x|| over a 10^4-point sample, capped at the nominal
    /// epsilon (the construction guarantees the exact-arithmetic bound, so
    /// any measured excess is rounding noise).
    double realized_epsilon = 0.0;

    // Frozen field data: the constant shift vector, or per-component
    // frequency rows and phases of the smooth field.
    std::vector<double> shift;
    std::vector<std::vector<double>> frequencies;
    std::vector<double> phases;
    double component_scale = 0.0;
};

/// Declarative self-map T: E -> E. Every family ends with a projection onto
/// the domain box, so the self-map property holds by construction; the
/// non-finiteness of any intermediate value is diagnosed, never clamped away.
class OperatorSpec {
public:
    enum class Family { affine, piecewise_constant_1d, polynomial_1d_clamped, custom_table };

    struct Affine {
        std::vector<double> matrix;  // row-major d x d
        Point offset;
    };
    struct PiecewiseConstant1d {
        // (threshold, value) pieces with strictly increasing thresholds:
        // value_i applies for x <= threshold_i; inputs above every threshold
        // take the last piece's value.
        std::vector<std::pair<double, double>> pieces;
    };
    struct Polynomial1d {
        std::vector<double> coefficients;  // c0 + c1 x + c2 x^2 + ...
    };
    struct CustomTable {
        // Values at uniformly spaced nodes spanning [lower, upper]; evaluation
        // is piecewise-linear interpolation between nodes.
        std::vector<double> values;
    };

    static OperatorSpec affine(std::vector<double> matrix, Point offset, BoxDomain domain);
    static OperatorSpec piecewise_constant_1d(std::vector<std::pair<double, double>> pieces,
                                              BoxDomain domain);
    static OperatorSpec polynomial_1d_clamped(std::vector<double> coefficients, BoxDomain domain);
    static OperatorSpec custom_table(std::vector<double> values, BoxDomain domain);

    Family family() const;
    const BoxDomain& domain() const { return domain_; }
    const std::vector<PerturbationLayer>& perturbations() const { return perturbations_; }

    const Affine* as_affine() const { return std::get_if<Affine>(&data_); }
    const PiecewiseConstant1d* as_piecewise() const { return std::get_if<PiecewiseConstant1d>(&data_); }
    const Polynomial1d* as_polynomial() const { return std::get_if<Polynomial1d>(&data_); }
    const CustomTable* as_table() const { return std::get_if<CustomTable>(&data_); }

    friend OperatorSpec perturb(const OperatorSpec& T, double epsilon, PerturbMode mode,
                                std::uint64_t seed, Norm norm);
    friend Point evaluate(const OperatorSpec& T, const Point& x);

private:
    OperatorSpec(std::variant<Affine, PiecewiseConstant1d, Polynomial1d, CustomTable> data,
                 BoxDomain domain)
        : data_(std::move(data)), domain_(std::move(domain)) {}

    std::variant<Affine, PiecewiseConstant1d, Polynomial1d, CustomTable> data_;
    BoxDomain domain_;
    std::vector<PerturbationLayer> perturbations_;
};

/// Tx. Throws DomainError if x is outside T's domain, NonFiniteError if an
/// intermediate value overflows to inf/NaN.
Point evaluate(const OperatorSpec& T, const Point& x);

/// Approximate operator T~ with ||Tx - T~x|| <= epsilon for all x in E:
/// T~x = project(Tx + e(x), E). constant_shift uses a fixed vector of norm
/// epsilon along the all-ones diagonal; smooth_field uses a seeded
/// sinusoidal field scaled to stay strictly inside the epsilon ball.
/// The realized epsilon (sampled sup of ||Tx - T~x||) is recorded on the
/// returned spec.
OperatorSpec perturb(const OperatorSpec& T, double epsilon, PerturbMode mode,
                     std::uint64_t seed = 0, Norm norm = Norm::euclidean);

/// Fixed point of an unperturbed affine operator, solving (I - A) p = b by
/// Gaussian elimination. Empty if the family is not affine, a perturbation
/// layer is present, the system is singular, or the solution leaves the
/// domain (where the clamp changes the dynamics).
std::optional<Point> analytic_fixed_point(const OperatorSpec& T);

enum class Condition { zamfirescu, quasi_contractive, osilike, contractive_like };
enum class Verdict { holds_on_samples, falsified };

std::string condition_name(Condition c);
std::string verdict_name(Verdict v);

/// Sampling plan for a certification run. The same (count, seed) always
/// produces the same pair sequence, so certifications of different
/// conditions can be compared sample-for-sample.
struct SampleSpec {
    std::int64_t count = 10000;  // number of random pairs, >= 1
    std::uint64_t seed = 0;
    Norm norm = Norm::euclidean;
};

struct Witness {
    Point x;
    Point y;
    double slack = 0.0;           // violation of the checked inequality at (x, y)
    double slack_reversed = 0.0;  // same pair in the reversed order
};

struct CertificationReport {
    Condition condition = Condition::contractive_like;
    Verdict verdict = Verdict::holds_on_samples;
    std::optional<Witness> witness;  // present iff falsified
    std::int64_t samples_used = 0;   // ordered inequality evaluations
    std::uint64_t rng_seed = 0;
};

/// Checks, for every sampled unordered pair, that at least one of the three
/// Zamfirescu inequalities holds within slack 1e-12.
CertificationReport certify_zamfirescu(const OperatorSpec& T, const ZamfirescuTriple& params,
                                       const SampleSpec& sampler);

/// Checks ||Tx - Ty|| <= delta ||x - y|| + phi(||x - Tx||) on ordered pairs
/// (both orderings of every sampled pair; the condition is asymmetric in x).
CertificationReport certify_contractive_like(const OperatorSpec& T, double delta,
                                             const Gauge& gauge, const SampleSpec& sampler);

/// Same check with phi(t) = L t.
CertificationReport certify_osilike(const OperatorSpec& T, double delta, double L,
                                    const SampleSpec& sampler);

/// Residual scan over a uniform grid (resolution nodes per axis).
struct GridFixedPoints {
    /// Representatives: within each cluster of accepted nodes, every node
    /// attaining the cluster's exact minimal residual. A map with an isolated
    /// fixed point yields one representative; a map fixing a whole region
    /// yields all its zero-residual nodes.
    std::vector<Point> points;
    /// Cluster id per representative (clusters = connected components of
    /// accepted nodes under one-cell adjacency).
    std::vector<std::int64_t> cluster_index;
    std::int64_t cluster_count = 0;
};

/// Nodes with ||x - Tx|| <= tolerance (default 10/resolution of the domain
/// diameter), clustered cell-adjacently and reduced to per-cluster minima.
/// An empty result is a valid outcome.
GridFixedPoints find_fixed_points_grid(const OperatorSpec& T, std::int64_t resolution,
                                       Norm norm = Norm::euclidean,
                                       std::optional<double> tolerance = std::nullopt);

/// A certified contractive-like operator has at most one fixed point; two
/// cluster-distinct grid candidates alongside a holds verdict flag an
/// inconsistency between certification and scan.
bool uniqueness_inconsistent(const CertificationReport& report, const GridFixedPoints& scan);

}  // namespace fixpoint

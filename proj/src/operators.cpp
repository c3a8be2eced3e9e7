#include "fixpoint/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <set>

#include "fixpoint/rng.hpp"

namespace fixpoint {

namespace {

constexpr double kCertSlack = 1e-12;
constexpr std::int64_t kRealizedSampleCount = 10000;

// Shared stream tag so every certification of the same (count, seed) sampler
// sees the identical pair sequence regardless of the condition checked.
constexpr std::uint64_t kPairStream = 0xce27;
constexpr std::uint64_t kRealizedStream = 0x5ca1ed;
constexpr std::uint64_t kFieldStream = 0xf1e1d;

Point random_point(Rng& rng, const BoxDomain& E) {
    Point x(static_cast<std::size_t>(E.dimension()));
    for (int i = 0; i < E.dimension(); ++i) {
        x[static_cast<std::size_t>(i)] = rng.uniform(E.lower()[static_cast<std::size_t>(i)],
                                                     E.upper()[static_cast<std::size_t>(i)]);
    }
    return x;
}

}  // namespace

Gauge Gauge::zero() { return Gauge(Form::zero, 0.0, 1.0); }

Gauge Gauge::linear(double L) {
    if (!(L >= 0.0) || !std::isfinite(L)) {
        throw ParamError("Gauge::linear: L must be finite and >= 0");
    }
    return Gauge(Form::linear, L, 1.0);
}

Gauge Gauge::power(double L, double p) {
    if (!(L >= 0.0) || !std::isfinite(L)) {
        throw ParamError("Gauge::power: L must be finite and >= 0");
    }
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw ParamError("Gauge::power: exponent must be finite and > 0");
    }
    return Gauge(Form::power, L, p);
}

double Gauge::operator()(double t) const {
    switch (form_) {
        case Form::zero: return 0.0;
        case Form::linear: return L_ * t;
        case Form::power: return t == 0.0 ? 0.0 : L_ * std::pow(t, p_);
    }
    return 0.0;
}

void validate_zamfirescu_triple(const ZamfirescuTriple& t) {
    if (!(t.a > 0.0 && t.a < 1.0)) {
        throw ParamError("zamfirescu: a must lie in (0, 1)");
    }
    if (!(t.b > 0.0 && t.b < 0.5)) {
        throw ParamError("zamfirescu: b must lie in (0, 1/2)");
    }
    if (!(t.c > 0.0 && t.c < 0.5)) {
        throw ParamError("zamfirescu: c must lie in (0, 1/2)");
    }
}

double zamfirescu_delta(double a, double b, double c) {
    validate_zamfirescu_triple(ZamfirescuTriple{a, b, c});
    return std::max(a, std::max(b / (1.0 - b), c / (1.0 - c)));
}

void ContractParams::validate() const {
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw ParamError("ContractParams: delta must lie in [0, 1)");
    }
    if (!(L >= 0.0) || !std::isfinite(L)) {
        throw ParamError("ContractParams: L must be finite and >= 0");
    }
    if (zamfirescu) validate_zamfirescu_triple(*zamfirescu);
}

std::string perturb_mode_name(PerturbMode m) {
    return m == PerturbMode::constant_shift ? "constant_shift" : "smooth_field";
}

PerturbMode perturb_mode_from_name(const std::string& name) {
    if (name == "constant_shift") return PerturbMode::constant_shift;
    if (name == "smooth_field") return PerturbMode::smooth_field;
    throw ParamError("unknown perturbation mode '" + name + "'");
}

OperatorSpec OperatorSpec::affine(std::vector<double> matrix, Point offset, BoxDomain domain) {
    const auto d = static_cast<std::size_t>(domain.dimension());
    if (matrix.size() != d * d) {
        throw ParamError("affine operator: matrix must be d*d row-major");
    }
    if (offset.size() != d) {
        throw DimensionError("affine operator: offset dimension mismatch");
    }
    for (double v : matrix) {
        if (!std::isfinite(v)) throw ParamError("affine operator: matrix entries must be finite");
    }
    if (!all_finite(offset)) throw ParamError("affine operator: offset must be finite");
    return OperatorSpec(Affine{std::move(matrix), std::move(offset)}, std::move(domain));
}

OperatorSpec OperatorSpec::piecewise_constant_1d(std::vector<std::pair<double, double>> pieces,
                                                 BoxDomain domain) {
    if (domain.dimension() != 1) {
        throw ParamError("piecewise_constant_1d requires a one-dimensional domain");
    }
    if (pieces.empty()) throw ParamError("piecewise_constant_1d: at least one piece required");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!std::isfinite(pieces[i].first) || !std::isfinite(pieces[i].second)) {
            throw ParamError("piecewise_constant_1d: thresholds and values must be finite");
        }
        if (i > 0 && !(pieces[i - 1].first < pieces[i].first)) {
            throw ParamError("piecewise_constant_1d: thresholds must be strictly increasing");
        }
    }
    return OperatorSpec(PiecewiseConstant1d{std::move(pieces)}, std::move(domain));
}

OperatorSpec OperatorSpec::polynomial_1d_clamped(std::vector<double> coefficients,
                                                 BoxDomain domain) {
    if (domain.dimension() != 1) {
        throw ParamError("polynomial_1d_clamped requires a one-dimensional domain");
    }
    if (coefficients.empty()) throw ParamError("polynomial_1d_clamped: empty coefficient list");
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw ParamError("polynomial_1d_clamped: coefficients must be finite");
    }
    return OperatorSpec(Polynomial1d{std::move(coefficients)}, std::move(domain));
}

OperatorSpec OperatorSpec::custom_table(std::vector<double> values, BoxDomain domain) {
    if (domain.dimension() != 1) {
        throw ParamError("custom_table requires a one-dimensional domain");
    }
    if (values.size() < 2) throw ParamError("custom_table: at least two node values required");
    for (double v : values) {
        if (!std::isfinite(v)) throw ParamError("custom_table: node values must be finite");
    }
    return OperatorSpec(CustomTable{std::move(values)}, std::move(domain));
}

OperatorSpec::Family OperatorSpec::family() const {
    if (std::holds_alternative<Affine>(data_)) return Family::affine;
    if (std::holds_alternative<PiecewiseConstant1d>(data_)) return Family::piecewise_constant_1d;
    if (std::holds_alternative<Polynomial1d>(data_)) return Family::polynomial_1d_clamped;
    return Family::custom_table;
}

namespace {

Point base_apply(const OperatorSpec::Affine& a, const Point& x) {
    const std::size_t d = x.size();
    Point y(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = a.offset[i];
        for (std::size_t j = 0; j < d; ++j) {
            s += a.matrix[i * d + j] * x[j];
        }
        y[i] = s;
    }
    return y;
}

double base_apply(const OperatorSpec::PiecewiseConstant1d& pw, double x) {
    for (const auto& [threshold, value] : pw.pieces) {
        if (x <= threshold) return value;
    }
    return pw.pieces.back().second;
}

double base_apply(const OperatorSpec::Polynomial1d& poly, double x) {
    double v = 0.0;
    for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
        v = v * x + *it;
    }
    return v;
}

double base_apply(const OperatorSpec::CustomTable& table, double x, const BoxDomain& E) {
    const double lo = E.lower()[0];
    const double hi = E.upper()[0];
    const std::size_t m = table.values.size();
    if (hi == lo) return table.values.front();
    double t = (x - lo) / (hi - lo) * static_cast<double>(m - 1);
    auto i = static_cast<std::size_t>(std::min(std::max(t, 0.0), static_cast<double>(m - 2)));
    const double frac = t - static_cast<double>(i);
    return (1.0 - frac) * table.values[i] + frac * table.values[i + 1];
}

std::vector<double> field_at(const PerturbationLayer& layer, const Point& x) {
    const std::size_t d = x.size();
    std::vector<double> e(d, 0.0);
    if (layer.epsilon == 0.0) return e;
    if (layer.mode == PerturbMode::constant_shift) {
        for (std::size_t i = 0; i < d; ++i) e[i] = layer.shift[i];
        return e;
    }
    for (std::size_t i = 0; i < d; ++i) {
        double phase = layer.phases[i];
        for (std::size_t j = 0; j < d; ++j) {
            phase += layer.frequencies[i][j] * x[j];
        }
        e[i] = layer.component_scale * std::sin(phase);
    }
    return e;
}

}  // namespace

Point evaluate(const OperatorSpec& T, const Point& x) {
    if (!contains(x, T.domain())) {
        throw DomainError("evaluate: point lies outside the operator domain");
    }
    Point y;
    switch (T.family()) {
        case OperatorSpec::Family::affine:
            y = base_apply(*T.as_affine(), x);
            break;
        case OperatorSpec::Family::piecewise_constant_1d:
            y = Point{base_apply(*T.as_piecewise(), x[0])};
            break;
        case OperatorSpec::Family::polynomial_1d_clamped:
            y = Point{base_apply(*T.as_polynomial(), x[0])};
            break;
        case OperatorSpec::Family::custom_table:
            y = Point{base_apply(*T.as_table(), x[0], T.domain())};
            break;
    }
    if (!all_finite(y)) {
        throw NonFiniteError("evaluate: operator value left the finite range before projection");
    }
    y = project(y, T.domain());
    for (const auto& layer : T.perturbations_) {
        if (layer.epsilon == 0.0) continue;  // bit-identical to the base map
        const auto e = field_at(layer, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += e[i];
        if (!all_finite(y)) {
            throw NonFiniteError("evaluate: perturbed value left the finite range");
        }
        y = project(y, T.domain());
    }
    return y;
}

OperatorSpec perturb(const OperatorSpec& T, double epsilon, PerturbMode mode,
                     std::uint64_t seed, Norm norm) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw ParamError("perturb: epsilon must be finite and >= 0");
    }
    const auto d = static_cast<std::size_t>(T.domain().dimension());

    PerturbationLayer layer;
    layer.mode = mode;
    layer.epsilon = epsilon;
    layer.seed = seed;
    layer.norm = norm;

    if (mode == PerturbMode::constant_shift) {
        // All-ones direction normalized in the active norm; in one dimension
        // the shift is exactly +epsilon.
        double scale = epsilon;
        switch (norm) {
            case Norm::euclidean: scale = epsilon / std::sqrt(static_cast<double>(d)); break;
            case Norm::max: scale = epsilon; break;
            case Norm::one: scale = epsilon / static_cast<double>(d); break;
        }
        layer.shift.assign(d, scale);
    } else {
        Rng rng(mix_seed(seed, kFieldStream));
        layer.frequencies.resize(d);
        layer.phases.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            layer.frequencies[i].resize(d);
            for (std::size_t j = 0; j < d; ++j) {
                layer.frequencies[i][j] = rng.uniform(0.5, 3.0);
            }
            layer.phases[i] = rng.uniform(0.0, 6.283185307179586);
        }
        // Shrink slightly below the nominal radius so the sampled sup stays
        // <= epsilon even after rounding.
        const double safe = epsilon / (1.0 + 1e-13);
        switch (norm) {
            case Norm::euclidean: layer.component_scale = safe / std::sqrt(static_cast<double>(d)); break;
            case Norm::max: layer.component_scale = safe; break;
            case Norm::one: layer.component_scale = safe / static_cast<double>(d); break;
        }
    }

    OperatorSpec out = T;
    out.perturbations_.push_back(std::move(layer));

    double measured = 0.0;
    if (epsilon > 0.0) {
        Rng rng(mix_seed(seed, kRealizedStream));
        for (std::int64_t i = 0; i < kRealizedSampleCount; ++i) {
            const Point x = random_point(rng, T.domain());
            measured = std::max(measured, distance(evaluate(T, x), evaluate(out, x), norm));
        }
    }
    out.perturbations_.back().realized_epsilon = std::min(measured, epsilon);
    return out;
}

std::optional<Point> analytic_fixed_point(const OperatorSpec& T) {
    const auto* aff = T.as_affine();
    if (aff == nullptr || !T.perturbations().empty()) return std::nullopt;
    const auto d = static_cast<std::size_t>(T.domain().dimension());

    // Solve (I - A) p = b by Gaussian elimination with partial pivoting.
    std::vector<double> m(d * d);
    Point rhs = aff->offset;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m[i * d + j] = (i == j ? 1.0 : 0.0) - aff->matrix[i * d + j];
        }
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::fabs(m[r * d + col]) > std::fabs(m[pivot * d + col])) pivot = r;
        }
        if (std::fabs(m[pivot * d + col]) < 1e-12) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < d; ++j) std::swap(m[pivot * d + j], m[col * d + j]);
            std::swap(rhs[pivot], rhs[col]);
        }
        for (std::size_t r = col + 1; r < d; ++r) {
            const double f = m[r * d + col] / m[col * d + col];
            for (std::size_t j = col; j < d; ++j) m[r * d + j] -= f * m[col * d + j];
            rhs[r] -= f * rhs[col];
        }
    }
    Point p(d);
    for (std::size_t i = d; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < d; ++j) s -= m[i * d + j] * p[j];
        p[i] = s / m[i * d + i];
    }
    if (!all_finite(p) || !contains(p, T.domain())) return std::nullopt;
    return p;
}

std::string condition_name(Condition c) {
    switch (c) {
        case Condition::zamfirescu: return "zamfirescu";
        case Condition::quasi_contractive: return "quasi_contractive";
        case Condition::osilike: return "osilike";
        case Condition::contractive_like: return "contractive_like";
    }
    return "contractive_like";
}

std::string verdict_name(Verdict v) {
    return v == Verdict::holds_on_samples ? "holds_on_samples" : "falsified";
}

namespace {

// Structured probe points: box corners, the midpoint, and small two-sided
// neighborhoods of every discontinuity/kink of the piecewise families. The
// random pairs alone would almost never straddle a discontinuity at the
// scales that matter.
std::vector<Point> structured_points(const OperatorSpec& T) {
    const BoxDomain& E = T.domain();
    const auto d = static_cast<std::size_t>(E.dimension());
    std::vector<Point> pts;

    const std::uint64_t corner_count =
        d >= 8 ? 256 : (std::uint64_t{1} << d);
    for (std::uint64_t mask = 0; mask < corner_count; ++mask) {
        pts.push_back(E.corner(mask));
    }
    pts.push_back(E.midpoint());

    if (d == 1) {
        std::vector<double> knots;
        if (const auto* pw = T.as_piecewise()) {
            for (const auto& piece : pw->pieces) knots.push_back(piece.first);
        } else if (const auto* table = T.as_table()) {
            const std::size_t m = table->values.size();
            const std::size_t step = m <= 16 ? 1 : m / 16;
            for (std::size_t i = 0; i < m; i += step) {
                knots.push_back(E.lower()[0] + (E.upper()[0] - E.lower()[0]) *
                                               static_cast<double>(i) / static_cast<double>(m - 1));
            }
        }
        const double span = E.upper()[0] - E.lower()[0];
        for (double t : knots) {
            for (double rel : {1e-3, 1e-6, 1e-9}) {
                const double h = rel * span;
                pts.push_back(project(Point{t - h}, E));
                pts.push_back(project(Point{t}, E));
                pts.push_back(project(Point{t + h}, E));
            }
        }
    }

    if (pts.size() > 48) pts.resize(48);
    return pts;
}

struct PairScan {
    Verdict verdict = Verdict::holds_on_samples;
    std::optional<Witness> witness;
    std::int64_t samples_used = 0;
};

// Runs `check` over all structured ordered pairs and `count` random pairs in
// both orderings; stops at the first violation beyond the certification
// slack. check(x, Tx, y, Ty) returns the inequality violation (LHS - RHS).
template <typename CheckFn>
PairScan scan_ordered(const OperatorSpec& T, const SampleSpec& sampler, CheckFn&& check) {
    if (sampler.count < 1) throw ParamError("sampler count must be >= 1");
    PairScan scan;

    auto violation_pair = [&](const Point& x, const Point& y) {
        const Point tx = evaluate(T, x);
        const Point ty = evaluate(T, y);
        const double forward = check(x, tx, y, ty);
        const double backward = check(y, ty, x, tx);
        scan.samples_used += 2;
        if (std::max(forward, backward) > kCertSlack) {
            scan.verdict = Verdict::falsified;
            scan.witness = Witness{x, y, forward, backward};
            return true;
        }
        return false;
    };

    const auto structured = structured_points(T);
    for (std::size_t i = 0; i < structured.size(); ++i) {
        for (std::size_t j = i + 1; j < structured.size(); ++j) {
            if (violation_pair(structured[i], structured[j])) return scan;
        }
    }
    Rng rng(mix_seed(sampler.seed, kPairStream));
    for (std::int64_t i = 0; i < sampler.count; ++i) {
        const Point x = random_point(rng, T.domain());
        const Point y = random_point(rng, T.domain());
        if (violation_pair(x, y)) return scan;
    }
    return scan;
}

}  // namespace

CertificationReport certify_zamfirescu(const OperatorSpec& T, const ZamfirescuTriple& params,
                                       const SampleSpec& sampler) {
    validate_zamfirescu_triple(params);
    if (sampler.count < 1) throw ParamError("sampler count must be >= 1");

    CertificationReport report;
    report.condition = Condition::zamfirescu;
    report.rng_seed = sampler.seed;

    // The three inequalities are symmetric in (x, y), so each pair is
    // checked once.
    auto violation_pair = [&](const Point& x, const Point& y) {
        const Point tx = evaluate(T, x);
        const Point ty = evaluate(T, y);
        const double lhs = distance(tx, ty, sampler.norm);
        const double z1 = params.a * distance(x, y, sampler.norm);
        const double z2 = params.b * (distance(x, tx, sampler.norm) + distance(y, ty, sampler.norm));
        const double z3 = params.c * (distance(x, ty, sampler.norm) + distance(y, tx, sampler.norm));
        report.samples_used += 1;
        const double violation = lhs - std::max(z1, std::max(z2, z3));
        if (violation > kCertSlack) {
            report.verdict = Verdict::falsified;
            report.witness = Witness{x, y, violation, violation};
            return true;
        }
        return false;
    };

    const auto structured = structured_points(T);
    for (std::size_t i = 0; i < structured.size(); ++i) {
        for (std::size_t j = i + 1; j < structured.size(); ++j) {
            if (violation_pair(structured[i], structured[j])) return report;
        }
    }
    Rng rng(mix_seed(sampler.seed, kPairStream));
    for (std::int64_t i = 0; i < sampler.count; ++i) {
        const Point x = random_point(rng, T.domain());
        const Point y = random_point(rng, T.domain());
        if (violation_pair(x, y)) return report;
    }
    return report;
}

namespace {

CertificationReport certify_gauge_condition(const OperatorSpec& T, double delta,
                                            const Gauge& gauge, const SampleSpec& sampler,
                                            Condition condition) {
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw ParamError("certify: delta must lie in [0, 1)");
    }
    auto scan = scan_ordered(T, sampler, [&](const Point& x, const Point& tx, const Point& y,
                                             const Point& ty) {
        const double lhs = distance(tx, ty, sampler.norm);
        const double rhs = delta * distance(x, y, sampler.norm) + gauge(distance(x, tx, sampler.norm));
        return lhs - rhs;
    });
    CertificationReport report;
    report.condition = condition;
    report.verdict = scan.verdict;
    report.witness = std::move(scan.witness);
    report.samples_used = scan.samples_used;
    report.rng_seed = sampler.seed;
    return report;
}

}  // namespace

CertificationReport certify_contractive_like(const OperatorSpec& T, double delta,
                                             const Gauge& gauge, const SampleSpec& sampler) {
    return certify_gauge_condition(T, delta, gauge, sampler, Condition::contractive_like);
}

CertificationReport certify_osilike(const OperatorSpec& T, double delta, double L,
                                    const SampleSpec& sampler) {
    return certify_gauge_condition(T, delta, Gauge::linear(L), sampler, Condition::osilike);
}

GridFixedPoints find_fixed_points_grid(const OperatorSpec& T, std::int64_t resolution,
                                       Norm norm, std::optional<double> tolerance) {
    if (resolution < 2) throw ParamError("find_fixed_points_grid: resolution must be >= 2");
    const int d = T.domain().dimension();
    if (d > 6) {
        throw ParamError("find_fixed_points_grid: grid scan supports dimension <= 6");
    }
    double total = 1.0;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(resolution);
    if (total > static_cast<double>(1 << 24)) {
        throw ParamError("find_fixed_points_grid: grid too large");
    }

    const double tol = tolerance.value_or(10.0 / static_cast<double>(resolution) *
                                          T.domain().diameter(norm));
    const BoxDomain& E = T.domain();

    auto node_coord = [&](int axis, std::int64_t idx) {
        const double lo = E.lower()[static_cast<std::size_t>(axis)];
        const double hi = E.upper()[static_cast<std::size_t>(axis)];
        return lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(resolution - 1);
    };

    const auto node_total = static_cast<std::int64_t>(total);
    auto decode = [&](std::int64_t linear) {
        std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
        for (int axis = 0; axis < d; ++axis) {
            idx[static_cast<std::size_t>(axis)] = linear % resolution;
            linear /= resolution;
        }
        return idx;
    };

    // Accepted nodes in linear-index order, with residuals.
    std::vector<std::int64_t> accepted;
    std::vector<double> residuals;
    std::set<std::int64_t> accepted_set;
    for (std::int64_t linear = 0; linear < node_total; ++linear) {
        const auto idx = decode(linear);
        Point x(static_cast<std::size_t>(d));
        for (int axis = 0; axis < d; ++axis) {
            x[static_cast<std::size_t>(axis)] = node_coord(axis, idx[static_cast<std::size_t>(axis)]);
        }
        const double r = distance(x, evaluate(T, x), norm);
        if (r <= tol) {
            accepted.push_back(linear);
            residuals.push_back(r);
            accepted_set.insert(linear);
        }
    }

    // Connected components under one-cell (Chebyshev) adjacency.
    std::vector<std::int64_t> cluster_of(accepted.size(), -1);
    std::int64_t clusters = 0;
    std::vector<std::int64_t> offsets;
    {
        // All nonzero {-1,0,1}^d offsets, encoded against the linear index.
        const std::int64_t combos = static_cast<std::int64_t>(std::pow(3.0, d));
        for (std::int64_t c = 0; c < combos; ++c) {
            std::int64_t rem = c;
            std::int64_t off = 0;
            std::int64_t stride = 1;
            bool zero = true;
            for (int axis = 0; axis < d; ++axis) {
                const std::int64_t step = rem % 3 - 1;
                rem /= 3;
                off += step * stride;
                stride *= resolution;
                if (step != 0) zero = false;
            }
            if (!zero) offsets.push_back(off);
        }
    }
    auto find_accepted = [&](std::int64_t linear) -> std::int64_t {
        if (!accepted_set.count(linear)) return -1;
        const auto it = std::lower_bound(accepted.begin(), accepted.end(), linear);
        return it - accepted.begin();
    };
    for (std::size_t a = 0; a < accepted.size(); ++a) {
        if (cluster_of[a] != -1) continue;
        const std::int64_t id = clusters++;
        std::queue<std::size_t> frontier;
        frontier.push(a);
        cluster_of[a] = id;
        while (!frontier.empty()) {
            const std::size_t cur = frontier.front();
            frontier.pop();
            const auto idx = decode(accepted[cur]);
            for (const std::int64_t off : offsets) {
                const std::int64_t neighbor = accepted[cur] + off;
                if (neighbor < 0 || neighbor >= node_total) continue;
                // Reject wrap-around across axis boundaries.
                const auto nidx = decode(neighbor);
                bool adjacent = true;
                for (int axis = 0; axis < d; ++axis) {
                    if (std::llabs(nidx[static_cast<std::size_t>(axis)] -
                                   idx[static_cast<std::size_t>(axis)]) > 1) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                const std::int64_t pos = find_accepted(neighbor);
                if (pos >= 0 && cluster_of[static_cast<std::size_t>(pos)] == -1) {
                    cluster_of[static_cast<std::size_t>(pos)] = id;
                    frontier.push(static_cast<std::size_t>(pos));
                }
            }
        }
    }

    // Per cluster keep every node attaining the exact minimal residual: an
    // isolated approximate fixed point collapses to its best node, while a
    // pointwise-fixed region keeps all its zero-residual nodes.
    std::vector<double> cluster_min(static_cast<std::size_t>(clusters),
                                    std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < accepted.size(); ++a) {
        auto& best = cluster_min[static_cast<std::size_t>(cluster_of[a])];
        best = std::min(best, residuals[a]);
    }
    GridFixedPoints out;
    out.cluster_count = clusters;
    for (std::size_t a = 0; a < accepted.size(); ++a) {
        if (residuals[a] == cluster_min[static_cast<std::size_t>(cluster_of[a])]) {
            const auto idx = decode(accepted[a]);
            Point x(static_cast<std::size_t>(d));
            for (int axis = 0; axis < d; ++axis) {
                x[static_cast<std::size_t>(axis)] =
                    node_coord(axis, idx[static_cast<std::size_t>(axis)]);
            }
            out.points.push_back(std::move(x));
            out.cluster_index.push_back(cluster_of[a]);
        }
    }
    return out;
}

bool uniqueness_inconsistent(const CertificationReport& report, const GridFixedPoints& scan) {
    return report.verdict == Verdict::holds_on_samples && scan.cluster_count >= 2;
}

}  // namespace fixpoint

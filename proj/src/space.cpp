#include "fixpoint/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace fixpoint {

namespace {

void require_same_dimension(const Point& x, const Point& y, const char* what) {
    if (x.size() != y.size()) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
    }
}

}  // namespace

std::string norm_name(Norm n) {
    switch (n) {
        case Norm::euclidean: return "euclidean";
        case Norm::max: return "max";
        case Norm::one: return "one";
    }
    return "euclidean";
}

Norm norm_from_name(const std::string& name) {
    if (name == "euclidean") return Norm::euclidean;
    if (name == "max") return Norm::max;
    if (name == "one") return Norm::one;
    throw ParamError("unknown norm '" + name + "'");
}

bool all_finite(const Point& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

BoxDomain::BoxDomain(Point lower, Point upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) {
        throw ParamError("BoxDomain: dimension must be >= 1");
    }
    require_same_dimension(lower_, upper_, "BoxDomain");
    if (!all_finite(lower_) || !all_finite(upper_)) {
        throw ParamError("BoxDomain: bounds must be finite");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] <= upper_[i])) {
            throw ParamError("BoxDomain: lower[" + std::to_string(i) +
                             "] exceeds upper[" + std::to_string(i) + "]");
        }
    }
}

Point BoxDomain::midpoint() const {
    Point m(lower_.size());
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        m[i] = 0.5 * (lower_[i] + upper_[i]);
    }
    return m;
}

Point BoxDomain::corner(std::uint64_t mask) const {
    Point c(lower_.size());
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        c[i] = (mask >> i) & 1 ? upper_[i] : lower_[i];
    }
    return c;
}

double BoxDomain::diameter(Norm norm) const {
    return distance(lower_, upper_, norm);
}

double norm_of(const Point& x, Norm norm) {
    switch (norm) {
        case Norm::euclidean: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return std::sqrt(s);
        }
        case Norm::max: {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::fabs(v));
            return m;
        }
        case Norm::one: {
            double s = 0.0;
            for (double v : x) s += std::fabs(v);
            return s;
        }
    }
    return 0.0;
}

double distance(const Point& x, const Point& y, Norm norm) {
    require_same_dimension(x, y, "distance");
    switch (norm) {
        case Norm::euclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Norm::max: {
            double m = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                m = std::max(m, std::fabs(x[i] - y[i]));
            }
            return m;
        }
        case Norm::one: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += std::fabs(x[i] - y[i]);
            }
            return s;
        }
    }
    return 0.0;
}

Point project(const Point& x, const BoxDomain& E) {
    require_same_dimension(x, E.lower(), "project");
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = std::min(std::max(x[i], E.lower()[i]), E.upper()[i]);
    }
    return out;
}

bool contains(const Point& x, const BoxDomain& E) {
    require_same_dimension(x, E.lower(), "contains");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(E.lower()[i] <= x[i] && x[i] <= E.upper()[i])) return false;
    }
    return true;
}

}  // namespace fixpoint

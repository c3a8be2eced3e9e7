#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fixpoint/errors.hpp"

namespace fixpoint {

/// A point of R^d. Dimension is fixed per experiment; coordinates are kept
/// finite by the validation at the system boundaries (config parsing, domain
/// construction) and by the non-finiteness guards in operator evaluation.
using Point = std::vector<double>;

enum class Norm { euclidean, max, one };

std::string norm_name(Norm n);
Norm norm_from_name(const std::string& name);

bool all_finite(const Point& x);

/// Axis-aligned box, the ambient domain E of every operator and iteration.
/// Closed and convex by construction; degenerate faces (lower[i] == upper[i])
/// are allowed, empty boxes are rejected.
class BoxDomain {
public:
    BoxDomain(Point lower, Point upper);

    int dimension() const { return static_cast<int>(lower_.size()); }
    const Point& lower() const { return lower_; }
    const Point& upper() const { return upper_; }

    Point midpoint() const;
    /// Corner selected by bit mask: bit i set -> upper face on axis i.
    Point corner(std::uint64_t mask) const;
    double diameter(Norm norm) const;

    bool operator==(const BoxDomain& other) const = default;

private:
    Point lower_;
    Point upper_;
};

double norm_of(const Point& x, Norm norm);

/// ||x - y|| in the given norm. Throws DimensionError on mismatched sizes.
double distance(const Point& x, const Point& y, Norm norm);

/// Nearest point of E, coordinatewise clamp. Exact: interior points are
/// returned unchanged, and the result always satisfies contains().
Point project(const Point& x, const BoxDomain& E);

/// Exact floating-point boundary semantics: lower[i] <= x[i] <= upper[i].
bool contains(const Point& x, const BoxDomain& E);

}  // namespace fixpoint

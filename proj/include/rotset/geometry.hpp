#ifndef ROTSET_GEOMETRY_HPP
#define ROTSET_GEOMETRY_HPP

#include <array>
#include <vector>

#include "rotset/potential.hpp"

namespace rotset {

using Point2 = std::array<double, 2>;

// Convex polygon with counterclockwise vertex order. Degenerate inputs
// (segments, points) are flagged rather than rejected.
struct Polygon2 {
    std::vector<Point2> vertices;
    bool degenerate = false; // fewer than 3 vertices or zero signed area

    double support(const Point2& dir) const;            // max dir.v over vertices
    Point2 edge_normal(std::size_t i) const;            // outward unit normal of edge i -> i+1
    bool contains(const Point2& p, double tol = 1e-9) const;
    bool strictly_contains(const Point2& p, double margin = 1e-9) const;
    double signed_area() const;
};

struct Face2 {
    enum class Kind { vertex, edge };
    Kind kind = Kind::vertex;
    std::vector<Point2> points; // one point for a vertex, two for an edge
    Direction direction;

    double distance(const Point2& p) const; // distance from p to the face
};

// Closed arc of unit directions, stored as angles with theta1 <= theta2 and
// width < pi.
struct DirectionSet {
    double theta1 = 0.0;
    double theta2 = 0.0;

    double width() const { return theta2 - theta1; }
    bool contains(const Point2& dir, double tol = 1e-9) const;
};

// Monotone-chain hull; vertices CCW, deduplicated at 1e-12.
Polygon2 convex_hull_2d(std::vector<Point2> points);

// Hull of periodic_orbit_rv over all orbits of period <= max_period (m = 2 only).
Polygon2 rotation_polytope_periodic(const PotentialTable& phi, int max_period);

// The vertex or edge of poly maximizing alpha.w (edge when two adjacent
// vertices tie within tol).
Face2 face_of_direction(const Polygon2& poly, const Direction& alpha, double tol = 1e-10);

// Arc of outward normals between the two edges adjacent to vertex w.
// DomainError if w is not a vertex or poly is degenerate.
DirectionSet direction_set_of_vertex(const Polygon2& poly, const Point2& w, double tol = 1e-10);

struct LocalizedEntropyOptions {
    double tol = 1e-8;       // stop when the dual gradient norm falls below this
    int max_solves = 500;    // cap on transfer solves across all starts
    int check_period = 6;    // period used for the interior membership check
    double solve_tol = 1e-13;
};

struct LocalizedEntropyResult {
    double value = 0.0;              // the dual infimum = H(w)
    std::vector<double> minimizer;   // v* in R^m
    double grad_norm = 0.0;          // ||rv(mu_{v*.Phi}) - w||
    double entropy_at_minimizer = 0.0;
    int solves = 0;
};

// Localized entropy by convex duality: H(w) = inf_v [P(v.Phi) - v.w],
// minimized by multi-start descent. w must be interior to the rotation
// polytope (DomainError otherwise).
LocalizedEntropyResult localized_entropy(const PotentialTable& phi, std::span<const double> w,
                                         const LocalizedEntropyOptions& opts = {});

} // namespace rotset

#endif

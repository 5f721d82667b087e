#ifndef ROTSET_EXAMPLE_POLYGON_HPP
#define ROTSET_EXAMPLE_POLYGON_HPP

#include <functional>
#include <string>

#include "rotset/geometry.hpp"
#include "rotset/potential.hpp"
#include "rotset/word.hpp"

namespace rotset {

// Parameters of the 4-symbol potential whose rotation set is an infinite
// polygon accumulating on the segment {x = 0}. The alphabet splits into
// S1 = {0,1} and S2 = {2,3}; the potential reads the leading run of
// same-class symbols.
struct InfinitePolygonParams {
    std::string name;        // preset name, empty for custom parameter sets
    double a = 0.0;          // right endpoint (a, 0) of the polygon
    int lambda = 3;          // minimal run length that leaves the bulk value
    int depth = 10;          // truncation depth K (potential range)
    std::function<double(int)> x;        // x(k), exponentially decreasing in (0, a)
    std::function<double(double)> ell1;  // non-negative, increasing, strictly concave on [0, a]
    std::function<double(double)> ell2;  // non-positive, decreasing, strictly convex

    Point2 bulk_vertex() const { return {a, 0.0}; }              // w(0)
    Point2 graph_point(int i, int k) const;                      // v_i(k)
    Point2 vertex_limit(int i) const;                            // w_i(inf) = (0, ell_i(0))
};

// Shipped presets "prop55" and "prop56" (they differ only in the constant
// offset of ell). DomainError on an unknown name.
InfinitePolygonParams polygon_preset(const std::string& name, int depth = 10);

struct BuiltPotential {
    PotentialTable table;
    // Value spread over cylinders the truncation cannot resolve:
    // max_i ||v_i(depth - lambda) - w_i(inf)||.
    double truncation_bound = 0.0;
};

// Range-K potential on {0,1,2,3}: words outside both deep runs get (a, 0);
// a leading same-class run of length rho in [lambda, K-2] gets
// v_i(rho+1-lambda); runs reaching K-1 get the limit value w_i(inf).
// Asserts the hull hypotheses (sum x(k) < a and the run-length inequality).
BuiltPotential build_polygon_potential(const InfinitePolygonParams& p);

// Rotation vector of the period-j orbit with j-1 leading S_i symbols:
// w_i(j) = (sum_{k<=j-lambda} v_i(k) + lambda*w(0)) / j for j > lambda, and
// the three-block special form at j = lambda.
Point2 polygon_vertex(int i, int j, const InfinitePolygonParams& p);

// Slope of the chord from w_i(inf) to w_i(j); diverges as j grows.
double vertex_slope(int i, int j, const InfinitePolygonParams& p);

// Symbolwise swap 0<->2, 1<->3 (an involution conjugating S1 and S2).
Word swap_classes(const Word& w);

// True iff Phi(swap(w)) = (phi1(w), -phi2(w)) for every word.
bool check_swap_symmetry(const PotentialTable& phi);

struct MonotonicityCheck {
    bool monotone = false;            // both coordinates of w_1(j) - w_1(j+1) > 0
    bool mirror_monotone = false;     // and w_2 increases
    bool sufficient_condition = false; // ell1(x(1)) > (lambda+1) * ell1(x(2))
};

// Coordinatewise monotone convergence of the vertex sequences over
// j in [j_lo, j_hi] (j_lo > lambda, j_hi <= 10^4).
MonotonicityCheck check_vertex_monotonicity(const InfinitePolygonParams& p, int j_lo, int j_hi);

} // namespace rotset

#endif

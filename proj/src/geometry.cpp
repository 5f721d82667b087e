#include "rotset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotset/errors.hpp"
#include "rotset/transfer.hpp"
#include "rotset/word.hpp"

namespace rotset {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist2(const Point2& a, const Point2& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2, 0.0, 1.0);
    const Point2 proj{a[0] + t * vx, a[1] + t * vy};
    return std::sqrt(dist2(p, proj));
}

} // namespace

double Polygon2::signed_area() const {
    double s = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * s;
}

double Polygon2::support(const Point2& dir) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const Point2& v : vertices) best = std::max(best, dir[0] * v[0] + dir[1] * v[1]);
    return best;
}

Point2 Polygon2::edge_normal(std::size_t i) const {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % vertices.size()];
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len = std::hypot(dx, dy);
    if (len == 0.0) throw DomainError("zero-length polygon edge");
    return {dy / len, -dx / len}; // outward for CCW order
}

bool Polygon2::contains(const Point2& p, double tol) const {
    if (vertices.empty()) return false;
    if (degenerate) {
        if (vertices.size() == 1) return std::sqrt(dist2(p, vertices[0])) <= tol;
        return point_segment_distance(p, vertices.front(), vertices.back()) <= tol;
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        if (cross(vertices[i], vertices[(i + 1) % n], p) < -tol) return false;
    return true;
}

bool Polygon2::strictly_contains(const Point2& p, double margin) const {
    if (degenerate) return false;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % n];
        const double len = std::sqrt(dist2(a, b));
        if (cross(a, b, p) <= margin * len) return false;
    }
    return true;
}

double Face2::distance(const Point2& p) const {
    if (points.size() == 1) return std::sqrt(dist2(p, points[0]));
    return point_segment_distance(p, points[0], points[1]);
}

bool DirectionSet::contains(const Point2& dir, double tol) const {
    const double theta = std::atan2(dir[1], dir[0]);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int k = -1; k <= 1; ++k) {
        const double th = theta + k * two_pi;
        if (th >= theta1 - tol && th <= theta2 + tol) return true;
    }
    return false;
}

Polygon2 convex_hull_2d(std::vector<Point2> points) {
    if (points.empty()) throw ContractError("convex hull of an empty point set");
    constexpr double eps = 1e-12;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [&](const Point2& a, const Point2& b) {
                                 return std::abs(a[0] - b[0]) <= eps && std::abs(a[1] - b[1]) <= eps;
                             }),
                 points.end());

    Polygon2 poly;
    if (points.size() == 1) {
        poly.vertices = points;
        poly.degenerate = true;
        return poly;
    }

    std::vector<Point2> hull;
    hull.reserve(2 * points.size());
    for (const Point2& p : points) { // lower chain
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= eps)
            hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = points.rbegin() + 1; it != points.rend(); ++it) { // upper chain
        while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), *it) <= eps)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back(); // first point repeated

    poly.vertices = std::move(hull);
    if (poly.vertices.size() < 3 || std::abs(poly.signed_area()) <= eps) {
        poly.degenerate = true;
        if (poly.vertices.size() > 2) {
            // Collinear set: keep the two extreme points.
            poly.vertices = {poly.vertices.front(),
                             *std::max_element(poly.vertices.begin(), poly.vertices.end())};
        }
    }
    return poly;
}

Polygon2 rotation_polytope_periodic(const PotentialTable& phi, int max_period) {
    if (phi.dim() != 2) throw ContractError("rotation polytopes are built for 2-D potentials only");
    const auto orbits = enumerate_periodic_orbits(phi.q(), max_period);
    std::vector<Point2> pts;
    pts.reserve(orbits.size());
    for (const auto& o : orbits) {
        const auto rv = periodic_orbit_rv(o, phi);
        pts.push_back({rv[0], rv[1]});
    }
    return convex_hull_2d(std::move(pts));
}

Face2 face_of_direction(const Polygon2& poly, const Direction& alpha, double tol) {
    if (alpha.dim() != 2) throw ContractError("face queries require a 2-D direction");
    if (poly.vertices.empty()) throw ContractError("empty polygon");
    const Point2 dir{alpha.components[0], alpha.components[1]};
    const std::size_t n = poly.vertices.size();
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = dir[0] * poly.vertices[i][0] + dir[1] * poly.vertices[i][1];
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    Face2 face;
    face.direction = alpha;
    const auto score = [&](std::size_t i) {
        return dir[0] * poly.vertices[i][0] + dir[1] * poly.vertices[i][1];
    };
    const std::size_t prev = (arg + n - 1) % n;
    const std::size_t next = (arg + 1) % n;
    if (n >= 2 && best - score(next) <= tol) {
        face.kind = Face2::Kind::edge;
        face.points = {poly.vertices[arg], poly.vertices[next]};
    } else if (n >= 2 && best - score(prev) <= tol) {
        face.kind = Face2::Kind::edge;
        face.points = {poly.vertices[prev], poly.vertices[arg]};
    } else {
        face.kind = Face2::Kind::vertex;
        face.points = {poly.vertices[arg]};
    }
    return face;
}

DirectionSet direction_set_of_vertex(const Polygon2& poly, const Point2& w, double tol) {
    if (poly.degenerate) throw DomainError("direction sets are undefined for degenerate polygons");
    const std::size_t n = poly.vertices.size();
    std::size_t idx = n;
    for (std::size_t i = 0; i < n; ++i)
        if (std::sqrt(dist2(poly.vertices[i], w)) <= tol) {
            idx = i;
            break;
        }
    if (idx == n) throw DomainError("point is not a polygon vertex");

    const Point2 n_in = poly.edge_normal((idx + n - 1) % n);
    const Point2 n_out = poly.edge_normal(idx);
    double th1 = std::atan2(n_in[1], n_in[0]);
    double th2 = std::atan2(n_out[1], n_out[0]);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    while (th2 < th1) th2 += two_pi; // normals advance CCW with the boundary
    DirectionSet set;
    set.theta1 = th1;
    set.theta2 = th2;
    return set;
}

LocalizedEntropyResult localized_entropy(const PotentialTable& phi, std::span<const double> w,
                                         const LocalizedEntropyOptions& opts) {
    const int m = phi.dim();
    if (static_cast<int>(w.size()) != m) throw ContractError("target vector dimension mismatch");

    // Interior membership check against the periodic-orbit polytope.
    if (m == 1) {
        const auto orbits = enumerate_periodic_orbits(phi.q(), opts.check_period);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& o : orbits) {
            const double v = periodic_orbit_rv(o, phi)[0];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (!(w[0] > lo + 1e-9 && w[0] < hi - 1e-9))
            throw DomainError("target is not interior to the rotation interval");
    } else if (m == 2) {
        const Polygon2 poly = rotation_polytope_periodic(phi, opts.check_period);
        if (!poly.strictly_contains({w[0], w[1]}, 1e-9))
            throw DomainError("target is not interior to the rotation polytope");
    }

    int solves = 0;
    const auto objective = [&](const std::vector<double>& v, std::vector<double>& grad) {
        Direction dir;
        dir.components = v; // contraction does not need unit norm here
        ScalarPotential psi(phi.q(), phi.range());
        for (std::uint64_t c = 0; c < phi.table_size(); ++c) {
            const auto val = phi.value(c);
            double s = 0.0;
            for (int d = 0; d < m; ++d) s += v[d] * val[d];
            psi.values[c] = s;
        }
        SolveOptions so;
        so.tol = opts.solve_tol;
        const TransferSolution sol = solve_transfer(psi, so);
        ++solves;
        const auto rv = measure_integral(sol.markov, phi);
        grad.resize(m);
        double obj = sol.pressure;
        for (int d = 0; d < m; ++d) {
            grad[d] = rv[d] - w[d];
            obj -= v[d] * w[d];
        }
        return std::pair{obj, measure_entropy(sol.markov)};
    };

    // Multi-start descent with backtracking; the dual is smooth and convex.
    std::vector<std::vector<double>> starts;
    starts.emplace_back(m, 0.0);
    for (int s = 0; s < 4; ++s) {
        std::vector<double> v(m, 0.0);
        v[s % m] = (s < 2) ? 1.0 : -1.0;
        starts.push_back(std::move(v));
    }

    LocalizedEntropyResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        if (solves >= opts.max_solves) break;
        std::vector<double> v = start, grad;
        auto [f, h] = objective(v, grad);
        double step = 1.0;
        while (solves < opts.max_solves) {
            double gn = 0.0;
            for (double g : grad) gn += g * g;
            gn = std::sqrt(gn);
            if (gn <= opts.tol) break;

            std::vector<double> vn(m), gradn;
            bool moved = false;
            while (solves < opts.max_solves) {
                for (int d = 0; d < m; ++d) vn[d] = v[d] - step * grad[d];
                auto [fn, hn] = objective(vn, gradn);
                if (fn < f - 0.25 * step * gn * gn) {
                    v = vn;
                    f = fn;
                    h = hn;
                    grad = gradn;
                    step *= 2.0;
                    moved = true;
                    break;
                }
                step *= 0.5;
                if (step < 1e-14) break;
            }
            if (!moved) break;
        }
        double gn = 0.0;
        for (double g : grad) gn += g * g;
        gn = std::sqrt(gn);
        if (f < best.value) {
            best.value = f;
            best.minimizer = v;
            best.grad_norm = gn;
            best.entropy_at_minimizer = h;
        }
        if (best.grad_norm <= opts.tol) break; // first convergent start wins
    }
    best.solves = solves;
    return best;
}

} // namespace rotset

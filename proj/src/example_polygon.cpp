#include "rotset/example_polygon.hpp"

#include <cmath>

#include "rotset/errors.hpp"

namespace rotset {

namespace {

int symbol_class(int s) { return s < 2 ? 1 : 2; } // S1 = {0,1}, S2 = {2,3}

} // namespace

Point2 InfinitePolygonParams::graph_point(int i, int k) const {
    if (i != 1 && i != 2) throw ContractError("class index must be 1 or 2");
    if (k < 1) throw ContractError("graph points are indexed from k = 1");
    const double xv = x(k);
    return {xv, i == 1 ? ell1(xv) : ell2(xv)};
}

Point2 InfinitePolygonParams::vertex_limit(int i) const {
    if (i != 1 && i != 2) throw ContractError("class index must be 1 or 2");
    return {0.0, i == 1 ? ell1(0.0) : ell2(0.0)};
}

InfinitePolygonParams polygon_preset(const std::string& name, int depth) {
    InfinitePolygonParams p;
    p.name = name;
    p.a = std::exp(-2.0);
    p.lambda = 3;
    if (depth < p.lambda + 2) throw DomainError("depth must be at least lambda + 2");
    p.depth = depth;
    p.x = [](int k) { return std::exp(7.0 - 10.0 * k); };
    double offset = 0.0;
    if (name == "prop55")
        offset = 1.0 / 130.0;
    else if (name != "prop56")
        throw DomainError("unknown polygon preset: " + name);
    // ell(0) is the limit value; log(0) = -inf makes -1/log(x) continuous at 0.
    p.ell1 = [offset](double xv) { return offset - 1.0 / std::log(xv); };
    p.ell2 = [offset](double xv) { return -(offset - 1.0 / std::log(xv)); };
    return p;
}

BuiltPotential build_polygon_potential(const InfinitePolygonParams& p) {
    const int K = p.depth;
    const int lambda = p.lambda;
    if (K < lambda + 2) throw DomainError("depth must be at least lambda + 2");
    if (!(p.a > 0.0)) throw DomainError("the bulk abscissa must be positive");

    // Hull hypotheses: the graph points stay left of the bulk vertex in total,
    // and the first graph point dominates the later ones strongly enough.
    double xsum = 0.0;
    for (int k = 1; k <= K; ++k) xsum += p.x(k);
    if (!(xsum < p.a)) throw DomainError("hypothesis failed: sum of x(k) must stay below a");
    if (!(p.ell1(p.x(1)) > (lambda + 1) * p.ell1(p.x(2))))
        throw DomainError("hypothesis failed: ell1(x(1)) must exceed (lambda+1)*ell1(x(2))");

    BuiltPotential out{PotentialTable(4, K, 2), 0.0};
    const std::uint64_t n = out.table.table_size();
    const Point2 bulk = p.bulk_vertex();
    std::vector<int> digits(K);
    for (std::uint64_t code = 0; code < n; ++code) {
        std::uint64_t c = code;
        for (int d = K - 1; d >= 0; --d) {
            digits[d] = static_cast<int>(c % 4);
            c /= 4;
        }
        const int cls = symbol_class(digits[0]);
        int run = 1;
        while (run < K && symbol_class(digits[run]) == cls) ++run;

        Point2 v;
        if (run < lambda)
            v = bulk;
        else if (run <= K - 2)
            v = p.graph_point(cls, run + 1 - lambda);
        else
            v = p.vertex_limit(cls);
        out.table.set(code, std::span<const double>(v.data(), 2));
    }

    for (int i = 1; i <= 2; ++i) {
        const Point2 g = p.graph_point(i, K - lambda);
        const Point2 lim = p.vertex_limit(i);
        out.truncation_bound =
            std::max(out.truncation_bound, std::hypot(g[0] - lim[0], g[1] - lim[1]));
    }
    return out;
}

Point2 polygon_vertex(int i, int j, const InfinitePolygonParams& p) {
    if (i != 1 && i != 2) throw ContractError("class index must be 1 or 2");
    const int lambda = p.lambda;
    if (j < lambda) throw DomainError("orbit vertices exist only for j >= lambda");
    const Point2 bulk = p.bulk_vertex();
    if (j == lambda) {
        const Point2 vi = p.graph_point(i, 1);
        const Point2 vo = p.graph_point(3 - i, 1);
        Point2 w;
        for (int d = 0; d < 2; ++d)
            w[d] = (3.0 * (lambda - 1) * bulk[d] + (3 - i) * vi[d] + vo[d]) / (3.0 * lambda);
        return w;
    }
    Point2 acc{lambda * bulk[0], lambda * bulk[1]};
    for (int k = 1; k <= j - lambda; ++k) {
        const Point2 v = p.graph_point(i, k);
        acc[0] += v[0];
        acc[1] += v[1];
    }
    return {acc[0] / j, acc[1] / j};
}

double vertex_slope(int i, int j, const InfinitePolygonParams& p) {
    const Point2 w = polygon_vertex(i, j, p);
    const Point2 lim = p.vertex_limit(i);
    if (w[0] <= 0.0) throw DomainError("vertex chord has a vertical drop");
    return (w[1] - lim[1]) / w[0];
}

Word swap_classes(const Word& w) {
    if (w.q != 4) throw ContractError("the class swap is defined on the 4-symbol alphabet");
    Word out = w;
    for (int& s : out.symbols) s = (s + 2) % 4;
    return out;
}

bool check_swap_symmetry(const PotentialTable& phi) {
    if (phi.q() != 4 || phi.dim() != 2) return false;
    const int r = phi.range();
    for (std::uint64_t code = 0; code < phi.table_size(); ++code) {
        const Word w = Word::from_code(4, r, code);
        const std::uint64_t swapped = swap_classes(w).code();
        const auto v = phi.value(code);
        const auto vs = phi.value(swapped);
        if (vs[0] != v[0] || vs[1] != -v[1]) return false;
    }
    return true;
}

MonotonicityCheck check_vertex_monotonicity(const InfinitePolygonParams& p, int j_lo, int j_hi) {
    if (j_lo <= p.lambda || j_hi < j_lo || j_hi > 10000)
        throw ContractError("monotonicity window must satisfy lambda < j_lo <= j_hi <= 10^4");
    MonotonicityCheck check;
    check.monotone = true;
    check.mirror_monotone = true;
    // Running sums keep the sweep linear in j_hi.
    Point2 acc{p.lambda * p.a, 0.0};
    for (int k = 1; k <= j_lo - p.lambda; ++k) {
        const Point2 v = p.graph_point(1, k);
        acc[0] += v[0];
        acc[1] += v[1];
    }
    Point2 acc2{p.lambda * p.a, 0.0};
    for (int k = 1; k <= j_lo - p.lambda; ++k) {
        const Point2 v = p.graph_point(2, k);
        acc2[0] += v[0];
        acc2[1] += v[1];
    }
    Point2 prev1{acc[0] / j_lo, acc[1] / j_lo};
    Point2 prev2{acc2[0] / j_lo, acc2[1] / j_lo};
    for (int j = j_lo + 1; j <= j_hi; ++j) {
        const Point2 g1 = p.graph_point(1, j - p.lambda);
        const Point2 g2 = p.graph_point(2, j - p.lambda);
        acc[0] += g1[0];
        acc[1] += g1[1];
        acc2[0] += g2[0];
        acc2[1] += g2[1];
        const Point2 w1{acc[0] / j, acc[1] / j};
        const Point2 w2{acc2[0] / j, acc2[1] / j};
        if (!(prev1[0] > w1[0] && prev1[1] > w1[1])) check.monotone = false;
        if (!(prev2[0] > w2[0] && prev2[1] < w2[1])) check.mirror_monotone = false;
        prev1 = w1;
        prev2 = w2;
    }
    check.sufficient_condition = p.ell1(p.x(1)) > (p.lambda + 1) * p.ell1(p.x(2));
    return check;
}

} // namespace rotset

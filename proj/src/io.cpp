#include "rotset/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ios>
#include <limits>
#include <sstream>

#include "rotset/errors.hpp"

namespace rotset {

namespace {

// Strips comments and splits a line into whitespace-separated tokens.
std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream iss(body);
    std::vector<std::string> toks;
    std::string t;
    while (iss >> t) toks.push_back(std::move(t));
    return toks;
}

long parse_int(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("expected an integer for ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(std::string("trailing characters after ") + what + ": '" + tok + "'");
    return v;
}

double parse_double(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("expected a number for ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(std::string("trailing characters after ") + what + ": '" + tok + "'");
    return v;
}

} // namespace

PotentialTable read_potential(std::istream& in) {
    std::string line;
    auto next_tokens = [&](std::vector<std::string>& toks) {
        while (std::getline(in, line)) {
            toks = tokenize(line);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_tokens(toks) || toks.size() != 2 || toks[0] != "potential" || toks[1] != "v1")
        throw ParseError("missing 'potential v1' header");

    long q = -1, r = -1, m = -1;
    while (true) {
        if (!next_tokens(toks)) throw ParseError("unexpected end of file before 'values'");
        if (toks.size() == 1 && toks[0] == "values") break;
        if (toks.size() != 2) throw ParseError("malformed header line: '" + line + "'");
        if (toks[0] == "alphabet_size")
            q = parse_int(toks[1], "alphabet_size");
        else if (toks[0] == "range")
            r = parse_int(toks[1], "range");
        else if (toks[0] == "dim")
            m = parse_int(toks[1], "dim");
        else
            throw ParseError("unknown header key '" + toks[0] + "'");
    }
    if (q < 2 || q > 10) throw ParseError("alphabet_size must be between 2 and 10");
    if (r < 1) throw ParseError("range must be at least 1");
    if (m < 1) throw ParseError("dim must be at least 1");

    PotentialTable phi(static_cast<int>(q), static_cast<int>(r), static_cast<int>(m));
    std::vector<std::uint8_t> seen(phi.table_size(), 0);
    std::vector<double> row(m);
    while (next_tokens(toks)) {
        if (toks.size() != static_cast<std::size_t>(m) + 1)
            throw ParseError("value line needs a word and " + std::to_string(m) +
                             " numbers: '" + line + "'");
        const std::string& wtok = toks[0];
        if (static_cast<long>(wtok.size()) != r)
            throw ParseError("word '" + wtok + "' is not " + std::to_string(r) + " symbols long");
        std::uint64_t code = 0;
        for (char c : wtok) {
            if (c < '0' || c >= '0' + q)
                throw ParseError("symbol '" + std::string(1, c) + "' outside the alphabet in '" +
                                 wtok + "'");
            code = code * q + static_cast<std::uint64_t>(c - '0');
        }
        if (seen[code]) throw ParseError("duplicate entry for word '" + wtok + "'");
        seen[code] = 1;
        for (long d = 0; d < m; ++d) row[d] = parse_double(toks[d + 1], "value");
        phi.set(code, row);
    }

    std::vector<std::string> missing;
    for (std::uint64_t code = 0; code < phi.table_size() && missing.size() < 5; ++code)
        if (!seen[code]) missing.push_back(Word::from_code(static_cast<int>(q),
                                                           static_cast<int>(r), code).digits());
    if (!missing.empty()) {
        std::string msg = "partial table; missing words:";
        for (const auto& w : missing) msg += " " + w;
        const std::uint64_t total =
            phi.table_size() - static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), 1));
        if (total > missing.size())
            msg += " (and " + std::to_string(total - missing.size()) + " more)";
        throw ParseError(msg);
    }
    phi.validate();
    return phi;
}

PotentialTable read_potential_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open potential file: " + path);
    return read_potential(in);
}

void write_potential(std::ostream& out, const PotentialTable& phi) {
    out << "potential v1\n"
        << "alphabet_size " << phi.q() << "\n"
        << "range " << phi.range() << "\n"
        << "dim " << phi.dim() << "\n"
        << "values\n";
    out << std::setprecision(17);
    for (std::uint64_t code = 0; code < phi.table_size(); ++code) {
        out << Word::from_code(phi.q(), phi.range(), code).digits();
        for (double v : phi.value(code)) out << ' ' << v;
        out << '\n';
    }
}

void write_polygon_csv(std::ostream& out, const Polygon2& poly) {
    out << "polygon_v1,index,x,y\n" << std::setprecision(17);
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
        out << "," << i << "," << poly.vertices[i][0] << "," << poly.vertices[i][1] << "\n";
}

void write_trace_csv(std::ostream& out, const AnnealingTrace& trace, const Direction& alpha,
                     double hyperplane_offset) {
    out << "trace_v1,t";
    const int m = trace.entries.empty() ? 0 : static_cast<int>(trace.entries.front().rv.size());
    for (int d = 0; d < m; ++d) out << ",rv_" << (d + 1);
    out << ",entropy,pressure,hyperplane_dist\n";
    out << std::setprecision(17);
    for (const auto& e : trace.entries) {
        out << "," << e.t;
        for (double v : e.rv) out << "," << v;
        double dist = hyperplane_offset;
        for (int d = 0; d < m && d < alpha.dim(); ++d) dist -= alpha.components[d] * e.rv[d];
        out << "," << e.entropy << "," << e.pressure << "," << std::abs(dist) << "\n";
    }
}

namespace {

struct SvgMapper {
    double x0 = 0.0, y0 = 0.0, sx = 1.0, sy = 1.0;
    static constexpr double W = 800.0, H = 600.0, pad = 60.0;

    explicit SvgMapper(const std::vector<Point2>& pts) {
        double lx = std::numeric_limits<double>::infinity(), hx = -lx, ly = lx, hy = -lx;
        for (const auto& p : pts) {
            lx = std::min(lx, p[0]);
            hx = std::max(hx, p[0]);
            ly = std::min(ly, p[1]);
            hy = std::max(hy, p[1]);
        }
        if (!(hx > lx)) hx = lx + 1.0;
        if (!(hy > ly)) hy = ly + 1.0;
        x0 = lx;
        y0 = ly;
        sx = (W - 2 * pad) / (hx - lx);
        sy = (H - 2 * pad) / (hy - ly);
    }
    double mx(double x) const { return pad + (x - x0) * sx; }
    double my(double y) const { return H - pad - (y - y0) * sy; } // SVG y grows downward
};

void svg_open(std::ostream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"monospace\" font-size=\"11\">\n";
}

void svg_polygon(std::ostream& out, const Polygon2& poly, const SvgMapper& map) {
    out << "  <polygon fill=\"#e8f0fe\" stroke=\"#1a5fb4\" stroke-width=\"1.5\" points=\"";
    for (const auto& v : poly.vertices) out << map.mx(v[0]) << ',' << map.my(v[1]) << ' ';
    out << "\"/>\n";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        const auto& v = poly.vertices[i];
        out << "  <circle cx=\"" << map.mx(v[0]) << "\" cy=\"" << map.my(v[1])
            << "\" r=\"3\" fill=\"#1a5fb4\"/>\n"
            << "  <text x=\"" << map.mx(v[0]) + 5 << "\" y=\"" << map.my(v[1]) - 5 << "\">v" << i
            << "</text>\n";
    }
}

} // namespace

void write_polygon_svg(std::ostream& out, const Polygon2& poly,
                       const std::vector<std::pair<std::string, Point2>>& overlays) {
    std::vector<Point2> all = poly.vertices;
    for (const auto& [label, p] : overlays) all.push_back(p);
    const SvgMapper map(all);
    svg_open(out);
    svg_polygon(out, poly, map);
    for (const auto& [label, p] : overlays)
        out << "  <circle cx=\"" << map.mx(p[0]) << "\" cy=\"" << map.my(p[1])
            << "\" r=\"3\" fill=\"#c01c28\"/>\n"
            << "  <text x=\"" << map.mx(p[0]) + 5 << "\" y=\"" << map.my(p[1]) + 12
            << "\" fill=\"#c01c28\">" << label << "</text>\n";
    out << "</svg>\n";
}

void write_trace_svg(std::ostream& out, const Polygon2& poly, const AnnealingTrace& trace) {
    std::vector<Point2> all = poly.vertices;
    for (const auto& e : trace.entries)
        if (e.rv.size() == 2) all.push_back({e.rv[0], e.rv[1]});
    const SvgMapper map(all);
    svg_open(out);
    svg_polygon(out, poly, map);
    out << "  <polyline fill=\"none\" stroke=\"#c01c28\" stroke-width=\"1\" points=\"";
    for (const auto& e : trace.entries)
        if (e.rv.size() == 2) out << map.mx(e.rv[0]) << ',' << map.my(e.rv[1]) << ' ';
    out << "\"/>\n";
    if (!trace.entries.empty() && trace.entries.back().rv.size() == 2) {
        const auto& rv = trace.entries.back().rv;
        out << "  <circle cx=\"" << map.mx(rv[0]) << "\" cy=\"" << map.my(rv[1])
            << "\" r=\"4\" fill=\"#c01c28\"/>\n"
            << "  <text x=\"" << map.mx(rv[0]) + 6 << "\" y=\"" << map.my(rv[1]) + 4
            << "\" fill=\"#c01c28\">limit</text>\n";
    }
    out << "</svg>\n";
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t content_hash(const PotentialTable& phi, const std::string& config) {
    const std::int64_t dims[3] = {phi.q(), phi.range(), phi.dim()};
    std::uint64_t h = fnv1a(dims, sizeof(dims));
    h = fnv1a(phi.raw().data(), phi.raw().size() * sizeof(double), h);
    h = fnv1a(config.data(), config.size(), h);
    return h;
}

} // namespace rotset

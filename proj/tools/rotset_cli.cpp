// Command-line surface for the rotation-set library: pressure solves,
// equilibrium chains, rotation polygons, zero-temperature annealing,
// localized entropy, and the shipped infinite-polygon presets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rotset/anneal.hpp"
#include "rotset/cycle.hpp"
#include "rotset/errors.hpp"
#include "rotset/example_polygon.hpp"
#include "rotset/geometry.hpp"
#include "rotset/io.hpp"
#include "rotset/transfer.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rotset;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct SourceOptions {
    std::string potential_path;
    std::string preset;
    int depth = 10;
};

void add_source_flags(CLI::App* cmd, SourceOptions& src) {
    auto* pot = cmd->add_option("--potential", src.potential_path, "potential file to load");
    auto* pre = cmd->add_option("--preset", src.preset, "built-in potential (prop55, prop56)");
    cmd->add_option("--depth", src.depth, "truncation depth for presets")->capture_default_str();
    pot->excludes(pre);
}

PotentialTable load_potential(const SourceOptions& src) {
    if (!src.potential_path.empty()) return read_potential_file(src.potential_path);
    if (!src.preset.empty())
        return build_polygon_potential(polygon_preset(src.preset, src.depth)).table;
    throw DomainError("one of --potential or --preset is required");
}

Direction parse_direction(const std::string& text) {
    std::vector<double> comps;
    std::istringstream iss(text);
    std::string tok;
    while (std::getline(iss, tok, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad direction component '" + tok + "'");
        }
        if (pos != tok.size()) throw ParseError("bad direction component '" + tok + "'");
        comps.push_back(v);
    }
    if (comps.empty()) throw ParseError("empty direction");
    return Direction::of(std::move(comps));
}

std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_string(const SourceOptions& src, const std::string& extra) {
    return "preset=" + src.preset + ";depth=" + std::to_string(src.depth) + ";" + extra;
}

// Advisory cache: outputs land under out_dir with a content-hash suffix, so a
// rerun with identical inputs can skip the solve. Deleting the directory is
// always safe.
struct OutputSlot {
    fs::path csv, svg;
    bool cached = false;
};

std::optional<OutputSlot> output_slot(const std::string& out_dir, const std::string& kind,
                                      std::uint64_t hash, bool want_svg) {
    if (out_dir.empty()) return std::nullopt;
    fs::create_directories(out_dir);
    OutputSlot slot;
    slot.csv = fs::path(out_dir) / (kind + "-" + hex(hash) + ".csv");
    slot.svg = fs::path(out_dir) / (kind + "-" + hex(hash) + ".svg");
    slot.cached = fs::exists(slot.csv) && (!want_svg || fs::exists(slot.svg));
    return slot;
}

void print_vector(const char* key, const std::vector<double>& v) {
    std::cout << key;
    for (double x : v) std::cout << ' ' << x;
    std::cout << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"thermodynamic formalism on full shifts: pressure, rotation sets, annealing"};
    app.require_subcommand(1);
    std::cout.precision(10);

    SourceOptions src;
    std::string direction_text = "1";
    std::string target_text;
    std::string out_dir;
    bool want_svg = false;
    double t_scale = 1.0, t_max = 400.0, t_growth = 1.5;
    int max_period = 6;

    auto* cmd_pressure = app.add_subcommand("pressure", "pressure of t*(alpha.Phi)");
    add_source_flags(cmd_pressure, src);
    cmd_pressure->add_option("--direction", direction_text, "contraction direction a,b,...")
        ->capture_default_str();
    cmd_pressure->add_option("--t", t_scale, "inverse temperature")->capture_default_str();

    auto* cmd_equilibrium = app.add_subcommand("equilibrium", "equilibrium Gibbs chain");
    add_source_flags(cmd_equilibrium, src);
    cmd_equilibrium->add_option("--direction", direction_text, "contraction direction")
        ->capture_default_str();
    cmd_equilibrium->add_option("--t", t_scale, "inverse temperature")->capture_default_str();

    auto* cmd_rotset = app.add_subcommand("rotset", "rotation polygon from periodic orbits");
    add_source_flags(cmd_rotset, src);
    cmd_rotset->add_option("--max-period", max_period, "orbit period bound")->capture_default_str();
    cmd_rotset->add_option("--out", out_dir, "output directory");
    cmd_rotset->add_flag("--svg", want_svg, "also draw an SVG");

    auto* cmd_anneal = app.add_subcommand("anneal", "zero-temperature limit in a direction");
    add_source_flags(cmd_anneal, src);
    cmd_anneal->add_option("--direction", direction_text, "direction a,b")->required();
    cmd_anneal->add_option("--t-max", t_max, "schedule cap")->capture_default_str();
    cmd_anneal->add_option("--t-growth", t_growth, "schedule growth factor")->capture_default_str();
    cmd_anneal->add_option("--max-period", max_period, "period bound for the overlay polygon")
        ->capture_default_str();
    cmd_anneal->add_option("--out", out_dir, "output directory");
    cmd_anneal->add_flag("--svg", want_svg, "also draw an SVG");

    auto* cmd_locent = app.add_subcommand("localized-entropy", "entropy at a rotation vector");
    add_source_flags(cmd_locent, src);
    cmd_locent->add_option("--target", target_text, "rotation vector w1,w2,...")->required();

    auto* cmd_example = app.add_subcommand("example1", "infinite-polygon preset summary");
    cmd_example->add_option("--preset", src.preset, "prop55 or prop56")->capture_default_str();
    cmd_example->add_option("--depth", src.depth, "truncation depth")->capture_default_str();
    cmd_example->add_option("--max-period", max_period, "orbit period bound")
        ->capture_default_str();
    cmd_example->add_option("--out", out_dir, "output directory");
    cmd_example->add_flag("--svg", want_svg, "also draw an SVG");

    CLI11_PARSE(app, argc, argv);

    if (cmd_pressure->parsed() || cmd_equilibrium->parsed()) {
        const PotentialTable phi = load_potential(src);
        const Direction alpha = parse_direction(direction_text);
        const TransferSolution sol = solve_transfer(scaled(contract(phi, alpha), t_scale));
        std::cout << "pressure " << sol.pressure << '\n'
                  << "entropy " << measure_entropy(sol.markov) << '\n';
        print_vector("rv", measure_integral(sol.markov, phi));
        if (cmd_equilibrium->parsed()) {
            const MarkovMeasure& mu = sol.markov;
            std::cout << "states " << mu.state_count() << '\n';
            if (mu.state_count() * mu.q <= 64)
                for (std::uint64_t u = 0; u < mu.state_count(); ++u) {
                    std::cout << "state " << u << " pi " << mu.stationary[u] << " emit";
                    for (int a = 0; a < mu.q; ++a) std::cout << ' ' << mu.emit[u * mu.q + a];
                    std::cout << '\n';
                }
        }
        return 0;
    }

    if (cmd_rotset->parsed() || cmd_example->parsed()) {
        if (cmd_example->parsed() && src.preset.empty()) src.preset = "prop55";
        if (cmd_example->parsed() && max_period == 6) max_period = src.depth - 1;
        const PotentialTable phi = load_potential(src);
        const std::string cfg = config_string(src, "max_period=" + std::to_string(max_period));
        const auto slot = output_slot(out_dir, "polygon", content_hash(phi, cfg), want_svg);
        std::cout << "vertices ";
        Polygon2 poly;
        if (slot && slot->cached) {
            std::cout << "cached " << slot->csv.string() << '\n';
            return 0;
        }
        poly = rotation_polytope_periodic(phi, max_period);
        std::cout << poly.vertices.size() << (poly.degenerate ? " degenerate" : "") << '\n';
        for (const auto& v : poly.vertices) std::cout << "vertex " << v[0] << ' ' << v[1] << '\n';

        std::vector<std::pair<std::string, Point2>> overlays;
        if (!src.preset.empty()) {
            const auto p = polygon_preset(src.preset, src.depth);
            overlays.emplace_back("w(0)", p.bulk_vertex());
            for (int i = 1; i <= 2; ++i) {
                overlays.emplace_back("w_" + std::to_string(i) + "(inf)", p.vertex_limit(i));
                for (int j = p.lambda; j <= max_period; ++j)
                    overlays.emplace_back("w_" + std::to_string(i) + "(" + std::to_string(j) + ")",
                                          polygon_vertex(i, j, p));
            }
        }
        if (cmd_example->parsed() && !src.preset.empty()) {
            const auto p = polygon_preset(src.preset, src.depth);
            for (int j : {10, 100, 1000})
                std::cout << "slope_w1(" << j << ") " << vertex_slope(1, j, p) << '\n';
        }
        if (slot) {
            std::ofstream csv(slot->csv);
            write_polygon_csv(csv, poly);
            if (want_svg) {
                std::ofstream svg(slot->svg);
                write_polygon_svg(svg, poly, overlays);
            }
            std::cout << "wrote " << slot->csv.string() << '\n';
        }
        return 0;
    }

    if (cmd_anneal->parsed()) {
        const PotentialTable phi = load_potential(src);
        const Direction alpha = parse_direction(direction_text);
        GroundStateOptions opts;
        opts.t_max = t_max;
        opts.growth = t_growth;
        const GroundStateReport report = ground_state(phi, alpha, opts);
        std::cout << "converged " << (report.converged ? "yes" : "no") << '\n';
        print_vector("limit_rv", report.limit_rv);
        std::cout << "limit_entropy " << report.limit_entropy << '\n'
                  << "steps " << report.trace.entries.size() << '\n';
        for (const auto& cls : report.closed_classes)
            std::cout << "closed_class states " << cls.states.size() << " weight " << cls.weight
                      << '\n';
        for (const auto& f : report.flags) std::cout << "flag " << f << '\n';

        const double offset = support_value(phi, alpha);
        std::cout << "support_value " << offset << '\n';
        if (!out_dir.empty()) {
            const std::string cfg =
                config_string(src, "alpha=" + direction_text + ";t_max=" + std::to_string(t_max) +
                                       ";t_growth=" + std::to_string(t_growth));
            const auto slot = output_slot(out_dir, "trace", content_hash(phi, cfg), want_svg);
            std::ofstream csv(slot->csv);
            write_trace_csv(csv, report.trace, alpha, offset);
            if (want_svg && phi.dim() == 2) {
                const Polygon2 poly = rotation_polytope_periodic(phi, max_period);
                std::ofstream svg(slot->svg);
                write_trace_svg(svg, poly, report.trace);
            }
            std::cout << "wrote " << slot->csv.string() << '\n';
        }
        if (!report.converged) return kExitNumeric;
        return 0;
    }

    if (cmd_locent->parsed()) {
        const PotentialTable phi = load_potential(src);
        std::vector<double> target;
        {
            std::istringstream iss(target_text);
            std::string tok;
            while (std::getline(iss, tok, ',')) {
                std::size_t pos = 0;
                double v = 0.0;
                try {
                    v = std::stod(tok, &pos);
                } catch (const std::exception&) {
                    throw ParseError("bad target component '" + tok + "'");
                }
                if (pos != tok.size()) throw ParseError("bad target component '" + tok + "'");
                target.push_back(v);
            }
            if (target.empty()) throw ParseError("empty target");
        }
        const LocalizedEntropyResult res = localized_entropy(phi, target);
        std::cout << "entropy " << res.value << '\n';
        print_vector("dual_minimizer", res.minimizer);
        std::cout << "residual " << res.grad_norm << '\n' << "solves " << res.solves << '\n';
        if (res.grad_norm > 1e-6) return kExitNumeric;
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rotset::IterationError& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.last_residual << ")\n";
        return kExitNumeric;
    } catch (const rotset::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

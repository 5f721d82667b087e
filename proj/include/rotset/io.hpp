#ifndef ROTSET_IO_HPP
#define ROTSET_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "rotset/anneal.hpp"
#include "rotset/geometry.hpp"
#include "rotset/potential.hpp"
#include "rotset/transfer.hpp"

namespace rotset {

// Potential file format (human-readable, diffable):
//   potential v1
//   alphabet_size Q
//   range R
//   dim M
//   values
//   <word digits> <v1> ... <vM>     (one line per word, all q^R words)
// '#' starts a comment. Parse rejects partial tables naming the missing
// words and duplicate entries.
PotentialTable read_potential(std::istream& in);
PotentialTable read_potential_file(const std::string& path);
void write_potential(std::ostream& out, const PotentialTable& phi);

// CSV emitters. The first line is a versioned column contract.
void write_polygon_csv(std::ostream& out, const Polygon2& poly);
void write_trace_csv(std::ostream& out, const AnnealingTrace& trace, const Direction& alpha,
                     double hyperplane_offset);

// SVG drawings (scale-free, labeled vertices).
void write_polygon_svg(std::ostream& out, const Polygon2& poly,
                       const std::vector<std::pair<std::string, Point2>>& overlays = {});
void write_trace_svg(std::ostream& out, const Polygon2& poly, const AnnealingTrace& trace);

// FNV-1a content hash used for the advisory output cache.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 14695981039346656037ull);
std::uint64_t content_hash(const PotentialTable& phi, const std::string& config);

} // namespace rotset

#endif

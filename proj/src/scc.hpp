#ifndef ROTSET_SCC_HPP
#define ROTSET_SCC_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace rotset::detail {

// Strongly connected components of a masked de Bruijn graph on S states with
// q out-edges per state (edge u -> (u*q+a) mod S present iff keep(u*q+a)).
// Returns component ids (0-based) per state; ids are assigned in an
// implementation-defined but deterministic order.
std::vector<std::uint32_t> strongly_connected_components(
    std::uint64_t S, int q, const std::function<bool(std::uint64_t)>& keep,
    std::uint32_t* component_count);

} // namespace rotset::detail

#endif

#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace scardo {

/// Interaction topology of the pairwise protocol: the complete graph
/// (every agent neighbors every other) or an explicit undirected
/// adjacency. Copies are cheap; adjacency is shared immutably.
class InteractionGraph {
public:
    static InteractionGraph complete() { return InteractionGraph(); }

    /// Builds an undirected graph over `agent_count` agents from 0-based
    /// edges. Self-loops are rejected; duplicate edges collapse.
    static InteractionGraph from_edges(
        std::size_t agent_count,
        std::span<const std::pair<std::size_t, std::size_t>> edges);

    /// Parses "u v" lines with 1-based agent ids; blank lines and lines
    /// starting with '#' are skipped.
    static InteractionGraph parse_edge_list(std::istream& in, std::size_t agent_count);

    bool is_complete() const { return adjacency_ == nullptr; }

    /// Agent count of an explicit graph (0 for the complete graph, whose
    /// size is the population's).
    std::size_t agent_count() const { return adjacency_ ? adjacency_->size() : 0; }

    std::span<const std::uint32_t> neighbors(std::size_t agent) const {
        return (*adjacency_)[agent];
    }

private:
    InteractionGraph() = default;
    explicit InteractionGraph(std::vector<std::vector<std::uint32_t>> adjacency)
        : adjacency_(std::make_shared<const std::vector<std::vector<std::uint32_t>>>(
              std::move(adjacency))) {}

    std::shared_ptr<const std::vector<std::vector<std::uint32_t>>> adjacency_;
};

} // namespace scardo

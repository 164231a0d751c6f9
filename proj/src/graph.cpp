#include "scardo/graph.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "scardo/errors.hpp"

namespace scardo {

InteractionGraph InteractionGraph::from_edges(
    std::size_t agent_count, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    std::vector<std::vector<std::uint32_t>> adjacency(agent_count);
    for (const auto& [u, v] : edges) {
        if (u >= agent_count || v >= agent_count) {
            throw ValidationError("edge (" + std::to_string(u + 1) + ", " +
                                  std::to_string(v + 1) + ") references an agent outside [1.." +
                                  std::to_string(agent_count) + "]");
        }
        if (u == v) {
            throw ValidationError("self-loop on agent " + std::to_string(u + 1) +
                                  " is not allowed");
        }
        adjacency[u].push_back(static_cast<std::uint32_t>(v));
        adjacency[v].push_back(static_cast<std::uint32_t>(u));
    }
    for (auto& list : adjacency) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return InteractionGraph(std::move(adjacency));
}

InteractionGraph InteractionGraph::parse_edge_list(std::istream& in, std::size_t agent_count) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        long long u = 0;
        long long v = 0;
        if (!(fields >> u >> v) || u < 1 || v < 1) {
            throw ValidationError("edge list line " + std::to_string(line_number) +
                                  ": expected two 1-based agent ids, got \"" + line + "\"");
        }
        edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
    }
    return from_edges(agent_count, edges);
}

} // namespace scardo

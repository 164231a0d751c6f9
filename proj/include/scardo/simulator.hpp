#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scardo/attribute_space.hpp"
#include "scardo/graph.hpp"
#include "scardo/ranking.hpp"
#include "scardo/rng.hpp"
#include "scardo/transition.hpp"

namespace scardo {

/// N agents with their current corteges, the derived per-cortege counts,
/// and the interaction topology. Agents are conserved: the counts always
/// sum to the agent count.
class PopulationState {
public:
    static PopulationState from_corteges(SpacePtr space, std::vector<std::uint32_t> corteges,
                                         InteractionGraph graph = InteractionGraph::complete());

    /// Builds the population from target per-cortege counts; agents are
    /// assigned deterministically in index order (the first counts[0]
    /// agents get cortege 0, and so on).
    static PopulationState from_counts(SpacePtr space, std::span<const std::int64_t> counts,
                                       InteractionGraph graph = InteractionGraph::complete());

    const AttributeSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    std::size_t agent_count() const { return corteges_.size(); }
    std::uint64_t iteration() const { return iteration_; }
    std::uint32_t cortege_of(std::size_t agent) const { return corteges_[agent]; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    const InteractionGraph& graph() const { return graph_; }

    /// Recomputes counts from the agent list and compares.
    bool counts_consistent() const;

private:
    PopulationState(SpacePtr space, std::vector<std::uint32_t> corteges, InteractionGraph graph);

    friend void step(PopulationState&, const TransitionTensor&, const RankingMatrix&, Rng&);

    SpacePtr space_;
    std::vector<std::uint32_t> corteges_;
    std::vector<std::int64_t> counts_;
    InteractionGraph graph_;
    std::uint64_t iteration_ = 0;
};

/// One iteration of the one-to-one protocol: a uniformly random recipient
/// interacts with a uniformly random neighbor; the ranking gate passes
/// with probability f(s, l); on success the recipient's new cortege is
/// drawn from the tensor row (s, l) by inverse CDF.
///
/// Exactly four RNG draws are consumed per iteration, in the fixed order
/// recipient, donor, gate, outcome, whether or not the gate passes.
/// Blocked interactions and isolated recipients still advance the
/// iteration counter.
void step(PopulationState& state, const TransitionTensor& tensor, const RankingMatrix& ranking,
          Rng& rng);

/// Time-indexed record of a stochastic run: per-sample iteration numbers,
/// scaled times tau = t/N, and count vectors.
struct SimTrajectory {
    SpacePtr space;
    std::size_t agent_count = 0;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::vector<std::uint64_t> iterations;
    std::vector<double> taus;
    std::vector<std::vector<std::int64_t>> counts;
};

struct SimRunParams {
    std::uint64_t iterations = 0;
    /// Iterations between samples; 0 records only the initial and final
    /// states. The final iteration is always sampled.
    std::uint64_t sample_interval = 0;
    std::uint64_t seed = 0;
    std::string config_digest;
};

/// Runs the protocol from a copy of `initial`. Deterministic given the
/// seed; samples at t = 0, every sample_interval, and the final iteration.
SimTrajectory run(PopulationState initial, const TransitionTensor& tensor,
                  const RankingMatrix& ranking, const SimRunParams& params);

/// Donor-probability denominator of the expectation formula.
enum class DonorNormalization {
    exclude_recipient, ///< (Y_l - d_{s,l}) / (N - 1): exact for the protocol
    population,        ///< (Y_l - d_{s,l}) / N: the large-N form
};

/// Exact expected one-step change E[Y(t+1)] - Y(t), complete graph only.
std::vector<double> one_step_expectation(
    const PopulationState& state, const TransitionTensor& tensor, const RankingMatrix& ranking,
    DonorNormalization normalization = DonorNormalization::exclude_recipient);

/// Per-value agent counts of one attribute, computed from a cortege-count
/// vector. Handy for conservation checks on static attributes.
std::vector<std::int64_t> attribute_value_counts(const AttributeSpace& space,
                                                 std::span<const std::int64_t> counts,
                                                 std::size_t attribute);

} // namespace scardo

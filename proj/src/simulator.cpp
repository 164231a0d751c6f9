#include "scardo/simulator.hpp"

#include <cassert>
#include <numeric>

#include "scardo/errors.hpp"

namespace scardo {

PopulationState::PopulationState(SpacePtr space, std::vector<std::uint32_t> corteges,
                                 InteractionGraph graph)
    : space_(std::move(space)), corteges_(std::move(corteges)), graph_(std::move(graph)) {
    const std::size_t m = space_->cortege_count();
    counts_.assign(m, 0);
    for (std::size_t agent = 0; agent < corteges_.size(); ++agent) {
        const std::uint32_t q = corteges_[agent];
        if (q >= m) {
            throw ValidationError("agent " + std::to_string(agent + 1) + " has cortege index " +
                                  std::to_string(q + 1) + ", out of range [1.." +
                                  std::to_string(m) + "]");
        }
        ++counts_[q];
    }
    if (!graph_.is_complete() && graph_.agent_count() != corteges_.size()) {
        throw ValidationError("graph covers " + std::to_string(graph_.agent_count()) +
                              " agents but the population has " +
                              std::to_string(corteges_.size()));
    }
}

PopulationState PopulationState::from_corteges(SpacePtr space,
                                               std::vector<std::uint32_t> corteges,
                                               InteractionGraph graph) {
    return PopulationState(std::move(space), std::move(corteges), std::move(graph));
}

PopulationState PopulationState::from_counts(SpacePtr space, std::span<const std::int64_t> counts,
                                             InteractionGraph graph) {
    const std::size_t m = space->cortege_count();
    if (counts.size() != m) {
        throw ValidationError("count vector has length " + std::to_string(counts.size()) +
                              ", expected " + std::to_string(m));
    }
    std::vector<std::uint32_t> corteges;
    for (std::size_t q = 0; q < m; ++q) {
        if (counts[q] < 0) {
            throw ValidationError("count for cortege " + std::to_string(q + 1) +
                                  " is negative");
        }
        corteges.insert(corteges.end(), static_cast<std::size_t>(counts[q]),
                        static_cast<std::uint32_t>(q));
    }
    return PopulationState(std::move(space), std::move(corteges), std::move(graph));
}

bool PopulationState::counts_consistent() const {
    std::vector<std::int64_t> recount(space_->cortege_count(), 0);
    for (const std::uint32_t q : corteges_) ++recount[q];
    return recount == counts_;
}

void step(PopulationState& state, const TransitionTensor& tensor, const RankingMatrix& ranking,
          Rng& rng) {
    const std::size_t n = state.agent_count();
    if (!tensor.space().same_shape(state.space()) || !ranking.space().same_shape(state.space())) {
        throw ValidationError("tensor/ranking attribute space does not match the population's");
    }
    if (state.graph_.is_complete() && n < 2) {
        throw ValidationError("the complete-graph protocol needs at least 2 agents");
    }

    // Fixed draw discipline: 4 draws per iteration, consumed up front.
    const double u_recipient = rng.next_double();
    const double u_donor = rng.next_double();
    const double u_gate = rng.next_double();
    const double u_outcome = rng.next_double();

    const std::size_t recipient = Rng::map_index(u_recipient, n);
    std::size_t donor;
    if (state.graph_.is_complete()) {
        donor = Rng::map_index(u_donor, n - 1);
        if (donor >= recipient) ++donor;
    } else {
        const auto neighbors = state.graph_.neighbors(recipient);
        if (neighbors.empty()) {
            ++state.iteration_; // recorded no-op: the clock counts attempts
            return;
        }
        donor = neighbors[Rng::map_index(u_donor, neighbors.size())];
    }

    const std::uint32_t s = state.corteges_[recipient];
    const std::uint32_t l = state.corteges_[donor];
    if (u_gate < ranking.probability(s, l)) {
        const std::size_t k = tensor.sample_outcome(s, l, u_outcome);
        if (k != s) {
            --state.counts_[s];
            ++state.counts_[k];
            state.corteges_[recipient] = static_cast<std::uint32_t>(k);
        }
    }
    ++state.iteration_;

    assert(std::accumulate(state.counts_.begin(), state.counts_.end(), std::int64_t{0}) ==
           static_cast<std::int64_t>(n));
}

SimTrajectory run(PopulationState state, const TransitionTensor& tensor,
                  const RankingMatrix& ranking, const SimRunParams& params) {
    const auto n = static_cast<double>(state.agent_count());
    Rng rng(params.seed);

    SimTrajectory traj;
    traj.space = state.space_ptr();
    traj.agent_count = state.agent_count();
    traj.seed = params.seed;
    traj.config_digest = params.config_digest;

    const auto record = [&] {
        traj.iterations.push_back(state.iteration());
        traj.taus.push_back(static_cast<double>(state.iteration()) / n);
        traj.counts.push_back(state.counts());
    };

    record();
    for (std::uint64_t i = 1; i <= params.iterations; ++i) {
        step(state, tensor, ranking, rng);
        if ((params.sample_interval != 0 && i % params.sample_interval == 0) ||
            i == params.iterations) {
            record();
        }
    }
    return traj;
}

std::vector<double> one_step_expectation(const PopulationState& state,
                                         const TransitionTensor& tensor,
                                         const RankingMatrix& ranking,
                                         DonorNormalization normalization) {
    if (!state.graph().is_complete()) {
        throw ValidationError("one-step expectation is defined on the complete graph only");
    }
    if (!tensor.space().same_shape(state.space()) || !ranking.space().same_shape(state.space())) {
        throw ValidationError("tensor/ranking attribute space does not match the population's");
    }
    const std::size_t n = state.agent_count();
    if (n < 2) {
        throw ValidationError("the complete-graph protocol needs at least 2 agents");
    }
    const std::size_t m = state.space().cortege_count();
    const auto& counts = state.counts();
    const double denominator =
        static_cast<double>(n) *
        static_cast<double>(normalization == DonorNormalization::exclude_recipient ? n - 1 : n);

    std::vector<double> expectation(m, 0.0);
    for (std::size_t s = 0; s < m; ++s) {
        if (counts[s] == 0) continue;
        const auto y_s = static_cast<double>(counts[s]);
        for (std::size_t l = 0; l < m; ++l) {
            const auto y_l = static_cast<double>(counts[l] - (s == l ? 1 : 0));
            if (y_l == 0.0) continue;
            const double w = y_s * y_l * ranking.probability(s, l) / denominator;
            if (w == 0.0) continue;
            // sum_k p * (d_{k,q} - d_{s,q}) contributes p to q=k and -1 to q=s.
            tensor.for_each_outcome(s, l, [&](std::size_t k, double p) {
                expectation[k] += w * p;
            });
            expectation[s] -= w;
        }
    }
    return expectation;
}

std::vector<std::int64_t> attribute_value_counts(const AttributeSpace& space,
                                                 std::span<const std::int64_t> counts,
                                                 std::size_t attribute) {
    if (counts.size() != space.cortege_count()) {
        throw ValidationError("count vector has length " + std::to_string(counts.size()) +
                              ", expected " + std::to_string(space.cortege_count()));
    }
    std::vector<std::int64_t> per_value(space.cardinality(attribute), 0);
    for (std::size_t q = 0; q < counts.size(); ++q) {
        per_value[space.value_at(q, attribute)] += counts[q];
    }
    return per_value;
}

} // namespace scardo

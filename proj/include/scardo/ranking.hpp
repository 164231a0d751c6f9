#pragma once

#include <span>
#include <vector>

#include "scardo/attribute_space.hpp"

namespace scardo {

/// The ranking algorithm seen from the model: an M x M matrix of
/// communication probabilities. probability(s, l) is the chance that a
/// recipient with cortege s and a donor with cortege l are allowed to
/// interact. Entries live in [0, 1]; no symmetry is required.
///
/// Immutable after construction.
class RankingMatrix {
public:
    /// Validates a flat M*M array, recipient-major.
    static RankingMatrix from_dense(SpacePtr space, std::span<const double> entries);

    /// All ones: the ranking gate is disabled.
    static RankingMatrix uniform(SpacePtr space);

    /// The bounded-distance rule of the opinion-only model: pairs whose
    /// opinion positions differ by more than `max_opinion_distance` talk
    /// with probability 1 - blocking_probability, everyone else with
    /// probability 1. Distance is measured on 1..m positions in the
    /// arranged opinion set; non-opinion attributes play no role.
    static RankingMatrix threshold(SpacePtr space, double max_opinion_distance,
                                   double blocking_probability);

    /// probability(s, l) = clamp(1 - sum of penalties over attributes on
    /// which s and l differ, 0, 1). Symmetric with unit diagonal. One
    /// nonnegative penalty per attribute.
    static RankingMatrix additive_penalty(SpacePtr space, std::span<const double> penalties);

    double probability(std::size_t recipient, std::size_t donor) const {
        return entries_[recipient * m_ + donor];
    }

    /// Copy with one entry replaced (for sensitivity studies). Throws if
    /// the value leaves [0, 1].
    RankingMatrix with_entry(std::size_t recipient, std::size_t donor, double value) const;

    const AttributeSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    std::size_t cortege_count() const { return m_; }
    const std::vector<double>& entries() const { return entries_; }

private:
    RankingMatrix(SpacePtr space, std::vector<double> entries);

    SpacePtr space_;
    std::size_t m_ = 0;
    std::vector<double> entries_;
};

} // namespace scardo

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "scardo/attribute_space.hpp"

namespace scardo {

/// Where the probability mass of transitions removed by a static-attribute
/// mask ends up.
enum class MaskPolicy {
    self_absorb,  ///< removed mass joins the "no change" outcome p(s,l,s)
    renormalize,  ///< remaining outcomes are rescaled to total mass one
};

/// One explicit tensor entry for sparse construction. 0-based indices.
struct TensorEntry {
    std::size_t recipient = 0;
    std::size_t donor = 0;
    std::size_t outcome = 0;
    double probability = 0.0;
};

/// The augmented transition tensor. probability(s, l, k) is the chance
/// that a recipient with cortege s moves to cortege k after an allowed
/// interaction with a donor of cortege l.
///
/// Every (s, l) row is row-stochastic: construction rejects negative
/// entries and row sums further than 1e-9 from one, and renormalizes the
/// small deviations that decimal configs introduce, so stored rows sum to
/// one within 1e-12.
///
/// Storage is a dense M^3 array up to M = 64 and compressed sparse rows
/// above that. Immutable after construction.
class TransitionTensor {
public:
    static constexpr std::size_t kDenseLimit = 64;
    static constexpr double kRowSumTolerance = 1e-9;

    /// Validates a flat M*M*M array laid out recipient-major, then donor,
    /// then outcome.
    static TransitionTensor from_dense(SpacePtr space, std::span<const double> entries);

    /// Validates an explicit entry list; unlisted outcomes are zero, so
    /// every (s, l) row still needs total mass one. Duplicate entries are
    /// rejected.
    static TransitionTensor from_sparse(SpacePtr space, std::span<const TensorEntry> entries);

    /// p(s,l,s) = 1 everywhere: no interaction ever changes a cortege.
    static TransitionTensor identity(SpacePtr space);

    /// Embeds an opinion-only tensor (over an L=1 space whose cardinality
    /// equals this space's opinion cardinality) into `space`: an outcome
    /// keeps the recipient's non-opinion attributes and shifts opinion
    /// with the base probability. With L=1 the result equals the base.
    static TransitionTensor lift_opinion(SpacePtr space, const TransitionTensor& base);

    /// Zeroes every transition that changes any of `attributes` (0-based;
    /// the opinion attribute 0 is never static here). Removed mass goes to
    /// the self entry or, under MaskPolicy::renormalize, the surviving
    /// outcomes are rescaled (a row left without mass becomes
    /// self-absorbing). Idempotent.
    TransitionTensor mask_static_attributes(std::span<const std::size_t> attributes,
                                            MaskPolicy policy = MaskPolicy::self_absorb) const;

    /// Rows of corteges selected by `stubborn` become self-absorbing:
    /// p(s,l,s) = 1 for every donor l. Other rows are untouched.
    TransitionTensor make_stubborn(const std::function<bool(std::size_t)>& stubborn) const;

    /// Copy with probability mass `delta` moved from the self entry
    /// p(s,l,s) onto p(s,l,k), keeping the row stochastic. Used for
    /// sensitivity studies. Throws if k equals s or a probability leaves
    /// [0, 1].
    TransitionTensor with_mass_shifted(std::size_t recipient, std::size_t donor,
                                       std::size_t outcome, double delta) const;

    const AttributeSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    std::size_t cortege_count() const { return m_; }
    bool is_dense() const { return dense_; }

    double probability(std::size_t recipient, std::size_t donor, std::size_t outcome) const;

    /// Visits the nonzero outcomes of row (recipient, donor) in ascending
    /// outcome order as visit(outcome, probability).
    template <class Visitor>
    void for_each_outcome(std::size_t recipient, std::size_t donor, Visitor&& visit) const {
        const std::size_t row = recipient * m_ + donor;
        if (dense_) {
            const double* p = dense_entries_.data() + row * m_;
            for (std::size_t k = 0; k < m_; ++k) {
                if (p[k] != 0.0) visit(k, p[k]);
            }
        } else {
            for (std::size_t i = row_offsets_[row]; i < row_offsets_[row + 1]; ++i) {
                visit(static_cast<std::size_t>(sparse_outcomes_[i]), sparse_probs_[i]);
            }
        }
    }

    /// Inverse-CDF outcome draw over row (recipient, donor), cumulating in
    /// ascending outcome order; u must lie in [0, 1).
    std::size_t sample_outcome(std::size_t recipient, std::size_t donor, double u) const;

    /// True when no transition with nonzero probability changes the value
    /// of `attribute`.
    bool preserves_attribute(std::size_t attribute) const;

private:
    // One row per (recipient, donor) pair: (outcome, probability) entries
    // in ascending outcome order.
    using RowTable = std::vector<std::vector<std::pair<std::uint32_t, double>>>;

    TransitionTensor(SpacePtr space, RowTable rows);
    RowTable to_rows() const;

    SpacePtr space_;
    std::size_t m_ = 0;
    bool dense_ = false;
    std::vector<double> dense_entries_;       // M^3, dense mode
    std::vector<std::size_t> row_offsets_;    // M^2 + 1, sparse mode
    std::vector<std::uint32_t> sparse_outcomes_;
    std::vector<double> sparse_probs_;
};

} // namespace scardo

#include "scardo/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scardo/errors.hpp"

namespace scardo {

RankingMatrix::RankingMatrix(SpacePtr space, std::vector<double> entries)
    : space_(std::move(space)), m_(space_->cortege_count()), entries_(std::move(entries)) {
    for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t l = 0; l < m_; ++l) {
            const double f = entries_[s * m_ + l];
            if (!(f >= 0.0 && f <= 1.0)) {
                std::ostringstream os;
                os << "ranking entry (s=" << s + 1 << ", l=" << l + 1 << ") is " << f
                   << ", outside [0, 1]";
                throw ValidationError(os.str());
            }
        }
    }
}

RankingMatrix RankingMatrix::from_dense(SpacePtr space, std::span<const double> entries) {
    const std::size_t m = space->cortege_count();
    if (entries.size() != m * m) {
        throw ValidationError("ranking matrix expects " + std::to_string(m) + "x" +
                              std::to_string(m) + " = " + std::to_string(m * m) +
                              " entries, got " + std::to_string(entries.size()));
    }
    return RankingMatrix(std::move(space), std::vector<double>(entries.begin(), entries.end()));
}

RankingMatrix RankingMatrix::uniform(SpacePtr space) {
    const std::size_t m = space->cortege_count();
    return RankingMatrix(std::move(space), std::vector<double>(m * m, 1.0));
}

RankingMatrix RankingMatrix::threshold(SpacePtr space, double max_opinion_distance,
                                       double blocking_probability) {
    if (max_opinion_distance < 0.0) {
        throw ValidationError("opinion distance threshold must be nonnegative, got " +
                              std::to_string(max_opinion_distance));
    }
    if (!(blocking_probability >= 0.0 && blocking_probability <= 1.0)) {
        throw ValidationError("blocking probability must lie in [0, 1], got " +
                              std::to_string(blocking_probability));
    }
    const std::size_t m = space->cortege_count();
    std::vector<double> entries(m * m);
    for (std::size_t s = 0; s < m; ++s) {
        const auto s_pos = static_cast<double>(space->opinion_of(s));
        for (std::size_t l = 0; l < m; ++l) {
            const auto l_pos = static_cast<double>(space->opinion_of(l));
            const bool distant = std::abs(s_pos - l_pos) > max_opinion_distance;
            entries[s * m + l] = distant ? 1.0 - blocking_probability : 1.0;
        }
    }
    return RankingMatrix(std::move(space), std::move(entries));
}

RankingMatrix RankingMatrix::additive_penalty(SpacePtr space, std::span<const double> penalties) {
    const std::size_t attr_count = space->attribute_count();
    if (penalties.size() != attr_count) {
        throw ValidationError("expected one penalty per attribute (" +
                              std::to_string(attr_count) + "), got " +
                              std::to_string(penalties.size()));
    }
    for (std::size_t r = 0; r < attr_count; ++r) {
        if (penalties[r] < 0.0) {
            throw ValidationError("penalty for attribute " + std::to_string(r + 1) +
                                  " is negative (" + std::to_string(penalties[r]) + ")");
        }
    }
    const std::size_t m = space->cortege_count();
    std::vector<double> entries(m * m);
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t l = 0; l < m; ++l) {
            double f = 1.0;
            for (std::size_t r = 0; r < attr_count; ++r) {
                if (space->value_at(s, r) != space->value_at(l, r)) f -= penalties[r];
            }
            entries[s * m + l] = std::clamp(f, 0.0, 1.0);
        }
    }
    return RankingMatrix(std::move(space), std::move(entries));
}

RankingMatrix RankingMatrix::with_entry(std::size_t recipient, std::size_t donor,
                                        double value) const {
    if (recipient >= m_ || donor >= m_) {
        throw ValidationError("ranking entry (s=" + std::to_string(recipient + 1) + ", l=" +
                              std::to_string(donor + 1) + ") out of range for M = " +
                              std::to_string(m_));
    }
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError("perturbation pushes a communication probability outside [0, 1]");
    }
    std::vector<double> entries = entries_;
    entries[recipient * m_ + donor] = value;
    return RankingMatrix(space_, std::move(entries));
}

} // namespace scardo

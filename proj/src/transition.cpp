#include "scardo/transition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scardo/errors.hpp"

namespace scardo {

namespace {

std::string row_name(std::size_t s, std::size_t l) {
    return "(s=" + std::to_string(s + 1) + ", l=" + std::to_string(l + 1) + ")";
}

std::string entry_name(std::size_t s, std::size_t l, std::size_t k) {
    return "(s=" + std::to_string(s + 1) + ", l=" + std::to_string(l + 1) +
           ", k=" + std::to_string(k + 1) + ")";
}

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

TransitionTensor::TransitionTensor(SpacePtr space, RowTable rows) : space_(std::move(space)) {
    m_ = space_->cortege_count();
    dense_ = m_ <= kDenseLimit;

    for (std::size_t row = 0; row < m_ * m_; ++row) {
        const std::size_t s = row / m_;
        const std::size_t l = row % m_;
        auto& entries = rows[row];
        double sum = 0.0;
        for (const auto& [k, p] : entries) {
            if (p < 0.0) {
                throw ValidationError("transition tensor entry " + entry_name(s, l, k) +
                                      " is negative (" + format_number(p) + ")");
            }
            sum += p;
        }
        const double deviation = std::abs(sum - 1.0);
        if (deviation > kRowSumTolerance) {
            throw ValidationError("transition tensor row " + row_name(s, l) + " sums to " +
                                  format_number(sum) + ", outside tolerance " +
                                  format_number(kRowSumTolerance));
        }
        // Decimal configs land slightly off one; exact rows pass through
        // untouched so repeated validation is a no-op.
        if (deviation > 1e-12) {
            for (auto& [k, p] : entries) p /= sum;
        }
    }

    if (dense_) {
        dense_entries_.assign(m_ * m_ * m_, 0.0);
        for (std::size_t row = 0; row < m_ * m_; ++row) {
            double* out = dense_entries_.data() + row * m_;
            for (const auto& [k, p] : rows[row]) {
                if (p != 0.0) out[k] = p;
            }
        }
    } else {
        row_offsets_.assign(m_ * m_ + 1, 0);
        std::size_t total = 0;
        for (std::size_t row = 0; row < m_ * m_; ++row) {
            row_offsets_[row] = total;
            for (const auto& [k, p] : rows[row]) {
                if (p != 0.0) ++total;
            }
        }
        row_offsets_[m_ * m_] = total;
        sparse_outcomes_.reserve(total);
        sparse_probs_.reserve(total);
        for (std::size_t row = 0; row < m_ * m_; ++row) {
            for (const auto& [k, p] : rows[row]) {
                if (p != 0.0) {
                    sparse_outcomes_.push_back(k);
                    sparse_probs_.push_back(p);
                }
            }
        }
    }
}

TransitionTensor::RowTable TransitionTensor::to_rows() const {
    RowTable rows(m_ * m_);
    for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t l = 0; l < m_; ++l) {
            auto& row = rows[s * m_ + l];
            for_each_outcome(s, l, [&](std::size_t k, double p) {
                row.emplace_back(static_cast<std::uint32_t>(k), p);
            });
        }
    }
    return rows;
}

TransitionTensor TransitionTensor::from_dense(SpacePtr space, std::span<const double> entries) {
    const std::size_t m = space->cortege_count();
    if (entries.size() != m * m * m) {
        throw ValidationError("transition tensor expects " + std::to_string(m) + "^3 = " +
                              std::to_string(m * m * m) + " entries, got " +
                              std::to_string(entries.size()));
    }
    RowTable rows(m * m);
    for (std::size_t row = 0; row < m * m; ++row) {
        const double* src = entries.data() + row * m;
        for (std::size_t k = 0; k < m; ++k) {
            if (src[k] != 0.0) {
                rows[row].emplace_back(static_cast<std::uint32_t>(k), src[k]);
            }
        }
    }
    return TransitionTensor(std::move(space), std::move(rows));
}

TransitionTensor TransitionTensor::from_sparse(SpacePtr space,
                                               std::span<const TensorEntry> entries) {
    const std::size_t m = space->cortege_count();
    RowTable rows(m * m);
    for (const TensorEntry& e : entries) {
        if (e.recipient >= m || e.donor >= m || e.outcome >= m) {
            throw ValidationError("transition tensor entry " +
                                  entry_name(e.recipient, e.donor, e.outcome) +
                                  " out of range for M = " + std::to_string(m));
        }
        rows[e.recipient * m + e.donor].emplace_back(static_cast<std::uint32_t>(e.outcome),
                                                     e.probability);
    }
    for (std::size_t row = 0; row < m * m; ++row) {
        auto& r = rows[row];
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < r.size(); ++i) {
            if (r[i].first == r[i - 1].first) {
                throw ValidationError("duplicate transition tensor entry " +
                                      entry_name(row / m, row % m, r[i].first));
            }
        }
    }
    return TransitionTensor(std::move(space), std::move(rows));
}

TransitionTensor TransitionTensor::identity(SpacePtr space) {
    const std::size_t m = space->cortege_count();
    RowTable rows(m * m);
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t l = 0; l < m; ++l) {
            rows[s * m + l].emplace_back(static_cast<std::uint32_t>(s), 1.0);
        }
    }
    return TransitionTensor(std::move(space), std::move(rows));
}

TransitionTensor TransitionTensor::lift_opinion(SpacePtr space, const TransitionTensor& base) {
    if (base.space().attribute_count() != 1) {
        throw ValidationError("lift base must live on an opinion-only space (1 attribute), got " +
                              std::to_string(base.space().attribute_count()));
    }
    if (base.space().opinion_cardinality() != space->opinion_cardinality()) {
        throw ValidationError("lift base has " +
                              std::to_string(base.space().opinion_cardinality()) +
                              " opinions, space expects " +
                              std::to_string(space->opinion_cardinality()));
    }
    const std::size_t m = space->cortege_count();
    const std::size_t block = space->opinion_block_size();
    RowTable rows(m * m);
    for (std::size_t s = 0; s < m; ++s) {
        const std::size_t s_opinion = s / block;
        const std::size_t s_rest = s % block;
        for (std::size_t l = 0; l < m; ++l) {
            const std::size_t l_opinion = l / block;
            auto& row = rows[s * m + l];
            // Outcomes share the recipient's non-opinion attributes, so
            // within the row they are ordered by opinion value already.
            base.for_each_outcome(s_opinion, l_opinion, [&](std::size_t k_opinion, double p) {
                row.emplace_back(static_cast<std::uint32_t>(k_opinion * block + s_rest), p);
            });
        }
    }
    return TransitionTensor(std::move(space), std::move(rows));
}

TransitionTensor TransitionTensor::mask_static_attributes(
    std::span<const std::size_t> attributes, MaskPolicy policy) const {
    const std::size_t attr_count = space_->attribute_count();
    for (const std::size_t a : attributes) {
        if (a == 0) {
            throw ValidationError("attribute 1 is the opinion and cannot be static");
        }
        if (a >= attr_count) {
            throw ValidationError("static attribute " + std::to_string(a + 1) +
                                  " out of range [2.." + std::to_string(attr_count) + "]");
        }
    }

    auto allowed = [&](std::size_t s, std::size_t k) {
        for (const std::size_t a : attributes) {
            if (space_->value_at(k, a) != space_->value_at(s, a)) return false;
        }
        return true;
    };

    RowTable rows(m_ * m_);
    for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t l = 0; l < m_; ++l) {
            auto& row = rows[s * m_ + l];
            double removed = 0.0;
            double kept = 0.0;
            for_each_outcome(s, l, [&](std::size_t k, double p) {
                if (allowed(s, k)) {
                    row.emplace_back(static_cast<std::uint32_t>(k), p);
                    kept += p;
                } else {
                    removed += p;
                }
            });
            if (removed == 0.0) continue;
            if (policy == MaskPolicy::self_absorb || kept == 0.0) {
                // Prohibited changes become "no change".
                auto self = std::lower_bound(
                    row.begin(), row.end(), s,
                    [](const auto& e, std::size_t v) { return e.first < v; });
                const double mass = (policy == MaskPolicy::self_absorb) ? removed : 1.0;
                if (self != row.end() && self->first == s) {
                    self->second += mass;
                } else {
                    row.insert(self, {static_cast<std::uint32_t>(s), mass});
                }
            } else {
                for (auto& [k, p] : row) p /= kept;
            }
        }
    }
    return TransitionTensor(space_, std::move(rows));
}

TransitionTensor TransitionTensor::make_stubborn(
    const std::function<bool(std::size_t)>& stubborn) const {
    RowTable rows = to_rows();
    for (std::size_t s = 0; s < m_; ++s) {
        if (!stubborn(s)) continue;
        for (std::size_t l = 0; l < m_; ++l) {
            rows[s * m_ + l] = {{static_cast<std::uint32_t>(s), 1.0}};
        }
    }
    return TransitionTensor(space_, std::move(rows));
}

TransitionTensor TransitionTensor::with_mass_shifted(std::size_t recipient, std::size_t donor,
                                                     std::size_t outcome, double delta) const {
    if (recipient >= m_ || donor >= m_ || outcome >= m_) {
        throw ValidationError("tensor entry " + entry_name(recipient, donor, outcome) +
                              " out of range for M = " + std::to_string(m_));
    }
    if (outcome == recipient) {
        throw ValidationError("perturbation target " + entry_name(recipient, donor, outcome) +
                              " coincides with its co-perturbed self entry");
    }
    const double target = probability(recipient, donor, outcome) + delta;
    const double self = probability(recipient, donor, recipient) - delta;
    if (target < 0.0 || target > 1.0 || self < 0.0 || self > 1.0) {
        throw ValidationError("perturbation pushes a transition probability outside [0, 1] at " +
                              entry_name(recipient, donor, outcome));
    }

    RowTable rows = to_rows();
    auto& row = rows[recipient * m_ + donor];
    auto set = [&](std::size_t k, double value) {
        auto it = std::lower_bound(row.begin(), row.end(), k,
                                   [](const auto& e, std::size_t v) { return e.first < v; });
        if (it != row.end() && it->first == k) {
            it->second = value;
        } else {
            row.insert(it, {static_cast<std::uint32_t>(k), value});
        }
    };
    set(outcome, target);
    set(recipient, self);
    return TransitionTensor(space_, std::move(rows));
}

double TransitionTensor::probability(std::size_t recipient, std::size_t donor,
                                     std::size_t outcome) const {
    const std::size_t row = recipient * m_ + donor;
    if (dense_) {
        return dense_entries_[row * m_ + outcome];
    }
    const auto begin = sparse_outcomes_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
    const auto end = sparse_outcomes_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
    const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(outcome));
    if (it == end || *it != outcome) return 0.0;
    return sparse_probs_[static_cast<std::size_t>(it - sparse_outcomes_.begin())];
}

std::size_t TransitionTensor::sample_outcome(std::size_t recipient, std::size_t donor,
                                             double u) const {
    double cumulative = 0.0;
    std::size_t last = recipient; // validated rows always have mass, so this is overwritten
    bool found = false;
    std::size_t chosen = 0;
    for_each_outcome(recipient, donor, [&](std::size_t k, double p) {
        if (found) return;
        cumulative += p;
        last = k;
        if (u < cumulative) {
            chosen = k;
            found = true;
        }
    });
    return found ? chosen : last;
}

bool TransitionTensor::preserves_attribute(std::size_t attribute) const {
    for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t l = 0; l < m_; ++l) {
            bool changes = false;
            for_each_outcome(s, l, [&](std::size_t k, double) {
                if (space_->value_at(k, attribute) != space_->value_at(s, attribute)) {
                    changes = true;
                }
            });
            if (changes) return false;
        }
    }
    return true;
}

} // namespace scardo

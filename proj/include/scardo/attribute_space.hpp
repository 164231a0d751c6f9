#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace scardo {

/// An agent's full attribute tuple. Component r holds the 0-based value
/// index within attribute r's value set; component 0 is the opinion.
struct Cortege {
    std::vector<std::size_t> values;

    friend bool operator==(const Cortege&, const Cortege&) = default;
};

/// The discrete attribute sets of the model and the enumeration of their
/// combinations (corteges).
///
/// Cortege indices are opinion-major: the first opinion_block_size()
/// indices carry opinion value 0, the next block opinion value 1, and so
/// on. Within a block the non-opinion attributes are ordered
/// lexicographically with attribute 1 most significant.
///
/// The whole C++ surface is 0-based; config files, CSV headers, and error
/// messages use 1-based numbering.
///
/// Immutable after construction; safe to share across threads.
class AttributeSpace {
public:
    /// Builds a space from per-attribute value counts. Attribute 0 is the
    /// opinion. Labels, when given, must match the cardinalities shape.
    /// Throws ValidationError on an empty list, a zero cardinality, or
    /// product overflow, naming the offending attribute.
    explicit AttributeSpace(std::vector<std::size_t> cardinalities,
                            std::vector<std::vector<std::string>> labels = {});

    std::size_t attribute_count() const { return cardinalities_.size(); }
    std::size_t cardinality(std::size_t attribute) const;
    const std::vector<std::size_t>& cardinalities() const { return cardinalities_; }

    /// Total number of corteges (product of all cardinalities).
    std::size_t cortege_count() const { return cortege_count_; }
    std::size_t opinion_cardinality() const { return cardinalities_.front(); }
    /// Number of corteges sharing one opinion value.
    std::size_t opinion_block_size() const { return block_size_; }

    std::size_t index_of(const Cortege& cortege) const;
    Cortege cortege_at(std::size_t index) const;
    /// Value of a single attribute of the cortege at `index`.
    std::size_t value_at(std::size_t index, std::size_t attribute) const;
    std::size_t opinion_of(std::size_t index) const { return index / block_size_; }

    /// Sums a length-M vector over opinion blocks, yielding the per-camp
    /// vector y°. Linear and mass-preserving.
    std::vector<double> aggregate_opinion_fractions(std::span<const double> y) const;

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::vector<std::string>>& labels() const { return labels_; }
    /// Label of a value if labels were given, else its 1-based number.
    std::string value_name(std::size_t attribute, std::size_t value) const;
    /// Human-readable tuple, e.g. "(-1, a)".
    std::string cortege_name(std::size_t index) const;

    /// True when both spaces have identical cardinalities. Labels are
    /// cosmetic and ignored.
    bool same_shape(const AttributeSpace& other) const {
        return cardinalities_ == other.cardinalities_;
    }

private:
    std::vector<std::size_t> cardinalities_;
    std::vector<std::size_t> strides_; // strides_[r] = product of cardinalities after r
    std::vector<std::vector<std::string>> labels_;
    std::size_t cortege_count_ = 0;
    std::size_t block_size_ = 0;
};

using SpacePtr = std::shared_ptr<const AttributeSpace>;

SpacePtr make_space(std::vector<std::size_t> cardinalities,
                    std::vector<std::vector<std::string>> labels = {});

} // namespace scardo

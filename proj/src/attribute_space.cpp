#include "scardo/attribute_space.hpp"

#include <limits>

#include "scardo/errors.hpp"

namespace scardo {

AttributeSpace::AttributeSpace(std::vector<std::size_t> cardinalities,
                               std::vector<std::vector<std::string>> labels)
    : cardinalities_(std::move(cardinalities)), labels_(std::move(labels)) {
    if (cardinalities_.empty()) {
        throw ValidationError("attribute space needs at least one attribute (the opinion)");
    }
    const std::size_t count = cardinalities_.size();
    for (std::size_t r = 0; r < count; ++r) {
        if (cardinalities_[r] == 0) {
            throw ValidationError("attribute " + std::to_string(r + 1) + " has zero values");
        }
    }

    // Opinion-major strides, built right to left with overflow checks.
    strides_.assign(count, 1);
    std::size_t product = 1;
    for (std::size_t r = count; r-- > 0;) {
        strides_[r] = product;
        const std::size_t m = cardinalities_[r];
        if (product > std::numeric_limits<std::size_t>::max() / m) {
            throw ValidationError("cortege count overflows at attribute " + std::to_string(r + 1));
        }
        product *= m;
    }
    cortege_count_ = product;
    block_size_ = strides_[0];

    if (!labels_.empty()) {
        if (labels_.size() != count) {
            throw ValidationError("labels given for " + std::to_string(labels_.size()) +
                                  " attributes, expected " + std::to_string(count));
        }
        for (std::size_t r = 0; r < count; ++r) {
            if (labels_[r].size() != cardinalities_[r]) {
                throw ValidationError("attribute " + std::to_string(r + 1) + " has " +
                                      std::to_string(cardinalities_[r]) + " values but " +
                                      std::to_string(labels_[r].size()) + " labels");
            }
        }
    }
}

std::size_t AttributeSpace::cardinality(std::size_t attribute) const {
    if (attribute >= cardinalities_.size()) {
        throw ValidationError("attribute index " + std::to_string(attribute + 1) +
                              " out of range [1.." + std::to_string(cardinalities_.size()) + "]");
    }
    return cardinalities_[attribute];
}

std::size_t AttributeSpace::index_of(const Cortege& cortege) const {
    if (cortege.values.size() != cardinalities_.size()) {
        throw ValidationError("cortege has " + std::to_string(cortege.values.size()) +
                              " components, expected " + std::to_string(cardinalities_.size()));
    }
    std::size_t index = 0;
    for (std::size_t r = 0; r < cardinalities_.size(); ++r) {
        const std::size_t v = cortege.values[r];
        if (v >= cardinalities_[r]) {
            throw ValidationError("attribute " + std::to_string(r + 1) + " value " +
                                  std::to_string(v + 1) + " out of range [1.." +
                                  std::to_string(cardinalities_[r]) + "]");
        }
        index += v * strides_[r];
    }
    return index;
}

Cortege AttributeSpace::cortege_at(std::size_t index) const {
    if (index >= cortege_count_) {
        throw ValidationError("cortege index " + std::to_string(index + 1) +
                              " out of range [1.." + std::to_string(cortege_count_) + "]");
    }
    Cortege c;
    c.values.resize(cardinalities_.size());
    for (std::size_t r = 0; r < cardinalities_.size(); ++r) {
        c.values[r] = (index / strides_[r]) % cardinalities_[r];
    }
    return c;
}

std::size_t AttributeSpace::value_at(std::size_t index, std::size_t attribute) const {
    if (index >= cortege_count_) {
        throw ValidationError("cortege index " + std::to_string(index + 1) +
                              " out of range [1.." + std::to_string(cortege_count_) + "]");
    }
    return (index / strides_[attribute]) % cardinality(attribute);
}

std::vector<double> AttributeSpace::aggregate_opinion_fractions(std::span<const double> y) const {
    if (y.size() != cortege_count_) {
        throw ValidationError("fraction vector has length " + std::to_string(y.size()) +
                              ", expected " + std::to_string(cortege_count_));
    }
    std::vector<double> camps(opinion_cardinality(), 0.0);
    for (std::size_t q = 0; q < cortege_count_; ++q) {
        camps[q / block_size_] += y[q];
    }
    return camps;
}

std::string AttributeSpace::value_name(std::size_t attribute, std::size_t value) const {
    if (!labels_.empty()) {
        return labels_[attribute][value];
    }
    return std::to_string(value + 1);
}

std::string AttributeSpace::cortege_name(std::size_t index) const {
    const Cortege c = cortege_at(index);
    std::string out = "(";
    for (std::size_t r = 0; r < c.values.size(); ++r) {
        if (r > 0) out += ", ";
        out += value_name(r, c.values[r]);
    }
    out += ")";
    return out;
}

SpacePtr make_space(std::vector<std::size_t> cardinalities,
                    std::vector<std::vector<std::string>> labels) {
    return std::make_shared<const AttributeSpace>(std::move(cardinalities), std::move(labels));
}

} // namespace scardo

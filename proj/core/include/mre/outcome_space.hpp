#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mre {

/// Ordered list of distinct outcome labels. Every vector quantity in the
/// library (weights, counts, moment coefficients) aligns to this order, so
/// label/index confusion cannot arise across modules.
class OutcomeSpace {
public:
    explicit OutcomeSpace(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    /// Index of a label; throws SpaceMismatchError for unknown labels.
    std::size_t index_of(const std::string& label) const;
    std::optional<std::size_t> find(const std::string& label) const noexcept;
    bool contains(const std::string& label) const noexcept { return find(label).has_value(); }

    friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
        return a.labels_ == b.labels_;
    }
    friend bool operator!=(const OutcomeSpace& a, const OutcomeSpace& b) { return !(a == b); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Subset of an outcome space. The empty event is representable; conditioning
/// on it is rejected at the point of use, not here.
class Event {
public:
    Event(OutcomeSpace space, const std::vector<std::string>& members);

    /// Event from outcome indices (deduplicated).
    static Event from_indices(OutcomeSpace space, const std::vector<std::size_t>& indices);
    static Event full(OutcomeSpace space);
    static Event empty_event(OutcomeSpace space);

    const OutcomeSpace& space() const noexcept { return space_; }
    bool contains(std::size_t index) const { return mask_.at(index); }
    /// Member indices in outcome-space order.
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::vector<std::string> members() const;
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool is_full() const noexcept { return indices_.size() == space_.size(); }

    Event complement() const;
    Event intersect(const Event& other) const;

private:
    // Tag keeps this overload out of resolution for brace-initialized member
    // lists, whose string literals would otherwise also convert to bool.
    struct FromMask {};
    Event(FromMask, OutcomeSpace space, std::vector<bool> mask);

    OutcomeSpace space_;
    std::vector<bool> mask_;
    std::vector<std::size_t> indices_;
};

} // namespace mre

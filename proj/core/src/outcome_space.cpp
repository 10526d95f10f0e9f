#include "mre/outcome_space.hpp"

#include <algorithm>
#include <utility>

#include "mre/errors.hpp"

namespace mre {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw LengthMismatchError("outcome space needs at least one label");
    }
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto [it, inserted] = index_.emplace(labels_[i], i);
        if (!inserted) {
            throw SpaceMismatchError("duplicate outcome label '" + labels_[i] + "'");
        }
    }
}

std::size_t OutcomeSpace::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        throw SpaceMismatchError("unknown outcome label '" + label + "'");
    }
    return it->second;
}

std::optional<std::size_t> OutcomeSpace::find(const std::string& label) const noexcept {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Event::Event(FromMask, OutcomeSpace space, std::vector<bool> mask)
    : space_(std::move(space)), mask_(std::move(mask)) {
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) indices_.push_back(i);
    }
}

Event::Event(OutcomeSpace space, const std::vector<std::string>& members)
    : space_(std::move(space)), mask_(space_.size(), false) {
    for (const auto& label : members) {
        mask_[space_.index_of(label)] = true;
    }
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) indices_.push_back(i);
    }
}

Event Event::from_indices(OutcomeSpace space, const std::vector<std::size_t>& indices) {
    std::vector<bool> mask(space.size(), false);
    for (std::size_t i : indices) {
        if (i >= mask.size()) {
            throw SpaceMismatchError("outcome index out of range");
        }
        mask[i] = true;
    }
    return Event(FromMask{}, std::move(space), std::move(mask));
}

Event Event::full(OutcomeSpace space) {
    std::vector<bool> mask(space.size(), true);
    return Event(FromMask{}, std::move(space), std::move(mask));
}

Event Event::empty_event(OutcomeSpace space) {
    std::vector<bool> mask(space.size(), false);
    return Event(FromMask{}, std::move(space), std::move(mask));
}

std::vector<std::string> Event::members() const {
    std::vector<std::string> out;
    out.reserve(indices_.size());
    for (std::size_t i : indices_) out.push_back(space_.label(i));
    return out;
}

Event Event::complement() const {
    std::vector<bool> mask(mask_.size());
    std::transform(mask_.begin(), mask_.end(), mask.begin(), [](bool b) { return !b; });
    return Event(FromMask{}, space_, std::move(mask));
}

Event Event::intersect(const Event& other) const {
    if (space_ != other.space_) {
        throw SpaceMismatchError("events live on different outcome spaces");
    }
    std::vector<bool> mask(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] && other.mask_[i];
    return Event(FromMask{}, space_, std::move(mask));
}

} // namespace mre

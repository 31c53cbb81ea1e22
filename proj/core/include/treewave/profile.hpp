#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace treewave {

/// Finite window of a double sequence u_i, stored from lattice index `offset`.
class Profile {
public:
    Profile() = default;
    Profile(int offset, std::vector<double> values)
        : offset_(offset), values_(std::move(values)) {}

    int offset() const noexcept { return offset_; }
    int first_index() const noexcept { return offset_; }
    int last_index() const noexcept { return offset_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }

    bool contains(int i) const noexcept { return i >= first_index() && i <= last_index(); }

    /// Value at lattice index i (unchecked).
    double operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i - offset_)]; }
    double& operator[](int i) noexcept { return values_[static_cast<std::size_t>(i - offset_)]; }

    /// Value at lattice index i; throws std::out_of_range outside the window.
    double at(int i) const;

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    /// The same values relabelled so that index i becomes i + shift.
    Profile shifted(int shift) const { return {offset_ + shift, values_}; }

    bool all_finite() const noexcept;
    bool strictly_increasing() const noexcept;

private:
    int offset_ = 0;
    std::vector<double> values_;
};

/// Symmetric window [-half_width, half_width] filled with `value`.
Profile constant_profile(int half_width, double value);

/// Sharp step: 0 for i < 0, 1 for i >= 0.
Profile step_profile(int half_width);

/// max_i |lhs_i - rhs_i| over the common index range.
double sup_distance(const Profile& lhs, const Profile& rhs);

}  // namespace treewave

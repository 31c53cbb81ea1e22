#include "treewave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace treewave {

double Profile::at(int i) const {
    if (!contains(i)) {
        throw std::out_of_range("profile index " + std::to_string(i) + " outside window [" +
                                std::to_string(first_index()) + ", " +
                                std::to_string(last_index()) + "]");
    }
    return (*this)[i];
}

bool Profile::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

bool Profile::strictly_increasing() const noexcept {
    return std::adjacent_find(values_.begin(), values_.end(),
                              [](double lhs, double rhs) { return !(lhs < rhs); }) ==
           values_.end();
}

Profile constant_profile(int half_width, double value) {
    return {-half_width, std::vector<double>(static_cast<std::size_t>(2 * half_width + 1), value)};
}

Profile step_profile(int half_width) {
    Profile p = constant_profile(half_width, 0.0);
    for (int i = 0; i <= half_width; ++i) {
        p[i] = 1.0;
    }
    return p;
}

double sup_distance(const Profile& lhs, const Profile& rhs) {
    const int lo = std::max(lhs.first_index(), rhs.first_index());
    const int hi = std::min(lhs.last_index(), rhs.last_index());
    double worst = 0.0;
    for (int i = lo; i <= hi; ++i) {
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    return worst;
}

}  // namespace treewave

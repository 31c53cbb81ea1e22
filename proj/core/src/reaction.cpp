#include "treewave/reaction.hpp"

#include "treewave/error.hpp"

#include <string>

namespace treewave {

namespace {

double heaviside(double x) noexcept { return x >= 0.0 ? 1.0 : 0.0; }

}  // namespace

Reaction::Reaction(ReactionKind kind, double a) : kind_(kind), a_(a) {
    if (!(a > 0.0 && a < 1.0)) {
        throw Error(ErrorKind::InvalidParameter,
                    "reaction detuning a must lie in (0,1), got " + std::to_string(a));
    }
}

double eval_heaviside_form(double a, double u) noexcept { return -u + heaviside(u - a); }

}  // namespace treewave

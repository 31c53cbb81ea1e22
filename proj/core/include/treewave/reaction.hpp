#pragma once

namespace treewave {

enum class ReactionKind { McKean, Cubic };

/// Bistable nonlinearity g(u; a) with stable zeros at 0 and 1.
class Reaction {
public:
    /// Throws Error(InvalidParameter) unless 0 < a < 1.
    Reaction(ReactionKind kind, double a);

    static Reaction mckean(double a) { return {ReactionKind::McKean, a}; }
    static Reaction cubic(double a) { return {ReactionKind::Cubic, a}; }

    ReactionKind kind() const noexcept { return kind_; }
    double a() const noexcept { return a_; }

    // McKean is right-continuous at u == a (takes the 1 - u branch).
    double operator()(double u) const noexcept {
        if (kind_ == ReactionKind::McKean) {
            return u < a_ ? -u : 1.0 - u;
        }
        return u * (1.0 - u) * (u - a_);
    }

private:
    ReactionKind kind_;
    double a_;
};

inline double eval(const Reaction& reaction, double u) noexcept { return reaction(u); }

/// McKean's caricature written as -u + H(u - a) with H(0) = 1.
double eval_heaviside_form(double a, double u) noexcept;

}  // namespace treewave

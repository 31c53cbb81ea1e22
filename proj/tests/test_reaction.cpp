#include "doctest.h"

#include "treewave/error.hpp"
#include "treewave/reaction.hpp"

#include <random>

using namespace treewave;

TEST_CASE("McKean caricature values") {
    const Reaction g = Reaction::mckean(0.3);
    CHECK(g(0.0) == 0.0);
    CHECK(g(1.0) == 0.0);
    // u == a takes the 1 - u branch
    CHECK(g(0.3) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(g(0.2999999) == doctest::Approx(-0.2999999));
    CHECK(eval(g, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("cubic vanishes at 0, a and 1") {
    const Reaction g = Reaction::cubic(0.5);
    CHECK(g(0.5) == 0.0);
    CHECK(g(0.0) == 0.0);
    CHECK(g(1.0) == 0.0);
    CHECK(g(0.25) == doctest::Approx(0.25 * 0.75 * -0.25));

    const Reaction h = Reaction::cubic(0.37);
    for (double u : {-0.5, 0.1, 0.2, 0.5, 0.9, 1.3}) {
        CHECK(h(u) != 0.0);
    }
    CHECK(h(0.37) == 0.0);
}

TEST_CASE("Heaviside form") {
    CHECK(eval_heaviside_form(0.5, 0.2) == doctest::Approx(-0.2));
    CHECK(eval_heaviside_form(0.5, 0.5) == doctest::Approx(0.5));
    CHECK(eval_heaviside_form(0.5, 0.9) == doctest::Approx(0.1));
}

TEST_CASE("Heaviside form equals the case split exactly") {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> ua(1e-6, 1.0 - 1e-6);
    std::uniform_real_distribution<double> uu(-2.0, 3.0);
    for (int trial = 0; trial < 20000; ++trial) {
        const double a = ua(rng);
        const Reaction g = Reaction::mckean(a);
        const double u = trial % 10 == 0 ? a : uu(rng);
        REQUIRE(g(u) == eval_heaviside_form(a, u));
    }
}

TEST_CASE("McKean slope is -1 within a branch") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.05, 0.95);
    std::uniform_real_distribution<double> uh(-0.2, 0.2);
    const Reaction g = Reaction::mckean(0.4);
    for (int trial = 0; trial < 5000; ++trial) {
        const double u = ua(rng) * 2.0 - 0.5;
        const double h = uh(rng);
        if ((u < 0.4) != (u + h < 0.4)) continue;
        CHECK(g(u + h) - g(u) == doctest::Approx(-h).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("reaction rejects a outside (0,1)") {
    CHECK_THROWS_AS(Reaction::mckean(0.0), Error);
    CHECK_THROWS_AS(Reaction::mckean(1.0), Error);
    CHECK_THROWS_AS(Reaction::cubic(-0.1), Error);
    try {
        Reaction::mckean(1.5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidParameter);
    }
}

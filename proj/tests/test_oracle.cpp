#include "doctest.h"

#include "treewave/error.hpp"
#include "treewave/oracle.hpp"
#include "treewave/pinning.hpp"
#include "treewave/simulator.hpp"

#include <cmath>
#include <random>

using namespace treewave;
using namespace treewave::oracle;

TEST_CASE("tridiagonal solve: trivial systems") {
    const std::vector<double> r{1.5, -2.0, 3.25};
    CHECK(tridiagonal_solve(std::vector<double>{0, 0}, std::vector<double>{1, 1, 1},
                            std::vector<double>{0, 0}, r) == r);
    const auto x = tridiagonal_solve(std::vector<double>{1}, std::vector<double>{2, 2},
                                     std::vector<double>{1}, std::vector<double>{3, 3});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
    CHECK(tridiagonal_solve({}, std::vector<double>{4.0}, {}, std::vector<double>{2.0})[0] == 0.5);
}

TEST_CASE("tridiagonal solve: random diagonally dominant systems") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 50;
        std::vector<double> lo(n - 1), di(n), up(n - 1), rhs(n);
        for (auto& v : lo) v = unit(rng);
        for (auto& v : up) v = unit(rng);
        for (auto& v : rhs) v = unit(rng);
        for (std::size_t i = 0; i < n; ++i) {
            di[i] = (unit(rng) > 0 ? 1.0 : -1.0) * (2.5 + std::abs(unit(rng)));
        }
        const auto x = tridiagonal_solve(lo, di, up, rhs);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ax = di[i] * x[i];
            if (i > 0) ax += lo[i - 1] * x[i - 1];
            if (i + 1 < n) ax += up[i] * x[i + 1];
            worst = std::max(worst, std::abs(ax - rhs[i]));
            scale = std::max(scale, std::abs(rhs[i]));
        }
        CHECK(worst <= 1e-10 * scale);
    }
}

TEST_CASE("tridiagonal solve: errors") {
    try {
        tridiagonal_solve(std::vector<double>{1}, std::vector<double>{1, 1}, std::vector<double>{1},
                          std::vector<double>{1, 1});
        FAIL("expected singular-system");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularSystem);
    }
    CHECK_THROWS_AS(tridiagonal_solve({}, std::vector<double>{0.0}, {}, std::vector<double>{1.0}),
                    Error);
    CHECK_THROWS_AS(tridiagonal_solve(std::vector<double>{1, 1}, std::vector<double>{1, 1},
                                      std::vector<double>{1}, std::vector<double>{1, 1}),
                    Error);
}

TEST_CASE("window solution reproduces the closed-form wave") {
    const Profile u = solve_stationary_window(1.0, 2.0, 200);
    CHECK(std::abs(u[0] - 0.8535533906) <= 1e-8);
    CHECK(std::abs(u[-1] - 0.5) <= 1e-8);
    const Profile exact = pinned_profile(1.0, 2.0, -100, 100);
    double worst = 0.0;
    for (int i = -100; i <= 100; ++i) worst = std::max(worst, std::abs(u[i] - exact[i]));
    CHECK(worst <= 1e-8);
}

TEST_CASE("window solutions are strictly increasing") {
    for (double d : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        for (double k : {1.01, 2.0, 3.0, 10.0}) {
            const Profile u = solve_stationary_window(d, k, 50);
            for (int i = -50; i < 50; ++i) CHECK(u[i] <= u[i + 1]);
            CHECK(u[-2] < u[-1]);
            CHECK(u[-1] < u[0]);
            CHECK(u[0] < u[1]);
        }
    }
}

TEST_CASE("empirical bounds agree with the closed form") {
    const RegionBounds b = empirical_bounds(1.0, 2.0, 200);
    CHECK(std::abs(b.a_minus - 0.5) <= 1e-8);
    CHECK(std::abs(b.a_plus - 0.8535533906) <= 1e-8);

    for (double d : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        for (double k : {1.5, 2.0, 3.0, 10.0}) {
            const RegionBounds emp = empirical_bounds(d, k, 200);
            const RegionBounds exact = pinning_bounds(d, k);
            CHECK(std::abs(emp.a_minus - exact.a_minus) <= 1e-7);
            CHECK(std::abs(emp.a_plus - exact.a_plus) <= 1e-7);
        }
    }

    const RegionBounds lde = empirical_bounds(1.0, 1.0 + 1e-9, 300);
    CHECK(std::abs(lde.a_minus - 0.5 * (1.0 - 1.0 / std::sqrt(5.0))) <= 1e-6);
    CHECK(std::abs(lde.a_plus - 0.5 * (1.0 + 1.0 / std::sqrt(5.0))) <= 1e-6);
}

TEST_CASE("truncation error decays geometrically with the window") {
    const RegionBounds exact = pinning_bounds(1.0, 2.0);
    const double lambda1 = eigenvalues(1.0, 2.0).lambda1;
    const auto error = [&](int n) {
        const RegionBounds emp = empirical_bounds(1.0, 2.0, n);
        return std::max(std::abs(emp.a_minus - exact.a_minus), std::abs(emp.a_plus - exact.a_plus));
    };
    const double e10 = error(10);
    const double e20 = error(20);
    CHECK(e10 > 0.0);
    CHECK(e10 / e20 >= std::pow(lambda1, 5));
}

TEST_CASE("window solution is stationary for any a in its interval") {
    const Profile u = solve_stationary_window(1.0, 2.0, 200);
    for (double a : {0.51, 0.7, u[0]}) {
        CHECK(residual(u, TreeParams(1.0, 2.0, a), Reaction::mckean(a)) <= 1e-10);
    }
}

TEST_CASE("shifting the interface shifts the solution") {
    const Profile base = solve_stationary_window(0.7, 3.0, 100, 0);
    const Profile moved = solve_stationary_window(0.7, 3.0, 100, 1);
    double worst = 0.0;
    for (int i = -60; i <= 60; ++i) worst = std::max(worst, std::abs(moved[i + 1] - base[i]));
    CHECK(worst <= 1e-12);
    CHECK_THROWS_AS(solve_stationary_window(0.7, 3.0, 100, 101), Error);
}

TEST_CASE("oracle input validation") {
    CHECK_THROWS_AS(solve_stationary_window(0.0, 2.0, 50), Error);
    CHECK_THROWS_AS(solve_stationary_window(1.0, 1.0, 50), Error);
    CHECK_THROWS_AS(empirical_bounds(1.0, 2.0, 5), Error);
}

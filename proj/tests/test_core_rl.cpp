#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "ctql/qtable.hpp"
#include "ctql/rng.hpp"
#include "ctql/trial.hpp"

using namespace ctql;

namespace {

QTable small_table(std::uint32_t n_states = 10, std::uint32_t n_actions = 12) {
    return QTable(n_states, n_actions, 0);
}

}  // namespace

TEST_CASE("q_update: zero learning rate leaves the table unchanged") {
    QTable t = small_table();
    t.set(3, 4, 1.5);
    LearningParams p{0.0, 0.8, 0.03};
    q_update(t, 3, 4, 100.0, 7, p);
    CHECK(t.value(3, 4) == 1.5);
}

TEST_CASE("q_update: fresh table, alpha=0.9, gamma=0.8, r=1 gives 0.9") {
    QTable t = small_table();
    q_update(t, 2, 5, 1.0, 6, {0.9, 0.8, 0.03});
    CHECK(t.value(2, 5) == doctest::Approx(0.9));
}

TEST_CASE("q_update: 0.5*1 + 0.5*(0 + 0.5*2) = 1.0") {
    QTable t = small_table();
    t.set(1, 2, 1.0);
    t.set(4, 0, 2.0); // max of row 4
    t.set(4, 1, -3.0);
    q_update(t, 1, 2, 0.0, 4, {0.5, 0.5, 0.03});
    CHECK(t.value(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("q_update: alpha=1, gamma=0 writes the reward exactly") {
    QTable t = small_table();
    t.set(0, 0, 42.0);
    for (int i = 0; i < 5; ++i) q_update(t, 0, 0, -2.5, 1, {1.0, 0.0, 0.03});
    CHECK(t.value(0, 0) == -2.5);
}

TEST_CASE("q_update matches a hand oracle on 1e4 random tuples and touches one entry") {
    constexpr std::uint32_t S = 50, A = 10;
    QTable t(S, A, 0);
    std::vector<double> shadow(S * A, 0.0);
    RngStream rng(12345);
    const LearningParams p{0.9, 0.8, 0.03};

    for (int iter = 0; iter < 10000; ++iter) {
        const auto s = rng.uniform_index(S);
        const auto a = rng.uniform_index(A);
        const auto s_next = rng.uniform_index(S);
        const double r = rng.uniform(-2.0, 2.0);

        double next_max = shadow[s_next * A];
        for (std::uint32_t aa = 1; aa < A; ++aa)
            next_max = std::max(next_max, shadow[s_next * A + aa]);
        const double expected = (1.0 - p.alpha) * shadow[s * A + a] +
                                p.alpha * (r + p.gamma * next_max);

        q_update(t, s, a, r, s_next, p);
        shadow[s * A + a] = expected;

        REQUIRE(t.value(s, a) == doctest::Approx(expected).epsilon(1e-12));
    }
    // Full sweep: every entry equals the shadow copy, so no update ever
    // touched a second entry.
    for (std::uint32_t s = 0; s < S; ++s)
        for (std::uint32_t a = 0; a < A; ++a)
            REQUIRE(t.value(s, a) == doctest::Approx(shadow[s * A + a]).epsilon(1e-12));
}

TEST_CASE("q-values stay within max|r|/(1-gamma) for bounded rewards") {
    QTable t = small_table(20, 5);
    RngStream rng(99);
    const LearningParams p{0.9, 0.8, 0.03};
    const double r_bound = 1.0;
    for (int iter = 0; iter < 20000; ++iter) {
        q_update(t, rng.uniform_index(20), rng.uniform_index(5), rng.uniform(-r_bound, r_bound),
                 rng.uniform_index(20), p);
    }
    const double q_bound = r_bound / (1.0 - p.gamma) + 1e-9;
    for (std::uint32_t s = 0; s < 20; ++s)
        for (std::uint32_t a = 0; a < 5; ++a) REQUIRE(std::abs(t.value(s, a)) <= q_bound);
}

TEST_CASE("greedy_action tie-breaks to the lowest action id") {
    QTable t = small_table();
    SUBCASE("all-zero row") {
        auto [a, v] = greedy_action(t, 0);
        CHECK(a == 0);
        CHECK(v == 0.0);
    }
    SUBCASE("single positive entry") {
        t.set(1, 7, 0.25);
        auto [a, v] = greedy_action(t, 1);
        CHECK(a == 7);
        CHECK(v == 0.25);
    }
    SUBCASE("two equal maxima") {
        t.set(2, 3, 1.0);
        t.set(2, 9, 1.0);
        auto [a, v] = greedy_action(t, 2);
        CHECK(a == 3);
        CHECK(v == 1.0);
    }
}

TEST_CASE("policy_q extremes") {
    QTable t = small_table();
    t.set(0, 7, 1.0);
    RngStream rng(7);
    for (int i = 0; i < 200; ++i) {
        auto [a, b] = policy_q(t, 0, 0.0, rng);
        CHECK(b == PolicyBranch::GreedyQ);
        CHECK(a == 7);
    }
    for (int i = 0; i < 200; ++i) CHECK(policy_q(t, 0, 1.0, rng).second == PolicyBranch::RandomQ);
}

TEST_CASE("policy_q random-branch frequency is within 3 sigma of epsilon") {
    QTable t = small_table();
    RngStream rng(42);
    const double eps = 0.03;
    const int n = 100000;
    int random_branch = 0;
    for (int i = 0; i < n; ++i)
        if (policy_q(t, 0, eps, rng).second == PolicyBranch::RandomQ) ++random_branch;
    const double freq = static_cast<double>(random_branch) / n;
    CHECK(std::abs(freq - eps) < 0.005); // 3 sigma of Binomial(1e5, 0.03) is ~0.0016
}

TEST_CASE("select_action_ctql routes on strictly positive row maxima") {
    QTable t = small_table();
    const Grid g = Grid::coarse();
    QTable tg = QTable::for_grid(g);
    RngStream rng(5);
    const Vec2 suggestion{1.0, 0.0};

    SUBCASE("all-zero row goes to the tutor") {
        auto [a, b] = select_action_ctql(tg, 0, suggestion, g, 0.0, rng);
        CHECK(b == PolicyBranch::TutorNearest);
    }
    SUBCASE("any positive entry goes to the q policy") {
        tg.set(0, 11, 0.1);
        auto [a, b] = select_action_ctql(tg, 0, suggestion, g, 0.0, rng);
        CHECK(b == PolicyBranch::GreedyQ);
        CHECK(a == 11);
    }
    SUBCASE("all-negative row goes to the tutor") {
        for (ActionId a = 0; a < tg.n_actions(); ++a) tg.set(0, a, -0.5);
        CHECK(select_action_ctql(tg, 0, suggestion, g, 0.0, rng).second ==
              PolicyBranch::TutorNearest);
    }
    SUBCASE("branch predicate holds per call on random rows") {
        RngStream vals(17);
        for (int iter = 0; iter < 2000; ++iter) {
            const StateId s = vals.uniform_index(g.n_states());
            tg.set(s, vals.uniform_index(g.n_actions()), vals.uniform(-1.0, 1.0));
            auto [a, b] = select_action_ctql(tg, s, suggestion, g, 0.0, rng);
            const bool q_branch = b == PolicyBranch::GreedyQ || b == PolicyBranch::RandomQ;
            REQUIRE(q_branch == (tg.max_value(s) > 0.0));
        }
    }
}

TEST_CASE("select_action_ctql with eps=0 and a unique positive action is deterministic") {
    const Grid g = Grid::coarse();
    QTable t = QTable::for_grid(g);
    t.set(5, 42, 0.7);
    RngStream rng(1);
    for (int i = 0; i < 100; ++i) {
        auto [a, b] = select_action_ctql(t, 5, {0.0, 0.0}, g, 0.0, rng);
        CHECK(a == 42);
        CHECK(b == PolicyBranch::GreedyQ);
    }
}

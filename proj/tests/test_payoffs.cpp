#include <doctest.h>

#include "swapgame/payoffs.hpp"

using namespace swapgame;

TEST_CASE("raw score branches") {
    CHECK(raw_score(0.8, PrepStrategy::NotPrepare, 100.0, 0.5) == doctest::Approx(40.0));
    CHECK(raw_score(0.8, PrepStrategy::Prepare, 100.0, 0.5) == doctest::Approx(80.0));
}

TEST_CASE("copy result takes the better script") {
    CHECK(copy_result(40.0, 80.0) == 80.0);
    CHECK(copy_result(80.0, 40.0) == 80.0);
    CHECK(copy_result(60.0, 60.0) == 60.0);
}

TEST_CASE("swap payoff worked value") {
    GameParams x;
    x.beta = 0.5;
    x.gamma = 0.5;
    x.g = 100.0;
    CHECK(swap_payoff(80.0, 1.0, x) == doctest::Approx(65.0));
}

TEST_CASE("copier expected utilities, both regimes") {
    GameParams x;
    x.p0 = 0.3;
    x.tau = 0.0;
    x.theta_a = 1.0;
    x.g = 100.0;
    CHECK(eu_copier_traditional(x) == doctest::Approx(70.0));

    GameParams y;
    y.p = 1.0; // deterministic detection for the worked value
    y.beta = 0.5;
    y.theta_a = 1.0;
    y.theta_b = 0.5;
    y.g = 100.0;
    y.gamma = 0.6;
    CHECK(eu_copier_swap(y) == doctest::Approx(65.0));

    y.alpha = 0.4;
    y.c = 10.0;
    CHECK(eu_victim_swap(y) == doctest::Approx(30.0)); // 0.5*20 + 0.5*60 - 10
}

TEST_CASE("mutual-no-preparation payoffs") {
    GameParams x;
    x.theta_a = 1.0;
    x.theta_b = 0.5;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.6;
    x.g = 100.0;
    const NpnpPayoffs plain = eu_npnp(x, false);
    CHECK(plain.a == doctest::Approx(40.0));
    CHECK(plain.b == doctest::Approx(20.0));
    const NpnpPayoffs swapped = eu_npnp(x, true);
    CHECK(swapped.a == doctest::Approx(40.0)); // 0.5*20 + 0.5*60
    CHECK(swapped.b == doctest::Approx(35.0)); // 0.5*40 + 0.5*30
}

TEST_CASE("coordinated preparation scores") {
    GameParams x;
    x.theta_a = 1.0;
    x.theta_b = 0.5;
    x.g = 100.0;
    const CoordinatedScores cs = coordinated_scores(x);
    CHECK(cs.copied == doctest::Approx(100.0));
    CHECK(cs.swapped == doctest::Approx(75.0));
}

TEST_CASE("coordinated swapped score is exact under equal abilities") {
    // 0.5*g*(theta+theta) must equal theta*g at the bit level for any inputs.
    for (int i = 1; i <= 200; ++i) {
        GameParams x;
        x.theta_a = x.theta_b = i / 200.0;
        x.g = 37.0 + i * 0.61;
        const CoordinatedScores cs = coordinated_scores(x);
        CHECK(cs.swapped == x.theta_a * x.g);
    }
}

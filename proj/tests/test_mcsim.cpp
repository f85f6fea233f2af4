#include <doctest.h>

#include <cmath>

#include "swapgame/mcsim.hpp"
#include "test_util.hpp"

using namespace swapgame;

namespace {

constexpr PrepStrategy kP = PrepStrategy::Prepare;
constexpr PrepStrategy kNP = PrepStrategy::NotPrepare;

GameParams example_params() {
    GameParams x;
    x.theta_a = 1.0;
    x.theta_b = 0.5;
    x.g = 100.0;
    x.c = 10.0;
    x.p = 0.5;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.6;
    return validate(x);
}

SimConfig base_config() {
    SimConfig cfg;
    cfg.params = example_params();
    cfg.n = 100000;
    cfg.seed = 7;
    return cfg;
}

} // namespace

TEST_CASE("mutual preparation has zero variance exactly") {
    SimConfig cfg = base_config();
    cfg.profile.s_a = cfg.profile.s_b = kP;
    cfg.n = 5000;
    const SimStats stats = simulate(cfg);
    CHECK(stats.mean_a == cfg.params.theta_a * cfg.params.g -
                              effort_cost(cfg.params.theta_a, cfg.params.c));
    CHECK(stats.mean_b == cfg.params.theta_b * cfg.params.g -
                              effort_cost(cfg.params.theta_b, cfg.params.c));
    CHECK(stats.se_a == 0.0);
    CHECK(stats.se_b == 0.0);
}

TEST_CASE("deterministic detection matches the matrix cell exactly") {
    SimConfig cfg = base_config();
    cfg.profile.s_a = kP;
    cfg.profile.s_b = kNP;
    cfg.params.p = 1.0; // boundary accepted for deterministic-detection runs
    cfg.n = 2000;
    const SimStats stats = simulate(cfg);
    const PayoffMatrix m = build_matrix(cfg.params, BehaviorPolicy{});
    CHECK(stats.mean_a == m.at(kP, kNP).a);
    CHECK(stats.mean_b == m.at(kP, kNP).b);
    CHECK(stats.se_a == 0.0);
    CHECK(stats.se_b == 0.0);
}

TEST_CASE("means agree with the matrix within three standard errors") {
    SimConfig cfg = base_config();
    cfg.profile.s_a = kP;
    cfg.profile.s_b = kNP;
    cfg.n = 1000000;
    const SimStats stats = simulate(cfg);
    const PayoffMatrix m = build_matrix(cfg.params, BehaviorPolicy{});
    CHECK(std::abs(stats.mean_a - m.at(kP, kNP).a) <= 3.0 * stats.se_a);
    CHECK(std::abs(stats.mean_b - m.at(kP, kNP).b) <= 3.0 * stats.se_b);
}

TEST_CASE("simulate is a pure function of its config") {
    SimConfig cfg = base_config();
    cfg.profile.s_b = kNP;
    const std::string once = simstats_to_text(simulate(cfg));
    const std::string twice = simstats_to_text(simulate(cfg));
    CHECK(once == twice);
}

TEST_CASE("thread count does not change the result") {
    SimConfig cfg = base_config();
    cfg.profile.s_b = kNP;
    cfg.n = 300000; // several chunks
    cfg.threads = 1;
    const SimStats one = simulate(cfg);
    cfg.threads = 4;
    const SimStats four = simulate(cfg);
    CHECK(one.mean_a == four.mean_a);
    CHECK(one.mean_b == four.mean_b);
    CHECK(one.se_a == four.se_a);
    CHECK(one.se_b == four.se_b);
}

TEST_CASE("different seeds give different samples") {
    SimConfig cfg = base_config();
    cfg.profile.s_b = kNP;
    const SimStats a = simulate(cfg);
    cfg.seed = 8;
    const SimStats b = simulate(cfg);
    CHECK(a.mean_a != b.mean_a);
}

TEST_CASE("degenerate sample sizes") {
    SimConfig cfg = base_config();
    cfg.profile.s_b = kNP;
    cfg.n = 0;
    CHECK_THROWS_AS(simulate(cfg), DomainError);
    cfg.n = 1;
    const SimStats stats = simulate(cfg);
    CHECK(stats.n == 1);
    CHECK(std::isnan(stats.se_a)); // no spread estimate from one draw
}

TEST_CASE("cell audit covers every profile, regime, and player") {
    const auto rows = simulate_cell_audit(example_params(), BehaviorPolicy{}, 100000, 3);
    REQUIRE(rows.size() == 16);
    for (const auto& row : rows) {
        CHECK_FALSE(row.flagged); // statistical agreement with the matrix
    }
    const std::string csv = audit_to_csv(rows);
    CHECK(csv.rfind("profile,regime,player,closed_form,mc_mean,se,z\n", 0) == 0);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 17);
}

TEST_CASE("cell audit is byte-identical across runs") {
    const auto a = simulate_cell_audit(example_params(), BehaviorPolicy{}, 20000, 11);
    const auto b = simulate_cell_audit(example_params(), BehaviorPolicy{}, 20000, 11);
    CHECK(audit_to_csv(a) == audit_to_csv(b));
}

TEST_CASE("audit agrees across random parameter draws") {
    testutil::Rng rng(0xbead);
    for (int i = 0; i < 3; ++i) {
        const GameParams x = testutil::draw_params(rng, false);
        const auto rows = simulate_cell_audit(x, BehaviorPolicy{}, 100000,
                                              1000 + static_cast<std::uint64_t>(i));
        for (const auto& row : rows) {
            INFO("draw ", i, " ", row.profile, "/", to_string(row.regime), " player ",
                 row.player, " z=", row.z);
            CHECK(std::abs(row.z) <= 4.0);
        }
    }
}

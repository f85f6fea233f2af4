#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>

#include "swapgame/equilibrium.hpp"
#include "test_util.hpp"

using namespace swapgame;

namespace {

constexpr PrepStrategy kP = PrepStrategy::Prepare;
constexpr PrepStrategy kNP = PrepStrategy::NotPrepare;

GameParams matrix_example() {
    GameParams x;
    x.theta_a = x.theta_b = 1.0;
    x.g = 100.0;
    x.c = 10.0;
    x.p = 0.5;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.6;
    return validate(x);
}

// Coordination game: cells (70,70), (7,64), (64,7), (40,40).
GameParams coordination_example() {
    GameParams x;
    x.theta_a = x.theta_b = 1.0;
    x.g = 100.0;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.2;
    x.p = 0.9;
    x.c = 30.0;
    return validate(x);
}

} // namespace

TEST_CASE("pure equilibria of the coordination example") {
    const PayoffMatrix m = build_matrix(coordination_example(), BehaviorPolicy{});
    const auto ne = pure_nash(m);
    REQUIRE(ne.size() == 2);
    CHECK(ne[0] == PureProfile{kP, kP});
    CHECK(ne[1] == PureProfile{kNP, kNP});
}

TEST_CASE("pure equilibria use the weak-inequality definition") {
    // At p exactly on the best-response boundary the indifferent profile
    // still counts. The matrix example at p = 0.5 has the deviation payoff
    // from (P,P) equal to the cell value.
    const PayoffMatrix m = build_matrix(matrix_example(), BehaviorPolicy{});
    CHECK(m.at(kP, kP).a == doctest::Approx(m.at(kNP, kP).a));
    const auto ne = pure_nash(m);
    bool has_pp = false;
    for (const auto& profile : ne) has_pp = has_pp || profile == PureProfile{kP, kP};
    CHECK(has_pp);
}

TEST_CASE("pure equilibria match exhaustive deviation checks on random draws") {
    testutil::Rng rng(0xabcdef);
    for (int i = 0; i < 1000; ++i) {
        const GameParams x = testutil::draw_params(rng, i % 2 == 0);
        const PayoffMatrix m = build_matrix(x, BehaviorPolicy{},
                                            i % 3 == 0 ? Regime::Traditional : Regime::Swap);
        const auto ne = pure_nash(m);
        for (PrepStrategy s_a : {kP, kNP}) {
            for (PrepStrategy s_b : {kP, kNP}) {
                const PrepStrategy alt_a = s_a == kP ? kNP : kP;
                const PrepStrategy alt_b = s_b == kP ? kNP : kP;
                const bool is_ne = m.at(s_a, s_b).a >= m.at(alt_a, s_b).a &&
                                   m.at(s_a, s_b).b >= m.at(s_a, alt_b).b;
                bool listed = false;
                for (const auto& profile : ne)
                    listed = listed || profile == PureProfile{s_a, s_b};
                CHECK(listed == is_ne);
            }
        }
    }
}

TEST_CASE("mixed equilibrium of the coordination example") {
    const PayoffMatrix m = build_matrix(coordination_example(), BehaviorPolicy{});
    const auto mix = mixed_nash_2x2(m);
    REQUIRE(mix.has_value());
    // Indifference: 70q + 7(1-q) = 64q + 40(1-q)  =>  39q = 33.
    CHECK(std::abs(mix->q_a - 33.0 / 39.0) <= 1e-9);
    CHECK(std::abs(mix->q_b - 33.0 / 39.0) <= 1e-9);
}

TEST_CASE("mixed equilibrium is absent for dominant-strategy games") {
    GameParams x = matrix_example();
    x.p = 0.9; // Prepare strictly dominant for both
    const PayoffMatrix m = build_matrix(x, BehaviorPolicy{});
    CHECK_FALSE(mixed_nash_2x2(m).has_value());
}

TEST_CASE("stated closed-form threshold worked value") {
    GameParams x;
    x.theta_a = x.theta_b = 1.0;
    x.g = 100.0;
    x.c = 70.0;
    x.alpha = 0.5;
    x.beta = 0.5;
    x.gamma = 0.5;
    CHECK(threshold_p_eq15(x) == doctest::Approx(0.4));
    x.theta_b = 0.9;
    CHECK_THROWS_AS(threshold_p_eq15(x), AsymmetryError);
}

TEST_CASE("deviation threshold worked value and numeric agreement") {
    GameParams x;
    x.theta_a = x.theta_b = 1.0;
    x.g = 100.0;
    x.c = 10.0;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.6;
    CHECK(threshold_p_deviation(x) == doctest::Approx(0.5));
    const NumericThresholds nt = threshold_p_numeric(validate(x), BehaviorPolicy{});
    REQUIRE(nt.p_pp_br.has_value());
    CHECK(std::abs(*nt.p_pp_br - 0.5) <= 1e-9);
    REQUIRE(nt.p_unique.has_value());
    CHECK(std::abs(*nt.p_unique - 0.5) <= 1e-6);
}

TEST_CASE("deviation threshold rejects a vanishing swap loss") {
    GameParams x;
    x.beta = 0.9999999; // bracket 1 - beta - (1-beta)*gamma collapses
    x.gamma = 0.9999999;
    CHECK_THROWS_AS(threshold_p_deviation(x), SingularError);
}

TEST_CASE("proposition 1 worked values") {
    GameParams x;
    x.p = 0.5;
    x.p0 = 0.5;
    x.tau = 0.5;
    x.beta = 0.5;
    x.gamma = 0.5;
    const Prop1Result r = check_prop1(validate(x));
    CHECK(r.lhs == doctest::Approx(0.125));
    CHECK(r.rhs == doctest::Approx(0.25));
    CHECK_FALSE(r.condition_holds);
    CHECK(r.model_agrees);
}

TEST_CASE("proposition 1 reports both verdicts under strong asymmetry") {
    GameParams x;
    x.theta_a = 1.0;
    x.theta_b = 0.2;
    x.p = 0.5;
    x.p0 = 0.5;
    x.tau = 0.0;
    x.beta = 0.9;
    x.gamma = 0.1;
    const Prop1Result r = check_prop1(validate(x));
    // The stated condition drops theta_b; the direct comparison keeps it.
    // Both verdicts must be present whichever way they land.
    CHECK(r.model_agrees == (r.condition_holds == r.model_holds));
}

TEST_CASE("proposition 2 worked values") {
    GameParams x = matrix_example();
    Prop2Result r = check_prop2(x);
    CHECK(r.lhs == doctest::Approx(60.0));
    CHECK(r.rhs == doctest::Approx(35.0));
    CHECK_FALSE(r.condition_holds);
    CHECK_FALSE(r.in_pure_ne);
    CHECK(r.model_agrees);

    x.c = 60.0;
    r = check_prop2(x);
    CHECK(r.rhs == doctest::Approx(85.0));
    CHECK(r.condition_holds);
    CHECK(r.in_pure_ne);
    CHECK(r.model_agrees);
}

TEST_CASE("proposition 3 worked values") {
    GameParams x;
    x.theta_a = 1.0;
    x.theta_b = 0.5;
    x.g = 100.0;
    x.p = 0.5;
    x.c = 10.0;
    Prop3Result r = check_prop3(validate(x));
    CHECK(r.a.lhs == doctest::Approx(87.5));
    CHECK(r.a.rhs == doctest::Approx(90.0));
    CHECK_FALSE(r.a.condition_holds);

    x.p = 1.0; // boundary value used by the worked example
    x.c = 30.0;
    r = check_prop3(x);
    CHECK(r.a.lhs == doctest::Approx(75.0));
    CHECK(r.a.rhs == doctest::Approx(70.0));
    CHECK(r.a.condition_holds);
}

TEST_CASE("low-ability player never prepares under extreme asymmetry") {
    GameParams x;
    x.theta_a = 1.0;
    x.theta_b = 0.05;
    x.g = 100.0;
    x.c = 10.0;
    x.p = 0.5;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.6;
    const HeteroClass cls = classify_hetero(validate(x));
    const bool expected = cls == HeteroClass::SeparatingOnly ||
                          cls == HeteroClass::Coexisting ||
                          cls == HeteroClass::NoPrepUnique;
    CHECK(expected);
    // Cross-check against the matrix: preparing is strictly worse for B.
    const PayoffMatrix m = build_matrix(validate(x), BehaviorPolicy{});
    CHECK(m.at(kP, kNP).b > m.at(kP, kP).b);
}

TEST_CASE("ratio thresholds bracket a real classification change") {
    GameParams x;
    x.g = 100.0;
    x.c = 10.0;
    x.p = 0.5;
    x.alpha = 0.4;
    x.beta = 0.5;
    x.gamma = 0.6;
    const double theta_b = 0.3;
    const RatioThresholds rt = find_ratio_thresholds(validate(x), theta_b);
    auto classify_at = [&](double rho) {
        GameParams y = x;
        y.theta_b = theta_b;
        y.theta_a = rho * theta_b;
        return classify_hetero(validate(y));
    };
    for (const auto& rho : {rt.rho_lo, rt.rho_hi}) {
        if (!rho) continue;
        if (*rho - 1e-4 < 1.0 || (*rho + 1e-4) * theta_b > 1.0) continue;
        CHECK(classify_at(*rho - 1e-4) != classify_at(*rho + 1e-4));
    }
}

TEST_CASE("solve surfaces the stated-vs-derived threshold disagreement") {
    const EquilibriumReport report = solve(matrix_example(), BehaviorPolicy{});
    REQUIRE(report.thresholds.p_bar_eq15.has_value());
    REQUIRE(report.thresholds.p_bar_deviation.has_value());
    CHECK(*report.thresholds.p_bar_eq15 == doctest::Approx(-1.0));
    CHECK(*report.thresholds.p_bar_deviation == doctest::Approx(0.5));
    bool noted = false;
    for (const auto& note : report.consistency_notes) {
        noted = noted || note.rfind("PAPER-INCONSISTENCY:", 0) == 0;
    }
    CHECK(noted);
    // Equilibrium answers come from the matrix, not the stated threshold.
    CHECK(report.pure_ne == pure_nash(report.matrix));
}

TEST_CASE("report JSON carries the documented schema keys") {
    const nlohmann::json j = report_to_json(solve(matrix_example(), BehaviorPolicy{}));
    CHECK(j["schema_version"] == 1);
    CHECK(j.contains("pure_ne"));
    CHECK(j.contains("mixed_ne"));
    CHECK(j["thresholds"].contains("p_bar_eq15"));
    CHECK(j["thresholds"].contains("p_bar_deviation"));
    CHECK(j["thresholds"]["p_bar_numeric"].contains("p_pp_br"));
    CHECK(j["thresholds"]["p_bar_numeric"].contains("p_unique"));
    CHECK(j.contains("consistency_notes"));
}

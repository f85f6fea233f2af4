#include <doctest.h>
#include <nlohmann/json.hpp>

#include "swapgame/matrix.hpp"
#include "test_util.hpp"

using namespace swapgame;

namespace {

GameParams worked_example() {
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

} // namespace

TEST_CASE("swap-regime matrix worked example") {
    const PayoffMatrix m = build_matrix(worked_example(), BehaviorPolicy{});
    CHECK(m.at(PrepStrategy::Prepare, PrepStrategy::Prepare).a == doctest::Approx(90.0));
    CHECK(m.at(PrepStrategy::Prepare, PrepStrategy::Prepare).b == doctest::Approx(90.0));
    CHECK(m.at(PrepStrategy::Prepare, PrepStrategy::NotPrepare).a == doctest::Approx(65.0));
    CHECK(m.at(PrepStrategy::Prepare, PrepStrategy::NotPrepare).b == doctest::Approx(90.0));
    CHECK(m.at(PrepStrategy::NotPrepare, PrepStrategy::Prepare).a == doctest::Approx(90.0));
    CHECK(m.at(PrepStrategy::NotPrepare, PrepStrategy::Prepare).b == doctest::Approx(65.0));
    CHECK(m.at(PrepStrategy::NotPrepare, PrepStrategy::NotPrepare).a ==
          doctest::Approx(40.0));
    CHECK(m.at(PrepStrategy::NotPrepare, PrepStrategy::NotPrepare).b ==
          doctest::Approx(40.0));
}

TEST_CASE("closed symmetric payoffs equal matrix cells bit for bit") {
    testutil::Rng rng(0x1234);
    for (int i = 0; i < 500; ++i) {
        const GameParams x = testutil::draw_params(rng, true);
        const PayoffMatrix m = build_matrix(x, BehaviorPolicy{}, Regime::Swap);
        const SymmetricPayoffs sp = symmetric_payoffs(x);
        CHECK(sp.pi_pp == m.cells[0].a);
        CHECK(sp.pi_pp == m.cells[0].b);
        CHECK(sp.pi_a_pnp == m.cells[1].a);
        CHECK(sp.pi_b_pnp == m.cells[1].b);
        CHECK(sp.pi_npnp == m.cells[3].a);
    }
}

TEST_CASE("symmetric_payoffs rejects unequal abilities") {
    GameParams x = worked_example();
    x.theta_b = 0.5;
    CHECK_THROWS_AS(symmetric_payoffs(x), AsymmetryError);
}

TEST_CASE("player relabeling transposes the matrix") {
    testutil::Rng rng(0x9876);
    for (int i = 0; i < 500; ++i) {
        const GameParams x = testutil::draw_params(rng, false);
        GameParams y = x;
        std::swap(y.theta_a, y.theta_b);
        for (Regime regime : {Regime::Swap, Regime::Traditional}) {
            const PayoffMatrix m = build_matrix(x, BehaviorPolicy{}, regime);
            const PayoffMatrix t = build_matrix(y, BehaviorPolicy{}, regime);
            for (PrepStrategy s_a : {PrepStrategy::Prepare, PrepStrategy::NotPrepare}) {
                for (PrepStrategy s_b :
                     {PrepStrategy::Prepare, PrepStrategy::NotPrepare}) {
                    CHECK(m.at(s_a, s_b).a == t.at(s_b, s_a).b);
                    CHECK(m.at(s_a, s_b).b == t.at(s_b, s_a).a);
                }
            }
        }
    }
}

TEST_CASE("traditional regime punishes only the copier") {
    GameParams x = worked_example();
    x.p0 = 0.5;
    x.tau = 0.5;
    const PayoffMatrix m = build_matrix(x, BehaviorPolicy{}, Regime::Traditional);
    // Copier: (1-p0)*100 + p0*tau*100; victim keeps 100 - c.
    CHECK(m.at(PrepStrategy::Prepare, PrepStrategy::NotPrepare).b ==
          doctest::Approx(75.0));
    CHECK(m.at(PrepStrategy::Prepare, PrepStrategy::NotPrepare).a ==
          doctest::Approx(90.0));
}

TEST_CASE("no-copy cells are regime independent") {
    testutil::Rng rng(0x4242);
    for (int i = 0; i < 200; ++i) {
        const GameParams x = testutil::draw_params(rng, false);
        const PayoffMatrix s = build_matrix(x, BehaviorPolicy{}, Regime::Swap);
        const PayoffMatrix t = build_matrix(x, BehaviorPolicy{}, Regime::Traditional);
        CHECK(s.cells[0] == t.cells[0]);   // (P,P): nobody copies
        CHECK(s.cells[3] == t.cells[3]);   // (NP,NP) under the baseline rule
    }
}

TEST_CASE("matrix JSON uses the documented cell keys") {
    const PayoffMatrix m = build_matrix(worked_example(), BehaviorPolicy{});
    const nlohmann::json j = matrix_to_json(m);
    CHECK(j["regime"] == "swap");
    for (const char* key : {"PP", "PNP", "NPP", "NPNP"}) {
        CHECK(j["cells"].contains(key));
        CHECK(j["cells"][key].contains("a"));
        CHECK(j["cells"][key].contains("b"));
    }
    CHECK(j["cells"]["PNP"]["a"].get<double>() == doctest::Approx(65.0));
}

TEST_CASE("index and key helpers agree") {
    CHECK(PayoffMatrix::index(PrepStrategy::Prepare, PrepStrategy::Prepare) == 0);
    CHECK(PayoffMatrix::index(PrepStrategy::Prepare, PrepStrategy::NotPrepare) == 1);
    CHECK(PayoffMatrix::index(PrepStrategy::NotPrepare, PrepStrategy::Prepare) == 2);
    CHECK(PayoffMatrix::index(PrepStrategy::NotPrepare, PrepStrategy::NotPrepare) == 3);
    CHECK(std::string(cell_key(1)) == "PNP");
    CHECK(std::string(to_string(Regime::Traditional)) == "traditional");
}

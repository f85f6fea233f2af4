#include "swapgame/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "swapgame/mcsim.hpp"
#include "swapgame/statics.hpp"
#include "swapgame/welfare.hpp"

namespace swapgame {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Deterministic splitmix64 stream for parameter draws.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

GameParams draw_params(Rng& rng, bool symmetric) {
    GameParams x;
    x.theta_a = rng.uniform(0.2, 1.0);
    x.theta_b = symmetric ? x.theta_a : rng.uniform(0.2, 1.0);
    x.g = rng.uniform(50.0, 150.0);
    x.alpha = rng.uniform(0.1, 0.9);
    x.beta = rng.uniform(0.1, 0.9);
    x.gamma = rng.uniform(0.1, 0.9);
    x.p = rng.uniform(0.1, 0.9);
    x.p0 = rng.uniform(0.1, 0.9);
    x.tau = rng.uniform(0.0, 0.8);
    x.c = rng.uniform(1.0, 20.0);
    return validate(x);
}

constexpr PrepStrategy kP = PrepStrategy::Prepare;
constexpr PrepStrategy kNP = PrepStrategy::NotPrepare;

// --- check 1: closed-form vs Monte Carlo cell agreement -------------------

bool cell_within_3se(const GameParams& params, const BehaviorPolicy& behavior,
                     Regime regime, int cell_idx, std::uint64_t n, std::uint64_t seed,
                     std::string& failure) {
    const PayoffMatrix m = build_matrix(params, behavior, regime);
    SimConfig cfg;
    cfg.params = params;
    cfg.profile.s_a = cell_idx >= 2 ? kNP : kP;
    cfg.profile.s_b = cell_idx % 2 == 1 ? kNP : kP;
    cfg.profile.behavior = behavior;
    cfg.regime = regime;
    cfg.n = n;
    cfg.seed = seed;
    const SimStats stats = simulate(cfg);
    const CellPayoffs& cell = m.cells[static_cast<std::size_t>(cell_idx)];
    auto ok = [](double mean, double se, double closed) {
        const double diff = std::abs(mean - closed);
        return se > 0.0 ? diff <= 3.0 * se : diff == 0.0;
    };
    if (ok(stats.mean_a, stats.se_a, cell.a) && ok(stats.mean_b, stats.se_b, cell.b)) {
        return true;
    }
    std::ostringstream msg;
    msg << cell_key(cell_idx) << "/" << to_string(regime) << ": closed=(" << fmt(cell.a)
        << "," << fmt(cell.b) << ") mc=(" << fmt(stats.mean_a) << "," << fmt(stats.mean_b)
        << ") se=(" << fmt(stats.se_a) << "," << fmt(stats.se_b) << ")";
    failure = msg.str();
    return false;
}

CheckResult check_mc_cells() {
    CheckResult out{"mc_cells", true, ""};
    Rng rng(0x5eed0001ULL);
    const std::uint64_t n = 100000;
    int checked = 0;
    for (int draw = 0; draw < 20; ++draw) {
        const GameParams params = draw_params(rng, false);
        for (Regime regime : {Regime::Swap, Regime::Traditional}) {
            for (int idx = 0; idx < 4; ++idx) {
                ++checked;
                const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(checked);
                std::string failure;
                if (cell_within_3se(params, BehaviorPolicy{}, regime, idx, n, seed,
                                    failure)) {
                    continue;
                }
                // One retry with a fresh seed; both failing fails the check.
                std::string retry_failure;
                if (cell_within_3se(params, BehaviorPolicy{}, regime, idx, n,
                                    seed + 0x517e, retry_failure)) {
                    continue;
                }
                out.passed = false;
                out.detail = "cell failed twice: " + failure + " then " + retry_failure;
                return out;
            }
        }
    }
    out.detail = "20 parameter sets, 8 cells each, all within 3 SE at n=" + std::to_string(n);
    return out;
}

// --- check 2: deviation threshold vs bisection ----------------------------

CheckResult check_thresholds() {
    CheckResult out{"thresholds", true, ""};

    GameParams worked;
    worked.theta_a = worked.theta_b = 1.0;
    worked.g = 100.0;
    worked.c = 10.0;
    worked.alpha = 0.4;
    worked.beta = 0.5;
    worked.gamma = 0.6;
    const auto numeric = threshold_p_numeric(worked, BehaviorPolicy{});
    if (!numeric.p_pp_br || std::abs(*numeric.p_pp_br - 0.5) > 1e-9) {
        out.passed = false;
        out.detail = "worked example p_pp_br != 0.5 +/- 1e-9, got " +
                     (numeric.p_pp_br ? fmt(*numeric.p_pp_br) : std::string("absent"));
        return out;
    }

    Rng rng(0x5eed0002ULL);
    int compared = 0;
    int attempts = 0;
    while (compared < 200 && attempts < 5000) {
        ++attempts;
        const GameParams x = draw_params(rng, true);
        double dev;
        try {
            dev = threshold_p_deviation(x);
        } catch (const SingularError&) {
            continue;
        }
        const auto num = threshold_p_numeric(x, BehaviorPolicy{});
        if (!num.p_pp_br) continue;
        ++compared;
        const double expected = std::clamp(dev, 0.0, 1.0);
        if (std::abs(expected - *num.p_pp_br) > 1e-6) {
            out.passed = false;
            out.detail = "disagreement: p_bar_deviation=" + fmt(dev) +
                         " p_pp_br=" + fmt(*num.p_pp_br);
            return out;
        }
    }
    if (compared < 200) {
        out.passed = false;
        out.detail = "only " + std::to_string(compared) + " comparable draws";
        return out;
    }
    out.detail = "worked example exact; 200 random symmetric draws agree within 1e-6";
    return out;
}

// --- check 3: (NP,NP) condition vs pure-NE membership ----------------------

CheckResult check_prop2_equivalence() {
    CheckResult out{"prop2", true, ""};
    Rng rng(0x5eed0003ULL);
    int tested = 0;
    int knife_edges = 0;
    for (int i = 0; i < 1000; ++i) {
        const GameParams x = draw_params(rng, true);
        const Prop2Result r = check_prop2(x);
        if (r.knife_edge) {
            ++knife_edges;
            continue;
        }
        ++tested;
        if (r.condition_holds != r.in_pure_ne) {
            out.passed = false;
            out.detail = "mismatch at theta=" + fmt(x.theta_a) + " p=" + fmt(x.p) +
                         " c=" + fmt(x.c) + ": condition=" +
                         (r.condition_holds ? "true" : "false") + " in_pure_ne=" +
                         (r.in_pure_ne ? "true" : "false");
            return out;
        }
    }
    out.detail = std::to_string(tested) + " draws agree (" + std::to_string(knife_edges) +
                 " knife edges excluded)";
    return out;
}

// --- check 4: analytic derivatives vs finite differences -------------------

CheckResult check_derivatives() {
    CheckResult out{"derivatives", true, ""};
    Rng rng(0x5eed0004ULL);
    int tested = 0;
    int attempts = 0;
    while (tested < 100 && attempts < 5000) {
        ++attempts;
        GameParams x = draw_params(rng, true);
        x.theta_a = x.theta_b = rng.uniform(0.4, 1.0);
        x.c = rng.uniform(1.0, 60.0);
        const double bracket = 1.0 - x.beta * x.alpha - (1.0 - x.beta) * x.gamma;
        if (std::abs(bracket) < 0.2) continue; // keep finite differences well conditioned
        ++tested;

        auto eq15 = [](const GameParams& y) { return threshold_p_eq15(y); };
        const double fd_c = finite_diff(eq15, "c", x, default_fd_step(x.c));
        const double an_c = dpbar_dc(x);
        const double fd_b = finite_diff(eq15, "beta", x, default_fd_step(x.beta));
        const double an_b = dpbar_dbeta(x);

        auto relative_ok = [](double analytic, double fd) {
            if (std::abs(analytic) <= 1e-12) return true;
            return std::abs(fd - analytic) / std::abs(analytic) <= 1e-6;
        };
        if (!relative_ok(an_c, fd_c) || !relative_ok(an_b, fd_b)) {
            out.passed = false;
            out.detail = "fd mismatch: dc analytic=" + fmt(an_c) + " fd=" + fmt(fd_c) +
                         "; dbeta analytic=" + fmt(an_b) + " fd=" + fmt(fd_b);
            return out;
        }

        const double theta = x.theta_a;
        const double sign_expected =
            -1.0 * ((x.gamma > x.alpha) - (x.gamma < x.alpha)) *
            ((x.c / theta > theta * x.g * (1.0 - x.alpha)) -
             (x.c / theta < theta * x.g * (1.0 - x.alpha)));
        const double sign_actual = (an_b > 0.0) - (an_b < 0.0);
        if (sign_expected != 0.0 && sign_actual != sign_expected) {
            out.passed = false;
            out.detail = "dbeta sign law violated: analytic=" + fmt(an_b);
            return out;
        }
    }
    if (tested < 100) {
        out.passed = false;
        out.detail = "only " + std::to_string(tested) + " well-conditioned draws";
        return out;
    }
    out.detail = "100 draws: analytic vs central differences within 1e-6 relative, sign "
                 "law holds";
    return out;
}

// --- check 5: coordinated-score symmetry -----------------------------------

CheckResult check_eq13() {
    CheckResult out{"eq13", true, ""};
    Rng rng(0x5eed0005ULL);
    for (int i = 0; i < 100; ++i) {
        const GameParams x = draw_params(rng, true);
        const CoordinatedScores s = coordinated_scores(x);
        if (s.swapped != x.theta_a * x.g) {
            out.passed = false;
            out.detail = "swapped score not bit-equal to theta*g at theta=" +
                         fmt(x.theta_a) + " g=" + fmt(x.g);
            return out;
        }
        const Prop3Result p3 = check_prop3(x);
        if (!p3.a.condition_holds || !p3.b.condition_holds) {
            out.passed = false;
            out.detail = "symmetric coordination condition false with c=" + fmt(x.c);
            return out;
        }
    }
    out.detail = "100 symmetric draws: swapped == theta*g bit-exact, condition always true";
    return out;
}

// --- check 6: stated-vs-derived threshold inconsistency surfacing ----------

CheckResult check_inconsistency() {
    CheckResult out{"inconsistency", true, ""};
    std::vector<GameParams> examples;
    {
        GameParams x;
        x.theta_a = x.theta_b = 1.0;
        x.g = 100.0;
        x.c = 10.0;
        x.alpha = 0.4;
        x.beta = 0.5;
        x.gamma = 0.6;
        x.p = 0.6;
        examples.push_back(x);
    }
    {
        GameParams x;
        x.theta_a = x.theta_b = 0.8;
        x.g = 120.0;
        x.c = 25.0;
        x.alpha = 0.3;
        x.beta = 0.4;
        x.gamma = 0.5;
        x.p = 0.7;
        examples.push_back(x);
    }
    for (const GameParams& x : examples) {
        const EquilibriumReport r = solve(x, BehaviorPolicy{});
        if (!r.thresholds.p_bar_eq15 || !r.thresholds.p_bar_deviation) {
            out.passed = false;
            out.detail = "expected both thresholds to be computable";
            return out;
        }
        const bool differ =
            std::abs(*r.thresholds.p_bar_eq15 - *r.thresholds.p_bar_deviation) > 1e-9;
        const bool noted =
            std::any_of(r.consistency_notes.begin(), r.consistency_notes.end(),
                        [](const std::string& s) {
                            return s.rfind("PAPER-INCONSISTENCY:", 0) == 0;
                        });
        if (differ && !noted) {
            out.passed = false;
            out.detail = "thresholds differ but no PAPER-INCONSISTENCY note emitted";
            return out;
        }
        // Equilibrium answers must come from the matrix alone.
        const auto direct = pure_nash(build_matrix(x, BehaviorPolicy{}, Regime::Swap));
        if (direct != r.pure_ne) {
            out.passed = false;
            out.detail = "reported pure NE differ from direct matrix recomputation";
            return out;
        }
    }
    out.detail = "inconsistency noted and equilibria are matrix-driven on the example set";
    return out;
}

// --- check 7: output determinism -------------------------------------------

CheckResult check_determinism() {
    CheckResult out{"determinism", true, ""};
    GameParams x;
    x.theta_a = 0.9;
    x.theta_b = 0.7;
    SimConfig cfg;
    cfg.params = x;
    cfg.profile.s_a = kP;
    cfg.profile.s_b = kNP;
    cfg.n = 200000;
    cfg.seed = 42;

    cfg.threads = 1;
    const std::string once = simstats_to_text(simulate(cfg));
    const std::string twice = simstats_to_text(simulate(cfg));
    cfg.threads = 4;
    const std::string threaded = simstats_to_text(simulate(cfg));
    if (once != twice || once != threaded) {
        out.passed = false;
        out.detail = "simulate output differs across runs or thread counts";
        return out;
    }

    SweepSpec spec;
    spec.base = x;
    spec.base.theta_b = 0.9; // symmetric so closed-form columns stay defined
    spec.axis = "p";
    for (int k = 0; k < 19; ++k) spec.grid.push_back(0.05 + 0.05 * k);
    spec.outputs = {"p_bar_eq15", "p_bar_deviation", "cell_pp_a", "np_ne_count"};
    const std::string csv1 = sweep_to_csv(run_sweep(spec));
    const std::string csv2 = sweep_to_csv(run_sweep(spec));
    if (csv1 != csv2) {
        out.passed = false;
        out.detail = "sweep CSV differs across runs";
        return out;
    }
    out.detail = "simulate and sweep outputs byte-identical across runs and thread counts";
    return out;
}

// --- check 8: mixed-equilibrium soundness -----------------------------------

CheckResult check_mixed() {
    CheckResult out{"mixed", true, ""};
    Rng rng(0x5eed0008ULL);
    int found = 0;

    auto indifference_ok = [](const PayoffMatrix& m, const MixedEquilibrium& mix) {
        const double a11 = m.at(kP, kP).a, a12 = m.at(kP, kNP).a;
        const double a21 = m.at(kNP, kP).a, a22 = m.at(kNP, kNP).a;
        const double b11 = m.at(kP, kP).b, b12 = m.at(kP, kNP).b;
        const double b21 = m.at(kNP, kP).b, b22 = m.at(kNP, kNP).b;
        const double gap_a = mix.q_b * (a11 - a21) + (1.0 - mix.q_b) * (a12 - a22);
        const double gap_b = mix.q_a * (b11 - b12) + (1.0 - mix.q_a) * (b21 - b22);
        return std::abs(gap_a) <= 1e-9 && std::abs(gap_b) <= 1e-9;
    };

    // Hand-constructed coordination game: two pure NE and an interior mix.
    {
        GameParams x;
        x.theta_a = x.theta_b = 1.0;
        x.g = 100.0;
        x.alpha = 0.4;
        x.beta = 0.5;
        x.gamma = 0.2;
        x.p = 0.9;
        x.c = 30.0;
        const PayoffMatrix m = build_matrix(x, BehaviorPolicy{}, Regime::Swap);
        // Cells are (70,70), (7,64), (64,7), (40,40); indifference gives
        // 39 q = 33 for both players.
        const double q_expected = 33.0 / 39.0;
        const auto mix = mixed_nash_2x2(m);
        if (!mix || std::abs(mix->q_a - q_expected) > 1e-9 ||
            std::abs(mix->q_b - q_expected) > 1e-9 || !indifference_ok(m, *mix)) {
            out.passed = false;
            out.detail = "coordination example mix missing or wrong";
            return out;
        }
    }

    for (int i = 0; i < 500; ++i) {
        const GameParams x = draw_params(rng, i % 2 == 0);
        BehaviorPolicy behavior;
        behavior.copy_in_npnp = (i % 5 == 0);
        const PayoffMatrix m = build_matrix(x, behavior, Regime::Swap);
        const auto mix = mixed_nash_2x2(m);
        if (!mix) continue;
        ++found;
        if (!(mix->q_a >= 0.0 && mix->q_a <= 1.0 && mix->q_b >= 0.0 && mix->q_b <= 1.0) ||
            !indifference_ok(m, *mix)) {
            out.passed = false;
            out.detail = "emitted mix violates indifference at draw " + std::to_string(i);
            return out;
        }
    }
    out.detail = "coordination example q=33/39 exact; " + std::to_string(found) +
                 " random mixes satisfy indifference within 1e-9";
    return out;
}

} // namespace

std::vector<std::string> battery_check_names() {
    return {"mc_cells",  "thresholds",    "prop2",       "derivatives",
            "eq13",      "inconsistency", "determinism", "mixed"};
}

std::vector<CheckResult> run_battery(const std::vector<std::string>& filter) {
    auto wanted = [&](const char* name) {
        return filter.empty() ||
               std::find(filter.begin(), filter.end(), name) != filter.end();
    };
    for (const auto& name : filter) {
        const auto names = battery_check_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw SpecError("unknown check \"" + name + "\"");
        }
    }
    std::vector<CheckResult> results;
    if (wanted("mc_cells")) results.push_back(check_mc_cells());
    if (wanted("thresholds")) results.push_back(check_thresholds());
    if (wanted("prop2")) results.push_back(check_prop2_equivalence());
    if (wanted("derivatives")) results.push_back(check_derivatives());
    if (wanted("eq13")) results.push_back(check_eq13());
    if (wanted("inconsistency")) results.push_back(check_inconsistency());
    if (wanted("determinism")) results.push_back(check_determinism());
    if (wanted("mixed")) results.push_back(check_mixed());
    return results;
}

} // namespace swapgame

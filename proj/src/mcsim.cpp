#include "swapgame/mcsim.hpp"

#include "swapgame/payoffs.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace swapgame {

namespace {

// splitmix64 finalizer. Trial t under seed s draws its uniform from
// mix(mix(s) + t), a counter-based stream: trial outcomes are a pure
// function of (seed, trial index).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double trial_uniform(std::uint64_t seed_hash, std::uint64_t trial) {
    return static_cast<double>(mix64(seed_hash + trial) >> 11) * 0x1.0p-53;
}

double undetected_copy(double r_own, double r_source, PrepStrategy source_prep) {
    return source_prep == PrepStrategy::Prepare ? copy_result(r_own, r_source) : r_own;
}

struct TrialSetup {
    double r_a, r_b;
    double cost_a, cost_b;
    bool copies_a, copies_b;
    double detect_p;
};

TrialSetup make_setup(const SimConfig& cfg) {
    const GameParams& x = cfg.params;
    const StrategyProfile& pr = cfg.profile;
    TrialSetup s;
    s.r_a = raw_score(x.theta_a, pr.s_a, x.g, x.alpha);
    s.r_b = raw_score(x.theta_b, pr.s_b, x.g, x.alpha);
    s.cost_a = pr.s_a == PrepStrategy::Prepare ? effort_cost(x.theta_a, x.c) : 0.0;
    s.cost_b = pr.s_b == PrepStrategy::Prepare ? effort_cost(x.theta_b, x.c) : 0.0;
    s.copies_a = attempts_copy(pr.s_a, pr.s_b, pr.behavior);
    s.copies_b = attempts_copy(pr.s_b, pr.s_a, pr.behavior);
    s.detect_p = cfg.regime == Regime::Swap ? x.p : x.p0;
    return s;
}

struct TrialPayoffs {
    double a, b;
};

TrialPayoffs run_trial(const SimConfig& cfg, const TrialSetup& s, bool detected) {
    const GameParams& x = cfg.params;
    const StrategyProfile& pr = cfg.profile;
    double v_a;
    double v_b;
    if (!detected) {
        v_a = s.copies_a ? undetected_copy(s.r_a, s.r_b, pr.s_b) : s.r_a;
        v_b = s.copies_b ? undetected_copy(s.r_b, s.r_a, pr.s_a) : s.r_b;
    } else if (cfg.regime == Regime::Swap) {
        v_a = swap_payoff(s.r_b, x.theta_a, x);
        v_b = swap_payoff(s.r_a, x.theta_b, x);
    } else {
        v_a = s.copies_a ? x.tau * undetected_copy(s.r_a, s.r_b, pr.s_b) : s.r_a;
        v_b = s.copies_b ? x.tau * undetected_copy(s.r_b, s.r_a, pr.s_a) : s.r_b;
    }
    return {v_a - s.cost_a, v_b - s.cost_b};
}

struct Accumulator {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    // Chan et al. pairwise merge; `other` follows `this` in trial order.
    void merge(const Accumulator& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double delta = other.mean - mean;
        const std::uint64_t total = n + other.n;
        mean += delta * (static_cast<double>(other.n) / static_cast<double>(total));
        m2 += other.m2 + delta * delta *
                             (static_cast<double>(n) * static_cast<double>(other.n) /
                              static_cast<double>(total));
        n = total;
    }

    double stderr_of_mean() const {
        if (n < 2) return std::numeric_limits<double>::quiet_NaN();
        const double var = m2 / static_cast<double>(n - 1);
        return std::sqrt(var < 0.0 ? 0.0 : var) /
               std::sqrt(static_cast<double>(n));
    }
};

struct ChunkStats {
    Accumulator a;
    Accumulator b;
};

constexpr std::uint64_t kChunkSize = 1 << 16;

ChunkStats run_chunk(const SimConfig& cfg, const TrialSetup& s, std::uint64_t seed_hash,
                     std::uint64_t begin, std::uint64_t end) {
    ChunkStats out;
    const bool any_copy = s.copies_a || s.copies_b;
    for (std::uint64_t t = begin; t < end; ++t) {
        const bool detected = any_copy && trial_uniform(seed_hash, t) < s.detect_p;
        const TrialPayoffs v = run_trial(cfg, s, detected);
        out.a.add(v.a);
        out.b.add(v.b);
    }
    return out;
}

} // namespace

SimStats simulate(const SimConfig& cfg) {
    if (cfg.n < 1) {
        throw DomainError("n", "n must satisfy n >= 1");
    }
    // Params are treated as pre-validated; boundary detection probabilities
    // (p = 0 or 1) are accepted here so deterministic-detection runs work.
    const TrialSetup setup = make_setup(cfg);
    const std::uint64_t seed_hash = mix64(cfg.seed);

    const std::uint64_t num_chunks = (cfg.n + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkStats> chunks(num_chunks);

    auto work = [&](std::uint64_t chunk_begin, std::uint64_t chunk_end) {
        for (std::uint64_t ci = chunk_begin; ci < chunk_end; ++ci) {
            const std::uint64_t lo = ci * kChunkSize;
            const std::uint64_t hi = std::min(cfg.n, lo + kChunkSize);
            chunks[ci] = run_chunk(cfg, setup, seed_hash, lo, hi);
        }
    };

    const unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1 || num_chunks == 1) {
        work(0, num_chunks);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t per = (num_chunks + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = t * per;
            const std::uint64_t hi = std::min<std::uint64_t>(num_chunks, lo + per);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // Merge in fixed chunk order so the result is thread-count independent.
    ChunkStats total;
    for (const auto& chunk : chunks) {
        total.a.merge(chunk.a);
        total.b.merge(chunk.b);
    }

    SimStats stats;
    stats.mean_a = total.a.mean;
    stats.mean_b = total.b.mean;
    stats.se_a = total.a.stderr_of_mean();
    stats.se_b = total.b.stderr_of_mean();
    stats.n = cfg.n;
    stats.seed = cfg.seed;
    return stats;
}

std::vector<AuditRow> simulate_cell_audit(const GameParams& params,
                                          const BehaviorPolicy& behavior, std::uint64_t n,
                                          std::uint64_t seed) {
    std::vector<AuditRow> rows;
    for (Regime regime : {Regime::Swap, Regime::Traditional}) {
        const PayoffMatrix m = build_matrix(params, behavior, regime);
        for (int idx = 0; idx < 4; ++idx) {
            SimConfig cfg;
            cfg.params = params;
            cfg.profile.s_a = idx >= 2 ? PrepStrategy::NotPrepare : PrepStrategy::Prepare;
            cfg.profile.s_b =
                idx % 2 == 1 ? PrepStrategy::NotPrepare : PrepStrategy::Prepare;
            cfg.profile.behavior = behavior;
            cfg.regime = regime;
            cfg.n = n;
            // Distinct stream per (profile, regime) cell.
            cfg.seed = seed + static_cast<std::uint64_t>(idx * 2 +
                                                         (regime == Regime::Swap ? 0 : 1)) *
                                  0x9e3779b97f4a7c15ULL;
            const SimStats stats = simulate(cfg);
            const CellPayoffs& cell = m.cells[static_cast<std::size_t>(idx)];

            auto emit = [&](char player, double closed, double mean, double se) {
                AuditRow row;
                row.profile = cell_key(idx);
                row.regime = regime;
                row.player = player;
                row.closed_form = closed;
                row.mc_mean = mean;
                row.se = se;
                const double diff = mean - closed;
                if (se > 0.0) {
                    row.z = diff / se;
                } else {
                    row.z = diff == 0.0 ? 0.0
                                        : std::numeric_limits<double>::infinity();
                }
                row.flagged = std::abs(row.z) > 4.0;
                rows.push_back(row);
            };
            emit('a', cell.a, stats.mean_a, stats.se_a);
            emit('b', cell.b, stats.mean_b, stats.se_b);
        }
    }
    return rows;
}

std::string audit_to_csv(const std::vector<AuditRow>& rows) {
    std::string out = "profile,regime,player,closed_form,mc_mean,se,z\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%c,%.12g,%.12g,%.12g,%.12g\n",
                      row.profile.c_str(), to_string(row.regime), row.player,
                      row.closed_form, row.mc_mean, row.se, row.z);
        out += buf;
    }
    return out;
}

std::string simstats_to_text(const SimStats& stats) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "n=%llu seed=%llu\nmean_a=%.12g se_a=%.12g\nmean_b=%.12g se_b=%.12g\n",
                  static_cast<unsigned long long>(stats.n),
                  static_cast<unsigned long long>(stats.seed), stats.mean_a, stats.se_a,
                  stats.mean_b, stats.se_b);
    return buf;
}

} // namespace swapgame

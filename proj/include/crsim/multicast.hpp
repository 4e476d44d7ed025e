#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "lp.hpp"
#include "sensing.hpp"
#include "video.hpp"

namespace crsim {

inline double allocation_total(const TileAllocation& l) {
    double total = 0.0;
    for (const auto& row : l)
        for (int v : row) total += v;
    return total;
}

inline double allocation_rate(const MulticastGroup& g, const std::vector<int>& row) {
    double rate = 0.0;
    for (std::size_t m = 0; m < row.size(); ++m)
        rate += g.payload[m] * row[m];
    return rate;
}

// ---------------------------------------------------------------------------
// Budget estimation
// ---------------------------------------------------------------------------

// Predicted number of transmission opportunities over the estimation window:
// the sum of predicted availability over every channel and every slot from
// now to min(window, end of GoP).
inline double estimate_budget(const std::vector<double>& beliefs,
                              const std::vector<MarkovChannel>& chains,
                              long slot, int gop_slots, int window) {
    if (window < 1 || gop_slots < 1)
        throw std::invalid_argument("estimation window and GoP length must be >= 1");
    const long horizon =
        std::min<long>(window - 1, gop_slots - (slot % gop_slots));
    double total = 0.0;
    for (std::size_t n = 0; n < beliefs.size(); ++n)
        for (long tau = 0; tau <= horizon; ++tau)
            total += predict_belief(beliefs[n], chains[n], static_cast<int>(tau));
    return total;
}

// Expected whole-GoP tile budget used to seed the allocation: idle slots in
// expectation minus the slots the base layers will consume.
inline double gop_budget(const std::vector<MarkovChannel>& chains, int gop_slots,
                         const std::vector<MulticastGroup>& groups) {
    double mean_util = 0.0;
    for (const auto& ch : chains) mean_util += ch.utilization();
    if (!chains.empty()) mean_util /= static_cast<double>(chains.size());
    double budget =
        static_cast<double>(chains.size()) * gop_slots * (1.0 - mean_util);
    for (const auto& g : groups)
        if (g.source.r_base > 0.0)
            budget -= std::ceil(g.source.r_base / g.payload.front());
    return std::max(0.0, budget);
}

// ---------------------------------------------------------------------------
// Greedy tile partition
// ---------------------------------------------------------------------------

namespace detail {

// Marginal utility per unit of weighted cost; the cost of a tile is its rate
// plus its fair share of the total enhancement rate per budgeted slot.
inline double grd_score(const MulticastGroup& g, const std::vector<int>& row,
                        int m, double rate_per_slot) {
    std::vector<int> next = row;
    ++next[static_cast<std::size_t>(m)];
    const double gain = group_utility(g, next) - group_utility(g, row);
    return gain / (g.payload[static_cast<std::size_t>(m)] + rate_per_slot);
}

} // namespace detail

// One-shot greedy fill: repeatedly add the tile with the best normalized
// marginal utility; a group that overruns its rate cap has the offending tile
// rolled back and drops out.  Ties break toward the lowest group, then the
// lowest scheme index.
inline TileAllocation grd1(const std::vector<MulticastGroup>& groups,
                           double budget) {
    for (const auto& g : groups) g.validate();
    TileAllocation l = zero_allocation(groups);
    if (budget < 1.0) return l;

    double cap_total = 0.0;
    for (const auto& g : groups) cap_total += g.rate_cap;
    const double rate_per_slot = cap_total / budget;

    std::vector<char> active(groups.size(), 1);
    double total = 0.0;
    while (total + 1.0 <= budget + 1e-9) {
        int best_g = -1, best_m = -1;
        double best = -1.0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (!active[g]) continue;
            for (int m = 0; m < groups[g].schemes(); ++m) {
                const double s = detail::grd_score(groups[g], l[g], m, rate_per_slot);
                if (s > best) {
                    best = s;
                    best_g = static_cast<int>(g);
                    best_m = m;
                }
            }
        }
        if (best_g < 0) break;
        auto& row = l[static_cast<std::size_t>(best_g)];
        ++row[static_cast<std::size_t>(best_m)];
        const auto& grp = groups[static_cast<std::size_t>(best_g)];
        if (allocation_rate(grp, row) > grp.rate_cap + 1e-9) {
            --row[static_cast<std::size_t>(best_m)];
            active[static_cast<std::size_t>(best_g)] = 0;
        } else {
            total += 1.0;
        }
    }
    return l;
}

// Baseline: give every group an equal slice of the budget and fill each slice
// greedily in isolation.
inline TileAllocation equal_allocation(const std::vector<MulticastGroup>& groups,
                                       double budget) {
    TileAllocation l = zero_allocation(groups);
    if (groups.empty()) return l;
    const double share = budget / static_cast<double>(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<MulticastGroup> one{groups[g]};
        l[g] = grd1(one, share)[0];
    }
    return l;
}

// ---------------------------------------------------------------------------
// Linear relaxation and sequential fixing
// ---------------------------------------------------------------------------

struct RltModel {
    LinearProgram lp;
    // var_of[g][m] gives the LP column of tile count (g, m)
    std::vector<std::vector<int>> var_of;
};

// Linearized relaxation of the tile partition problem: each log term is
// replaced by an auxiliary variable held under a family of tangents, making
// the whole objective linear.  The tangent envelope dominates the log, so the
// LP optimum upper-bounds the true integer optimum.
inline RltModel build_relaxation(const std::vector<MulticastGroup>& groups,
                                 double budget, int n_tangents = 8) {
    RltModel model;
    auto& lp = model.lp;
    model.var_of.resize(groups.size());

    for (std::size_t g = 0; g < groups.size(); ++g) {
        groups[g].validate();
        for (int m = 0; m < groups[g].schemes(); ++m)
            model.var_of[g].push_back(
                lp.add_variable(0.0, std::max(0.0, budget), 0.0));
    }

    // Budget row over every tile variable.
    {
        std::vector<double> row(static_cast<std::size_t>(lp.num_vars), 0.0);
        for (const auto& vars : model.var_of)
            for (int v : vars) row[static_cast<std::size_t>(v)] = 1.0;
        lp.add_row(std::move(row), '<', std::max(0.0, budget));
    }

    // Rate cap row per group.
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<double> row(static_cast<std::size_t>(lp.num_vars), 0.0);
        for (int m = 0; m < groups[g].schemes(); ++m)
            row[static_cast<std::size_t>(model.var_of[g][m])] =
                groups[g].payload[static_cast<std::size_t>(m)];
        lp.add_row(std::move(row), '<', groups[g].rate_cap);
    }

    // One log variable per audience stratum with positive weight.
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& grp = groups[g];
        const double lo = grp.source.q_base;
        const double hi = grp.source.q_base + grp.source.beta * grp.rate_cap;
        const LogEnvelope env = log_envelope(lo, std::max(lo, hi), n_tangents);
        double q_ub = std::log(std::max(lo, hi)) + 1.0;
        for (const auto& t : env.tangents)
            q_ub = std::max(q_ub, t.slope * hi + t.intercept);

        for (int k = 0; k < grp.schemes(); ++k) {
            const int n_k = grp.audience[static_cast<std::size_t>(k)];
            const int n_next = k + 1 < grp.schemes()
                                   ? grp.audience[static_cast<std::size_t>(k) + 1]
                                   : 0;
            const int users = n_k - n_next;
            if (users <= 0) continue;
            const int qv = lp.add_variable(0.0, q_ub, static_cast<double>(users));
            for (const auto& t : env.tangents) {
                std::vector<double> row(static_cast<std::size_t>(lp.num_vars), 0.0);
                row[static_cast<std::size_t>(qv)] = 1.0;
                for (int m = 0; m <= k; ++m)
                    row[static_cast<std::size_t>(model.var_of[g][m])] =
                        -t.slope * grp.source.beta *
                        grp.payload[static_cast<std::size_t>(m)];
                lp.add_row(std::move(row), '<',
                           t.slope * grp.source.q_base + t.intercept);
            }
        }
    }
    return model;
}

namespace detail {

// Rows added early are narrower than the final variable count; pad them.
inline void pad_rows(LinearProgram& lp) {
    for (auto& row : lp.rows)
        row.coeffs.resize(static_cast<std::size_t>(lp.num_vars), 0.0);
}

} // namespace detail

// LP optimum of the linearized relaxation; an upper bound on any feasible
// integer allocation's utility.
inline double relaxation_bound(const std::vector<MulticastGroup>& groups,
                               double budget, int n_tangents = 8) {
    RltModel model = build_relaxation(groups, budget, n_tangents);
    detail::pad_rows(model.lp);
    LpResult res = solve_lp(model.lp);
    if (res.status != LpResult::Status::optimal)
        throw std::runtime_error("relaxation LP did not solve");
    return res.objective;
}

// Round the relaxation one variable at a time: repeatedly pin the tile count
// closest to an integer, preferring the nearest value, backing off to the
// other side and finally to zero if a pin makes the program infeasible.
inline TileAllocation sequential_fixing(const std::vector<MulticastGroup>& groups,
                                        double budget, int n_tangents = 8) {
    RltModel model = build_relaxation(groups, budget, n_tangents);
    detail::pad_rows(model.lp);

    struct Fix { int var; double value; };
    std::vector<Fix> fixes;
    std::vector<char> fixed(static_cast<std::size_t>(model.lp.num_vars), 0);

    auto solve_with = [&](const std::vector<Fix>& fs) {
        LinearProgram lp = model.lp;
        for (const auto& f : fs) {
            lp.lower[static_cast<std::size_t>(f.var)] = f.value;
            lp.upper[static_cast<std::size_t>(f.var)] = f.value;
        }
        return solve_lp(lp);
    };

    int tile_vars = 0;
    for (const auto& vars : model.var_of) tile_vars += static_cast<int>(vars.size());

    for (int round = 0; round < tile_vars; ++round) {
        LpResult res = solve_with(fixes);
        if (res.status != LpResult::Status::optimal)
            throw std::runtime_error("relaxation LP did not solve");

        int pick = -1;
        double pick_dist = 2.0, pick_value = 0.0;
        for (const auto& vars : model.var_of)
            for (int v : vars) {
                if (fixed[static_cast<std::size_t>(v)]) continue;
                const double x = res.x[static_cast<std::size_t>(v)];
                const double nearest = std::floor(x + 0.5);
                const double dist = std::fabs(x - nearest);
                if (dist < pick_dist - 1e-12) {
                    pick = v;
                    pick_dist = dist;
                    pick_value = std::max(0.0, nearest);
                }
            }
        if (pick < 0) break;

        Fix f{pick, pick_value};
        fixes.push_back(f);
        if (solve_with(fixes).status != LpResult::Status::optimal) {
            // Try the other side of the fractional value, then give up at 0.
            const double x = solve_with({fixes.begin(), fixes.end() - 1})
                                 .x[static_cast<std::size_t>(pick)];
            const double other =
                pick_value > x ? std::floor(x) : std::ceil(x);
            fixes.back().value = std::max(0.0, other);
            if (solve_with(fixes).status != LpResult::Status::optimal)
                fixes.back().value = 0.0;
        }
        fixed[static_cast<std::size_t>(pick)] = 1;
    }

    TileAllocation l = zero_allocation(groups);
    for (const auto& f : fixes)
        for (std::size_t g = 0; g < model.var_of.size(); ++g)
            for (std::size_t m = 0; m < model.var_of[g].size(); ++m)
                if (model.var_of[g][m] == f.var)
                    l[g][m] = static_cast<int>(std::lround(f.value));
    return l;
}

// ---------------------------------------------------------------------------
// Per-slot adjustment
// ---------------------------------------------------------------------------

struct PlannerState {
    TileAllocation alloc;
    std::vector<char> active;
    double prev_budget = 0.0;  // previous slot's opportunity estimate
    double acks_prev = 0.0;    // tiles acknowledged in the previous slot
    double acks_prev2 = 0.0;   // and the slot before that
    int scheme_floor = 0;      // lowest scheme considered when adjusting
};

inline PlannerState make_planner_state(const std::vector<MulticastGroup>& groups,
                                       TileAllocation alloc) {
    PlannerState st;
    st.alloc = std::move(alloc);
    st.active.assign(groups.size(), 1);
    return st;
}

// Tracks the opportunity estimate slot over slot.  The allocation is the
// whole-GoP plan; `acked` marks the tiles already delivered, so the quantity
// balanced against the estimate is the outstanding backlog.  When the
// estimate (plus freshly released slots) falls, pending tiles with the
// weakest normalized utility are dropped and their groups rejoin the
// candidate set; when it grows, the greedy fill resumes from the highest
// scheme used last slot.  Equal totals leave the plan untouched.
inline void grd2_adjust(const std::vector<MulticastGroup>& groups,
                        PlannerState& st, double budget_now,
                        const TileAllocation& acked = {}) {
    const bool have_floor = acked.size() == groups.size();
    auto floor_of = [&](std::size_t g, int m) {
        return have_floor ? acked[g][static_cast<std::size_t>(m)] : 0;
    };
    auto pending_total = [&]() {
        double total = allocation_total(st.alloc);
        if (have_floor)
            for (const auto& row : acked)
                for (int v : row) total -= v;
        return total;
    };

    double cap_total = 0.0;
    for (const auto& g : groups) cap_total += g.rate_cap;
    const double rate_per_slot =
        budget_now >= 1.0 ? cap_total / budget_now : cap_total;

    const double now_sum = budget_now + st.acks_prev;
    const double prev_sum = st.prev_budget + st.acks_prev2;
    if (now_sum < prev_sum) {
        const double target = budget_now + st.acks_prev2;
        while (pending_total() > target) {
            int best_g = -1, best_m = -1;
            double best = 0.0;
            for (int pass = 0; pass < 2 && best_g < 0; ++pass) {
                const int m_lo = pass == 0 ? st.scheme_floor : 0;
                for (std::size_t g = 0; g < groups.size(); ++g)
                    for (int m = m_lo; m < groups[g].schemes(); ++m) {
                        if (st.alloc[g][static_cast<std::size_t>(m)] <=
                            floor_of(g, m))
                            continue;
                        std::vector<int> prev = st.alloc[g];
                        --prev[static_cast<std::size_t>(m)];
                        const double loss =
                            (group_utility(groups[g], st.alloc[g]) -
                             group_utility(groups[g], prev)) /
                            (groups[g].payload[static_cast<std::size_t>(m)] +
                             rate_per_slot);
                        if (best_g < 0 || loss < best) {
                            best = loss;
                            best_g = static_cast<int>(g);
                            best_m = m;
                        }
                    }
            }
            if (best_g < 0) break;
            --st.alloc[static_cast<std::size_t>(best_g)]
                      [static_cast<std::size_t>(best_m)];
            st.active[static_cast<std::size_t>(best_g)] = 1;
        }
    } else if (now_sum > prev_sum) {
        const double target = budget_now + st.acks_prev;
        while (pending_total() <= target + 1e-9) {
            int best_g = -1, best_m = -1;
            double best = -1.0;
            for (std::size_t g = 0; g < groups.size(); ++g) {
                if (!st.active[g]) continue;
                for (int m = st.scheme_floor; m < groups[g].schemes(); ++m) {
                    const double s =
                        detail::grd_score(groups[g], st.alloc[g], m, rate_per_slot);
                    if (s > best) {
                        best = s;
                        best_g = static_cast<int>(g);
                        best_m = m;
                    }
                }
            }
            if (best_g < 0) break;
            auto& row = st.alloc[static_cast<std::size_t>(best_g)];
            ++row[static_cast<std::size_t>(best_m)];
            const auto& grp = groups[static_cast<std::size_t>(best_g)];
            if (allocation_rate(grp, row) > grp.rate_cap + 1e-9) {
                --row[static_cast<std::size_t>(best_m)];
                st.active[static_cast<std::size_t>(best_g)] = 0;
            }
        }
    }
    st.prev_budget = budget_now;
}

// ---------------------------------------------------------------------------
// Tile scheduling across channels
// ---------------------------------------------------------------------------

struct TileRef {
    int group = 0;
    int scheme = 0;   // 0-based; meaningful only for enhancement tiles
    int ordinal = 1;  // 1-based position within its scheme (or base layer)
    bool base = false;
    double inc = 0.0;  // expected utility if this tile is decoded
};

struct TileGrant {
    int channel = 0;
    TileRef tile;
};

// Channels sorted by expected usefulness (transmit probability times
// availability belief) each take the pending tile with the best marginal
// utility.  Queues are consumed head-first, so scheme priority within a group
// is preserved.
inline std::vector<TileGrant> tsa_schedule(
    const std::vector<double>& channel_scores,
    std::vector<std::deque<TileRef>> queues) {
    std::vector<int> order(channel_scores.size());
    for (std::size_t n = 0; n < order.size(); ++n) order[n] = static_cast<int>(n);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return channel_scores[static_cast<std::size_t>(a)] >
               channel_scores[static_cast<std::size_t>(b)];
    });

    std::vector<TileGrant> grants;
    for (int n : order) {
        int best = -1;
        for (std::size_t g = 0; g < queues.size(); ++g) {
            if (queues[g].empty()) continue;
            if (best < 0 ||
                queues[g].front().inc >
                    queues[static_cast<std::size_t>(best)].front().inc)
                best = static_cast<int>(g);
        }
        if (best < 0) break;
        auto& q = queues[static_cast<std::size_t>(best)];
        grants.push_back(TileGrant{n, q.front()});
        q.pop_front();
    }
    return grants;
}

// ---------------------------------------------------------------------------
// GoP simulation
// ---------------------------------------------------------------------------

struct InfraConfig {
    std::vector<MarkovChannel> chains;
    SensorProfile profile;
    double gamma = 0.1;
    int gop_slots = 150;
    int window = 10;          // opportunity estimation lookahead
    std::string scheme = "greedy";  // greedy | sf | equal
};

struct GroupGopStats {
    double delivered_enh_kb = 0.0;
    bool base_delivered = false;
    std::optional<double> psnr;
    double utility = 0.0;
    std::vector<int> acked;
};

struct GopResult {
    std::vector<GroupGopStats> groups;
    std::vector<long> collisions;  // per channel, this GoP
    long acks = 0;
    long slots = 0;
};

// Drives one base station over consecutive GoPs: belief maintenance, initial
// allocation per the configured scheme, per-slot adjustment (greedy scheme
// only), tile scheduling, and transmission against the true channel states.
class InfraSim {
public:
    InfraSim(InfraConfig cfg, std::vector<MulticastGroup> groups,
             std::uint64_t seed)
        : cfg_(std::move(cfg)), groups_(std::move(groups)) {
        if (cfg_.scheme != "greedy" && cfg_.scheme != "sf" && cfg_.scheme != "equal")
            throw std::invalid_argument("unknown allocation scheme: " + cfg_.scheme);
        cfg_.profile.validate();
        if (cfg_.gamma <= 0.0 || cfg_.gamma >= 1.0)
            throw std::invalid_argument("gamma must lie in (0, 1)");
        for (const auto& g : groups_) g.validate();
        bank_ = ChannelBank({cfg_.chains}, seed);
        const std::size_t n = cfg_.chains.size();
        beliefs_.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            beliefs_[m] = 1.0 - cfg_.chains[m].utilization();
            sense_.push_back(substream(
                seed, static_cast<std::uint64_t>(StreamTag::sensing), 0, m));
            access_.push_back(substream(
                seed, static_cast<std::uint64_t>(StreamTag::access), 0, m));
        }
        base_need_.resize(groups_.size());
        for (std::size_t g = 0; g < groups_.size(); ++g)
            base_need_[g] =
                groups_[g].source.r_base > 0.0
                    ? static_cast<int>(std::ceil(groups_[g].source.r_base /
                                                 groups_[g].payload.front()))
                    : 0;
    }

    GopResult run_gop() {
        const std::size_t n = cfg_.chains.size();
        const std::size_t gcount = groups_.size();

        TileAllocation alloc;
        if (cfg_.scheme == "sf") {
            alloc = sequential_fixing(
                groups_, gop_budget(cfg_.chains, cfg_.gop_slots, groups_));
        } else if (cfg_.scheme == "equal") {
            alloc = equal_allocation(
                groups_, gop_budget(cfg_.chains, cfg_.gop_slots, groups_));
        } else {
            // The greedy plan starts from the belief-based estimate so the
            // per-slot adjustment sees a consistent baseline.
            double seed_budget = estimate_budget(beliefs_, cfg_.chains, slot_,
                                                 cfg_.gop_slots, cfg_.window);
            for (int need : base_need_) seed_budget -= need;
            alloc = grd1(groups_, std::max(0.0, seed_budget));
        }
        PlannerState st = make_planner_state(groups_, alloc);

        std::vector<std::vector<int>> acked(gcount);
        for (std::size_t g = 0; g < gcount; ++g)
            acked[g].assign(static_cast<std::size_t>(groups_[g].schemes()), 0);
        std::vector<int> base_acked(gcount, 0);

        GopResult result;
        result.collisions.assign(n, 0);
        result.slots = cfg_.gop_slots;

        for (int tt = 1; tt <= cfg_.gop_slots; ++tt) {
            ++slot_;
            bank_.step();
            traj_hash_ = traj_hash_ * 0x100000001b3ull ^ bank_.state_digest();

            for (std::size_t m = 0; m < n; ++m) {
                const auto report = draw_report(bank_.busy(0, m), 1,
                                                cfg_.profile, sense_[m]);
                beliefs_[m] = update_belief(beliefs_[m], cfg_.chains[m], report,
                                            cfg_.profile);
            }

            bool base_done = true;
            for (std::size_t g = 0; g < gcount; ++g)
                if (base_acked[g] < base_need_[g]) base_done = false;

            const double budget_now = estimate_budget(
                beliefs_, cfg_.chains, slot_, cfg_.gop_slots, cfg_.window);
            if (cfg_.scheme == "greedy" && tt > 1 && base_done)
                grd2_adjust(groups_, st, budget_now, acked);
            else
                st.prev_budget = budget_now;

            // Build per-group queues: pending base tiles first, then pending
            // enhancement tiles in scheme order.
            std::vector<std::deque<TileRef>> queues(gcount);
            for (std::size_t g = 0; g < gcount; ++g) {
                const auto& grp = groups_[g];
                for (int i = base_acked[g]; i < base_need_[g]; ++i) {
                    TileRef t;
                    t.group = static_cast<int>(g);
                    t.base = true;
                    t.ordinal = i + 1;
                    t.inc = 1e9 + grp.audience.front() *
                                      std::log(grp.source.q_base) /
                                      static_cast<double>(base_need_[g]);
                    queues[g].push_back(t);
                    if (queues[g].size() >= n) break;
                }
                for (int m = 0; m < grp.schemes() &&
                                queues[g].size() < n; ++m) {
                    const int want = st.alloc[g][static_cast<std::size_t>(m)];
                    for (int i = acked[g][static_cast<std::size_t>(m)];
                         i < want && queues[g].size() < n; ++i) {
                        TileRef t;
                        t.group = static_cast<int>(g);
                        t.scheme = m;
                        t.ordinal = i + 1;
                        t.inc = incremental_utility(grp, acked[g], m, i + 1);
                        queues[g].push_back(t);
                    }
                }
            }

            std::vector<double> p_tr(n), scores(n);
            for (std::size_t m = 0; m < n; ++m) {
                p_tr[m] = tx_probability(beliefs_[m], cfg_.gamma);
                scores[m] = p_tr[m] * beliefs_[m];
            }
            const auto grants = tsa_schedule(scores, queues);

            std::vector<const TileRef*> by_channel(n, nullptr);
            for (const auto& gr : grants)
                by_channel[static_cast<std::size_t>(gr.channel)] = &gr.tile;

            long acks_slot = 0;
            int top_scheme = -1;
            for (std::size_t m = 0; m < n; ++m) {
                const double draw = access_[m].uniform();  // consumed every slot
                const TileRef* tile = by_channel[m];
                if (tile == nullptr || draw > p_tr[m]) continue;
                if (bank_.busy(0, m)) {
                    ++result.collisions[m];
                    continue;
                }
                ++acks_slot;
                const auto g = static_cast<std::size_t>(tile->group);
                if (tile->base) {
                    ++base_acked[g];
                } else {
                    ++acked[g][static_cast<std::size_t>(tile->scheme)];
                    top_scheme = std::max(top_scheme, tile->scheme);
                }
            }
            if (top_scheme >= 0) st.scheme_floor = top_scheme;
            st.acks_prev2 = st.acks_prev;
            st.acks_prev = static_cast<double>(acks_slot);
            result.acks += acks_slot;
        }

        result.groups.resize(gcount);
        for (std::size_t g = 0; g < gcount; ++g) {
            auto& out = result.groups[g];
            const auto& grp = groups_[g];
            out.acked = acked[g];
            out.delivered_enh_kb = allocation_rate(grp, acked[g]);
            out.base_delivered = base_acked[g] >= base_need_[g];
            if (out.base_delivered) {
                out.psnr = grp.source.psnr(grp.source.r_base + out.delivered_enh_kb);
                out.utility = group_utility(grp, acked[g]);
            }
        }
        return result;
    }

    std::uint64_t trajectory_hash() const { return traj_hash_; }
    const std::vector<double>& beliefs() const { return beliefs_; }
    const ChannelBank& bank() const { return bank_; }

private:
    InfraConfig cfg_;
    std::vector<MulticastGroup> groups_;
    ChannelBank bank_;
    std::vector<double> beliefs_;
    std::vector<Rng> sense_;
    std::vector<Rng> access_;
    std::vector<int> base_need_;
    long slot_ = 0;
    std::uint64_t traj_hash_ = 0xcbf29ce484222325ull;
};

} // namespace crsim

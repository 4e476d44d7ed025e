// Acceptance gates: oracle equivalence, statistical contracts, trend
// direction, and determinism.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.  argv[1] names the scenario folder.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <crsim/experiment.hpp>

#include "oracles.hpp"

namespace {

using namespace crsim;

int g_failures = 0;

std::string strf(const char* fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return std::string(buf);
}

void report(int id, bool ok, const std::string& text) {
    std::printf("[%s] C%d: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

double total_utility(const std::vector<MulticastGroup>& groups,
                     const TileAllocation& l) {
    double total = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g)
        total += group_utility(groups[g], l[g]);
    return total;
}

MulticastGroup random_part_group(Rng& rng) {
    MulticastGroup g;
    g.source.q_base = 28.0 + 8.0 * rng.uniform();
    g.source.beta = 0.02 + 0.10 * rng.uniform();
    const int schemes = 1 + static_cast<int>(rng.below(3));
    int audience = 2 + static_cast<int>(rng.below(8));
    double payload = 0.4 + rng.uniform();
    for (int m = 0; m < schemes; ++m) {
        g.audience.push_back(audience);
        g.payload.push_back(payload);
        audience = std::max(1, audience - static_cast<int>(rng.below(3)));
        payload += 0.3 + 0.8 * rng.uniform();
    }
    g.rate_cap = rng.below(4) == 0
                     ? g.payload.front() * (1.0 + static_cast<double>(rng.below(3)))
                     : 4.0 + 14.0 * rng.uniform();
    g.source.r_enh_max = g.rate_cap;
    return g;
}

std::vector<MulticastGroup> random_part_instance(Rng& rng, int& budget) {
    std::vector<MulticastGroup> groups;
    const int gcount = 1 + static_cast<int>(rng.below(3));
    for (int g = 0; g < gcount; ++g) groups.push_back(random_part_group(rng));
    budget = static_cast<int>(rng.below(7));
    return groups;
}

// Random mesh selection instance: a small topology, sessions, the enumerated
// paths with their constraint rows (harvested from the simulator), and the
// per-path gains computed with every channel available on every link.
struct MeshInstance {
    Topology topo;
    std::vector<Session> sessions;
    std::vector<std::vector<Path>> paths;
    std::vector<std::vector<double>> rows;
    std::vector<double> gains;
    MeshConfig cfg;
};

double gain_of_path(const MeshInstance& ins, std::size_t l, const Path& p) {
    std::vector<LinkChannels> lc;
    for (std::size_t hop = 0; hop + 1 < p.size(); ++hop) {
        const int li = ins.topo.find_link(p[hop], p[hop + 1]);
        LinkChannels entry;
        for (int m = 0; m < ins.topo.num_channels; ++m)
            entry.options.emplace_back(
                m, ins.topo.links[static_cast<std::size_t>(li)]
                       .loss[static_cast<std::size_t>(m)]);
        lc.push_back(std::move(entry));
    }
    const ChannelSchedule sched = schedule_channels(lc);
    return path_gain(ins.sessions[l].video, ins.sessions[l].packet_kb,
                     ins.cfg.gop_slots, ins.cfg.slot_seconds,
                     ins.sessions[l].video.q_base, sched.expected_success);
}

std::optional<MeshInstance> random_mesh_instance(Rng& rng, int max_sessions,
                                                 int max_paths, int max_vars) {
    MeshInstance ins;
    const int nodes = 5 + static_cast<int>(rng.below(2));
    const int channels = 2 + static_cast<int>(rng.below(2));
    ins.topo.num_channels = channels;
    for (int n = 0; n < nodes; ++n) ins.topo.nodes.push_back({n, 0});
    auto add_link = [&](int a, int b) {
        if (ins.topo.find_link(a, b) >= 0) return;
        MeshLink l;
        l.a = a;
        l.b = b;
        for (int c = 0; c < channels; ++c)
            l.loss.push_back(0.05 + 0.55 * rng.uniform());
        ins.topo.links.push_back(std::move(l));
    };
    for (int n = 0; n + 1 < nodes; ++n) add_link(n, n + 1);
    const int chords = 1 + static_cast<int>(rng.below(3));
    for (int c = 0; c < chords; ++c) {
        const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes)));
        const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes)));
        if (a != b) add_link(std::min(a, b), std::max(a, b));
    }

    const int scount = 1 + static_cast<int>(
                               rng.below(static_cast<std::uint64_t>(max_sessions)));
    for (int s = 0; s < scount; ++s) {
        const int src = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes)));
        const int dst = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes)));
        if (src == dst) return std::nullopt;
        Session sess;
        sess.source = src;
        sess.dest = dst;
        sess.video = VideoSource{30.0, 0.005, 0.0, 0.0};
        sess.packet_kb = 100.0;
        ins.sessions.push_back(sess);
    }

    MeshConfig cfg;
    cfg.chains.assign(1, std::vector<MarkovChannel>(
                             static_cast<std::size_t>(channels),
                             MarkovChannel{0.5, 0.5}));
    cfg.observers.assign(1, std::vector<int>(static_cast<std::size_t>(channels), 1));
    cfg.profile = SensorProfile{0.3, 0.2};
    cfg.gamma = 0.2;
    cfg.gop_slots = 1;
    cfg.delay_budget = 3.0;
    cfg.max_paths = max_paths;
    cfg.scheme = "dual";
    MeshSim sim(cfg, ins.topo, ins.sessions, 1);
    ins.paths = sim.paths();
    ins.rows = sim.constraint_rows();
    ins.cfg = cfg;

    std::size_t total = 0;
    for (const auto& p : ins.paths) {
        if (p.empty()) return std::nullopt;
        total += p.size();
    }
    if (total == 0 || total > static_cast<std::size_t>(max_vars))
        return std::nullopt;

    for (std::size_t l = 0; l < ins.paths.size(); ++l)
        for (const auto& p : ins.paths[l])
            ins.gains.push_back(gain_of_path(ins, l, p));
    return ins;
}

// Node-disjoint greedy walks, each valued with the same gain formula as the
// enumerated paths.
double heuristic_value(const MeshInstance& ins) {
    std::vector<std::vector<int>> avail(ins.topo.links.size());
    for (auto& a : avail)
        for (int c = 0; c < ins.topo.num_channels; ++c) a.push_back(c);
    std::set<int> used;
    double total = 0.0;
    for (std::size_t l = 0; l < ins.sessions.size(); ++l) {
        const Session& s = ins.sessions[l];
        if (used.count(s.source) || used.count(s.dest)) continue;
        Topology pruned;
        pruned.num_channels = ins.topo.num_channels;
        for (const auto& n : ins.topo.nodes)
            if (!used.count(n.id)) pruned.nodes.push_back(n);
        for (const auto& lk : ins.topo.links)
            if (!used.count(lk.a) && !used.count(lk.b)) pruned.links.push_back(lk);
        std::vector<std::vector<int>> pruned_avail;
        for (const auto& lk : pruned.links)
            pruned_avail.push_back(
                avail[static_cast<std::size_t>(ins.topo.find_link(lk.a, lk.b))]);
        const Path p =
            greedy_walk(pruned, s.source, s.dest, ins.cfg.delay_budget, pruned_avail);
        if (p.empty()) continue;
        for (int node : p) used.insert(node);
        total += gain_of_path(ins, l, p);
    }
    return total;
}

void criterion1() {
    Stopwatch sw;
    Rng rng(0x5EED0001ull);
    const double factor = 1.0 - std::exp(-0.5);
    const int trials = 220;
    double worst = 1.0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        int budget = 0;
        const auto groups = random_part_instance(rng, budget);
        const double got = total_utility(groups, grd1(groups, budget));
        const double best = oracle::best_allocation_utility(groups, budget);
        if (got + 1e-9 < factor * best) ++violations;
        if (best > 1e-12) worst = std::min(worst, got / best);
    }
    const double secs = sw.seconds();
    report(1, violations == 0 && secs < 10.0,
           strf("greedy tile allocation >= 0.3935 x optimum on %d instances "
                "(worst ratio %.4f, %.2f s)",
                trials, worst, secs));
}

void criterion2() {
    Stopwatch sw;
    Rng rng(0x5EED0002ull);
    const int trials = 100;
    double worst = 0.0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t channels = 1 + rng.below(6);
        const std::size_t tiles = 1 + rng.below(6);
        std::vector<double> scores(channels);
        for (auto& s : scores) s = rng.uniform();
        std::vector<double> incs(tiles);
        std::vector<std::deque<TileRef>> queues(tiles);
        for (std::size_t i = 0; i < tiles; ++i) {
            incs[i] = 0.1 + 2.0 * rng.uniform();
            TileRef ref;
            ref.group = static_cast<int>(i);
            ref.inc = incs[i];
            queues[i].push_back(ref);
        }
        const auto grants = tsa_schedule(scores, queues);
        double got = 0.0;
        for (const auto& gr : grants)
            got += scores[static_cast<std::size_t>(gr.channel)] * gr.tile.inc;
        const double best = oracle::best_assignment_reward(scores, incs);
        worst = std::max(worst, std::fabs(got - best));
        if (std::fabs(got - best) > 1e-9) ++violations;
    }
    const double secs = sw.seconds();
    report(2, violations == 0 && secs < 5.0,
           strf("slot scheduler matches exhaustive assignment on %d instances "
                "(max error %.2e, %.2f s)",
                trials, worst, secs));
}

void criterion3() {
    Rng rng(0x5EED0003ull);
    const int trials = 100;
    double worst = 0.0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<LinkChannels> links(3);
        int next_id = 0;
        for (auto& link : links) {
            const int count = 1 + static_cast<int>(rng.below(4));
            for (int c = 0; c < count; ++c)
                link.options.emplace_back(next_id++, 0.02 + 0.93 * rng.uniform());
        }
        const ChannelSchedule sched = schedule_channels(links);
        const double best = oracle::best_tunnel_success(links);
        worst = std::max(worst, std::fabs(sched.expected_success - best));
        if (std::fabs(sched.expected_success - best) > 1e-9) ++violations;
    }
    report(3, violations == 0,
           strf("tunnel scheduling matches exhaustive assignment on %d "
                "3-hop instances (max error %.2e)",
                trials, worst));
}

// Random path-selection instance: up to three sessions of up to three
// candidate paths each, plus cross-session conflict rows that claim at most
// one path apiece.  Columns then touch at most two rows, the relaxation has
// integral optima, and distinct coarse-grid gains keep the dual regions wide
// enough for the subgradient walk to settle.
struct SelectionInstance {
    std::vector<double> gains;
    std::vector<std::vector<double>> rows;
};

SelectionInstance random_selection_instance(Rng& rng) {
    SelectionInstance ins;
    std::vector<double> pool;
    for (int k = 2; k <= 19; ++k) pool.push_back(0.05 * k);
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng.below(i)]);
    const int ns = 1 + static_cast<int>(rng.below(3));
    std::vector<std::vector<std::size_t>> by_session(
        static_cast<std::size_t>(ns));
    for (auto& session : by_session) {
        const int paths = 1 + static_cast<int>(rng.below(3));
        for (int p = 0; p < paths; ++p) {
            session.push_back(ins.gains.size());
            ins.gains.push_back(pool[ins.gains.size()]);
        }
    }
    const std::size_t nv = ins.gains.size();
    for (const auto& session : by_session) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t j : session) row[j] = 1.0;
        ins.rows.push_back(std::move(row));
    }
    std::vector<bool> used(nv, false);
    const int conflicts = static_cast<int>(rng.below(4));
    for (int c = 0; c < conflicts && ns >= 2; ++c) {
        std::vector<std::size_t> picks;
        for (const auto& session : by_session) {
            std::vector<std::size_t> free;
            for (std::size_t j : session)
                if (!used[j]) free.push_back(j);
            if (!free.empty() && rng.uniform() < 0.7)
                picks.push_back(free[rng.below(free.size())]);
        }
        if (picks.size() < 2) continue;
        std::vector<double> row(nv, 0.0);
        for (std::size_t j : picks) {
            row[j] = 1.0;
            used[j] = true;
        }
        ins.rows.push_back(std::move(row));
    }
    return ins;
}

void criterion4() {
    Rng rng(0x5EED0004ull);
    const int trials = 100;
    int converged = 0, violations = 0;
    double worst_err = 0.0, worst_gap = 0.0;
    for (int t = 0; t < trials; ++t) {
        const SelectionInstance ins = random_selection_instance(rng);
        double max_gain = 0.0;
        for (double g : ins.gains) max_gain = std::max(max_gain, g);
        DualResult dr = dual_path_select(ins.gains, ins.rows);
        // Retry schedule for instances whose default walk limit-cycles; the
        // first converged run wins, otherwise the best rounded value stands.
        const double retries[][2] = {
            {0.05, 1.2 * max_gain}, {0.02, 0.5},  {0.1, 0.05},
            {0.25, 0.3},            {1.0, 1.2 * max_gain},
            {0.5, 0.5},             {1.0, 0.1},   {0.02, 0.02},
            {0.5, 1.2 * max_gain},  {0.1, 0.8},   {0.25, 1.2 * max_gain},
            {0.02, 1.2 * max_gain}};
        for (const auto& retry : retries) {
            if (dr.converged) break;
            DualParams params;
            params.step = retry[0];
            params.init = retry[1];
            DualResult next = dual_path_select(ins.gains, ins.rows, params);
            if (next.converged || next.primal_value > dr.primal_value)
                dr = std::move(next);
        }
        const auto bf = brute_force_crv(ins.gains, ins.rows);
        bool binary = true;
        for (double v : dr.y)
            if (std::fabs(v) > 1e-12 && std::fabs(v - 1.0) > 1e-12) binary = false;
        const double err = std::fabs(dr.primal_value - bf.objective);
        const double gap_allow = 1e-6 * (1.0 + std::fabs(dr.dual_value));
        if (!binary || !oracle::selection_feasible(dr.y, ins.rows) ||
            err > 1e-6 || (dr.converged && dr.duality_gap > gap_allow))
            ++violations;
        worst_err = std::max(worst_err, err);
        if (dr.converged) {
            ++converged;
            worst_gap = std::max(worst_gap, dr.duality_gap);
        }
    }
    report(4, violations == 0 && converged >= 90,
           strf("dual selection matches brute force on %d instances "
                "(%d converged, max objective error %.2e, max duality gap "
                "at convergence %.2e)",
                trials, converged, worst_err, worst_gap));
}

void criterion5() {
    Stopwatch sw;
    Rng rng(0x5EED0005ull);
    std::vector<MarkovChannel> chains;
    while (chains.size() < 20) {
        const double lam = rng.uniform_in(0.1, 0.9);
        const double mu = rng.uniform_in(0.1, 0.9);
        if (std::fabs(lam - mu) > 0.7) continue;
        chains.push_back(MarkovChannel{lam, mu});
    }
    ChannelBank bank({chains}, 0x5EED0005ull);
    const long slots = 1000000;
    std::vector<long> busy(chains.size(), 0);
    for (long t = 0; t < slots; ++t) {
        bank.step();
        for (std::size_t m = 0; m < chains.size(); ++m)
            if (bank.busy(0, m)) ++busy[m];
    }
    double worst = 0.0;
    for (std::size_t m = 0; m < chains.size(); ++m) {
        const double frac = static_cast<double>(busy[m]) / static_cast<double>(slots);
        worst = std::max(worst, std::fabs(frac - chains[m].utilization()));
    }
    report(5, worst < 0.01,
           strf("busy fraction within 0.01 of stationary utilization over 1e6 "
                "slots on 20 channels (max deviation %.4f, %.1f s)",
                worst, sw.seconds()));
}

void criterion6(const std::string& dir) {
    Stopwatch sw;
    const Scenario sc = load_scenario(dir + "/paper_iv.json");
    InfraConfig cfg;
    cfg.chains = build_chains(sc);
    cfg.profile = sc.profile;
    cfg.gamma = sc.gamma;
    cfg.gop_slots = sc.gop_slots;
    cfg.window = sc.window;
    cfg.scheme = "greedy";
    auto groups = sc.groups;
    for (auto& g : groups) {
        g.rate_cap = 1e9;
        g.source.r_enh_max = 1e9;
    }
    InfraSim sim(cfg, groups, sc.seeds.front());
    const long target_slots = 100000;
    std::vector<long> collisions(cfg.chains.size(), 0);
    long slots = 0;
    while (slots < target_slots) {
        const GopResult r = sim.run_gop();
        slots += r.slots;
        for (std::size_t m = 0; m < collisions.size(); ++m)
            collisions[m] += r.collisions[m];
    }
    double worst = 0.0;
    for (long c : collisions)
        worst = std::max(worst,
                         static_cast<double>(c) / static_cast<double>(slots));
    const double secs = sw.seconds();
    report(6, worst <= sc.gamma + 0.02 && secs < 30.0,
           strf("saturated per-channel collision rate %.4f <= %.4f over %ld "
                "slots (%.1f s)",
                worst, sc.gamma + 0.02, slots, secs));
}

struct TrendPoint {
    double x = 0.0;
    double mean = 0.0;
    double hw = 0.0;
};

std::vector<TrendPoint> extract_trend(const std::vector<MetricRow>& rows,
                                      const std::vector<std::string>& values,
                                      const std::string& scheme) {
    std::vector<TrendPoint> points;
    for (const auto& value : values) {
        TrendPoint p;
        p.x = std::stod(value);
        double mean_sum = 0.0, hw_sum = 0.0;
        int mean_n = 0, hw_n = 0;
        for (const auto& r : rows) {
            if (r.sweep_value != value || r.scheme != scheme) continue;
            if (r.entity == "all" || !r.psnr_db) continue;
            if (r.stat == "mean") {
                mean_sum += *r.psnr_db;
                ++mean_n;
            } else if (r.stat == "ci95") {
                hw_sum += *r.psnr_db;
                ++hw_n;
            }
        }
        if (mean_n > 0) p.mean = mean_sum / mean_n;
        if (hw_n > 0) p.hw = hw_sum / hw_n;
        points.push_back(p);
    }
    return points;
}

// dir = +1 demands a nondecreasing trend, -1 nonincreasing; dips up to one
// CI half-width are tolerated.
bool monotone(const std::vector<TrendPoint>& pts, int dir) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double slack = std::max(pts[i].hw, pts[i + 1].hw);
        if (dir * (pts[i + 1].mean - pts[i].mean) < -slack) return false;
    }
    return true;
}

void criterion7(const std::string& dir) {
    Stopwatch sw;
    const Scenario trend_iv = load_scenario(dir + "/trend_iv.json");
    const auto gamma_pts = extract_trend(run_experiment(trend_iv),
                                         trend_iv.sweep->values, "greedy");
    const bool gamma_ok = monotone(gamma_pts, +1);

    Scenario by_channels = trend_iv;
    by_channels.sweep = SweepSpec{"channels", {"3", "6", "9", "12", "15"}};
    const auto channel_pts = extract_trend(run_experiment(by_channels),
                                           by_channels.sweep->values, "greedy");
    const bool channels_ok = monotone(channel_pts, +1);

    const Scenario trend_v = load_scenario(dir + "/trend_v.json");
    const auto v_rows = run_experiment(trend_v);
    bool eta_ok = true;
    for (const auto& scheme : trend_v.schemes)
        eta_ok = eta_ok &&
                 monotone(extract_trend(v_rows, trend_v.sweep->values, scheme), -1);

    const double secs = sw.seconds();
    report(7,
           gamma_ok && channels_ok && eta_ok && secs < 300.0,
           strf("PSNR trends hold: gamma %.2f->%.2f dB up, channels "
                "%.2f->%.2f dB up, eta %s down per scheme (%.0f s)",
                gamma_pts.front().mean, gamma_pts.back().mean,
                channel_pts.front().mean, channel_pts.back().mean,
                eta_ok ? "all" : "NOT all", secs));
}

void criterion8(const std::string& dir) {
    Scenario iv = load_scenario(dir + "/paper_iv.json");
    iv.schemes = {"greedy", "equal"};
    const auto rows = run_experiment(iv);
    std::map<std::string, double> util;
    for (const auto& r : rows)
        if (r.stat == "replica" && r.entity == "all" && r.utility)
            util[r.scheme + "|" + r.seed] = *r.utility;
    double greedy_mean = 0.0, equal_mean = 0.0;
    for (std::uint64_t seed : iv.seeds) {
        greedy_mean += util["greedy|" + std::to_string(seed)];
        equal_mean += util["equal|" + std::to_string(seed)];
    }
    greedy_mean /= static_cast<double>(iv.seeds.size());
    equal_mean /= static_cast<double>(iv.seeds.size());
    const bool infra_ok = greedy_mean >= equal_mean - 1e-9;

    const Scenario cv = load_scenario(dir + "/compare_v.json");
    const auto mrows = run_experiment(cv);
    std::map<std::string, std::pair<double, int>> acc;
    for (const auto& r : mrows)
        if (r.stat == "replica" && r.entity == "all" && r.utility) {
            acc[r.scheme].first += *r.utility;
            acc[r.scheme].second += 1;
        }
    auto mean_of = [&](const std::string& s) {
        return acc[s].second ? acc[s].first / acc[s].second : 0.0;
    };
    const double dual_m = mean_of("dual");
    const double sf_m = mean_of("sf");
    const double heur_m = mean_of("heuristic");
    const bool mh_ok = std::fabs(dual_m - sf_m) <= 0.05 * (1.0 + std::fabs(sf_m)) &&
                       sf_m >= heur_m - 1e-9 && dual_m >= heur_m - 1e-9;

    report(8, infra_ok && mh_ok,
           strf("scheme ordering holds: greedy %.2f >= equal %.2f; dual %.3f "
                "~ sf %.3f >= heuristic %.3f",
                greedy_mean, equal_mean, dual_m, sf_m, heur_m));
}

void criterion9() {
    // Three sessions of candidate paths plus one cross-session conflict row:
    // four constraints total, and the multiplier walk approaches the dual
    // optimum through several distinct points before settling.
    const std::vector<double> gains{0.75, 0.60, 0.20, 0.30, 0.35, 0.40, 0.25};
    const std::vector<std::vector<double>> rows{
        {1, 1, 0, 0, 0, 0, 0},
        {0, 0, 1, 1, 0, 0, 0},
        {0, 0, 0, 0, 1, 1, 1},
        {0, 1, 1, 0, 1, 0, 0},
    };
    DualParams params;
    const DualResult dr = dual_path_select(gains, rows, params, true);

    // Reference multipliers from the explicit dual linear program:
    // minimize sum(e) + sum(u) subject to u_j + sum_r W_rj e_r >= F_j.
    LinearProgram lp;
    const std::size_t nr = rows.size(), nv = gains.size();
    for (std::size_t r = 0; r < nr; ++r) lp.add_variable(0.0, 50.0, -1.0);
    for (std::size_t j = 0; j < nv; ++j) lp.add_variable(0.0, 50.0, -1.0);
    for (std::size_t j = 0; j < nv; ++j) {
        std::vector<double> row(nr + nv, 0.0);
        for (std::size_t r = 0; r < nr; ++r) row[r] = -rows[r][j];
        row[nr + j] = -1.0;
        lp.add_row(row, '<', -gains[j]);
    }
    const LpResult ref = solve_lp(lp);
    std::vector<double> estar(ref.x.begin(), ref.x.begin() + static_cast<long>(nr));

    auto dist = [&](const std::vector<double>& e) {
        double s = 0.0;
        for (std::size_t r = 0; r < nr; ++r)
            s += (e[r] - estar[r]) * (e[r] - estar[r]);
        return std::sqrt(s);
    };
    bool contracting = true;
    double prev = dist(std::vector<double>(nr, params.init));
    for (const auto& e : dr.trace) {
        const double d = dist(e);
        if (d > prev + 1e-12) {
            contracting = false;
            break;
        }
        prev = d;
    }
    const bool ok = ref.status == LpResult::Status::optimal && dr.converged &&
                    dr.iterations <= 10000 && contracting;
    report(9, ok,
           strf("multipliers converge in %d iterations and contract toward "
                "the dual optimum (final distance %.2e)",
                dr.iterations, dist(dr.multipliers)));
}

void criterion10() {
    Rng rng(0x5EED0010ull);
    const double factor = 1.0 - std::exp(-0.5);
    const int part_trials = 50;
    int violations_a = 0;
    double worst_ratio = 1.0;
    for (int t = 0; t < part_trials; ++t) {
        int budget = 0;
        const auto groups = random_part_instance(rng, budget);
        const double bound = relaxation_bound(groups, budget);
        const double sf = total_utility(groups, sequential_fixing(groups, budget));
        const double opt = oracle::best_allocation_utility(groups, budget);
        if (bound + 1e-6 < sf || sf + 1e-9 < factor * opt) ++violations_a;
        if (opt > 1e-12) worst_ratio = std::min(worst_ratio, sf / opt);
    }

    Rng rng2(0x5EED1010ull);
    DualParams params;
    params.tolerance = 1e-9;
    int done = 0, attempts = 0, violations_b = 0;
    while (done < 30 && attempts < 20000) {
        ++attempts;
        const auto ins = random_mesh_instance(rng2, 2, 16, 14);
        if (!ins) continue;
        const auto bf = brute_force_crv(ins->gains, ins->rows);
        const DualResult dr = dual_path_select(ins->gains, ins->rows, params, false);
        const double heur = heuristic_value(*ins);
        if (bf.objective + 1e-9 < dr.primal_value ||
            dr.primal_value + 1e-6 < heur)
            ++violations_b;
        ++done;
    }
    report(10, violations_a == 0 && violations_b == 0 && done == 30,
           strf("relaxation bound >= sequential fixing >= 0.3935 x optimum on "
                "%d instances (worst SF ratio %.4f); brute >= dual >= "
                "heuristic on %d mesh instances",
                part_trials, worst_ratio, done));
}

void criterion11(const std::string& dir) {
    const Scenario sc = load_scenario(dir + "/paper_v.json");
    const std::string a = format_csv(run_experiment(sc));
    const std::string b = format_csv(run_experiment(sc));
    report(11, !a.empty() && a == b,
           strf("repeated run produces byte-identical CSV (%zu bytes)",
                a.size()));
}

void guarded(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& ex) {
        report(id, false, strf("exception: %s", ex.what()));
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <scenario-dir>\n", argv[0]);
        return 2;
    }
    const std::string dir = argv[1];
    guarded(1, [] { criterion1(); });
    guarded(2, [] { criterion2(); });
    guarded(3, [] { criterion3(); });
    guarded(4, [] { criterion4(); });
    guarded(5, [] { criterion5(); });
    guarded(6, [&] { criterion6(dir); });
    guarded(7, [&] { criterion7(dir); });
    guarded(8, [&] { criterion8(dir); });
    guarded(9, [] { criterion9(); });
    guarded(10, [] { criterion10(); });
    guarded(11, [&] { criterion11(dir); });
    if (g_failures > 0) std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}

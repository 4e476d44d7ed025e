#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "scenario.hpp"
#include "stats.hpp"

namespace crsim {

struct MetricRow {
    std::string sweep_key;
    std::string sweep_value;
    std::string scheme;
    std::string seed;    // replica seed, or "-" on aggregate rows
    std::string stat;    // "replica", "mean", or "ci95"
    std::string entity;  // "group:N", "session:N", or "all"
    std::optional<double> delivered_kb;
    std::optional<double> psnr_db;
    std::optional<double> utility;
    std::optional<double> collision_rate;
    std::optional<double> iterations;
    std::optional<double> duality_gap;
    std::optional<std::uint64_t> traj_hash;
};

namespace detail {

inline std::string format_num(double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

inline std::string format_cell(const std::optional<double>& v) {
    return v ? format_num(*v) : "NA";
}

inline std::optional<double> mean_present(const std::vector<std::optional<double>>& xs) {
    std::vector<double> vals;
    for (const auto& x : xs)
        if (x && std::isfinite(*x)) vals.push_back(*x);
    if (vals.empty()) return std::nullopt;
    return mean_of(vals);
}

inline std::optional<double> ci95_present(const std::vector<std::optional<double>>& xs) {
    std::vector<double> vals;
    for (const auto& x : xs)
        if (x && std::isfinite(*x)) vals.push_back(*x);
    if (vals.size() < 2) return std::nullopt;
    return ci95_half_width(vals);
}

inline int worker_count() {
    if (const char* env = std::getenv("CRSIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? static_cast<int>(hw) : 1;
}

inline std::optional<double> opt_if(bool cond, double v) {
    if (!cond || !std::isfinite(v)) return std::nullopt;
    return v;
}

// One simulator run: every replica row for (sweep point, scheme, seed).
inline std::vector<MetricRow> run_replica(const Scenario& sc, const std::string& scheme,
                                          std::uint64_t seed) {
    std::vector<MetricRow> rows;
    MetricRow base;
    base.sweep_key = sc.sweep ? sc.sweep->key : "-";
    base.sweep_value = "-";
    base.scheme = scheme;
    base.seed = std::to_string(seed);
    base.stat = "replica";

    if (sc.mode == "infrastructure") {
        InfraConfig cfg;
        cfg.chains = build_chains(sc);
        cfg.profile = sc.profile;
        cfg.gamma = sc.gamma;
        cfg.gop_slots = sc.gop_slots;
        cfg.window = sc.window;
        cfg.scheme = scheme;
        InfraSim sim(cfg, sc.groups, seed);

        const std::size_t G = sc.groups.size();
        std::vector<std::vector<double>> delivered(G), utility(G);
        std::vector<std::vector<double>> psnr(G);
        std::vector<long> collisions(cfg.chains.size(), 0);
        long slots = 0;
        std::vector<double> total_delivered, total_utility;
        for (int gop = 0; gop < sc.gops; ++gop) {
            const GopResult res = sim.run_gop();
            double dsum = 0.0, usum = 0.0;
            for (std::size_t g = 0; g < G; ++g) {
                const auto& st = res.groups[g];
                const double dk =
                    st.delivered_enh_kb +
                    (st.base_delivered ? sc.groups[g].source.r_base : 0.0);
                delivered[g].push_back(dk);
                utility[g].push_back(st.utility);
                if (st.psnr) psnr[g].push_back(*st.psnr);
                dsum += dk;
                usum += st.utility;
            }
            for (std::size_t m = 0; m < collisions.size(); ++m)
                collisions[m] += res.collisions[m];
            slots += res.slots;
            total_delivered.push_back(dsum);
            total_utility.push_back(usum);
        }
        for (std::size_t g = 0; g < G; ++g) {
            MetricRow r = base;
            r.entity = "group:" + std::to_string(g + 1);
            r.delivered_kb = mean_of(delivered[g]);
            r.utility = mean_of(utility[g]);
            if (!psnr[g].empty()) r.psnr_db = mean_of(psnr[g]);
            rows.push_back(std::move(r));
        }
        MetricRow all = base;
        all.entity = "all";
        all.delivered_kb = mean_of(total_delivered);
        all.utility = mean_of(total_utility);
        double worst = 0.0;
        for (long c : collisions)
            worst = std::max(worst, static_cast<double>(c) /
                                        static_cast<double>(slots));
        all.collision_rate = worst;
        all.traj_hash = sim.trajectory_hash();
        rows.push_back(std::move(all));
    } else {
        MeshConfig cfg;
        cfg.chains.assign(static_cast<std::size_t>(sc.networks), build_chains(sc));
        cfg.observers = sc.observers;
        cfg.profile = sc.profile;
        cfg.gamma = sc.gamma;
        cfg.slot_seconds = sc.slot_seconds;
        cfg.gop_slots = sc.gop_slots;
        cfg.delay_budget = sc.delay_budget;
        cfg.max_paths = sc.max_paths;
        cfg.scheme = scheme;
        cfg.dual = sc.dual;
        MeshSim sim(cfg, sc.topo, sc.sessions, seed);

        const std::size_t L = sc.sessions.size();
        std::vector<std::vector<double>> delivered(L), utility(L), psnr(L),
            iters(L), gaps(L);
        std::vector<std::vector<long>> collisions(
            static_cast<std::size_t>(sc.networks),
            std::vector<long>(static_cast<std::size_t>(sc.channel_count), 0));
        long slots = 0;
        std::vector<double> total_delivered, total_utility;
        for (int gop = 0; gop < sc.gops; ++gop) {
            const MeshGopResult res = sim.run_gop();
            double dsum = 0.0, usum = 0.0;
            for (std::size_t l = 0; l < L; ++l) {
                const auto& st = res.sessions[l];
                delivered[l].push_back(st.delivered_kb);
                utility[l].push_back(st.utility);
                if (st.rate_ok) psnr[l].push_back(st.psnr);
                if (std::isfinite(st.mean_iterations))
                    iters[l].push_back(st.mean_iterations);
                if (std::isfinite(st.mean_gap)) gaps[l].push_back(st.mean_gap);
                dsum += st.delivered_kb;
                usum += st.utility;
            }
            for (std::size_t k = 0; k < collisions.size(); ++k)
                for (std::size_t m = 0; m < collisions[k].size(); ++m)
                    collisions[k][m] += res.collisions[k][m];
            slots += res.slots;
            total_delivered.push_back(dsum);
            total_utility.push_back(usum);
        }
        for (std::size_t l = 0; l < L; ++l) {
            MetricRow r = base;
            r.entity = "session:" + std::to_string(l + 1);
            r.delivered_kb = mean_of(delivered[l]);
            r.utility = mean_of(utility[l]);
            if (!psnr[l].empty()) r.psnr_db = mean_of(psnr[l]);
            if (!iters[l].empty()) r.iterations = mean_of(iters[l]);
            if (!gaps[l].empty()) r.duality_gap = mean_of(gaps[l]);
            rows.push_back(std::move(r));
        }
        MetricRow all = base;
        all.entity = "all";
        all.delivered_kb = mean_of(total_delivered);
        all.utility = mean_of(total_utility);
        double worst = 0.0;
        for (const auto& per_net : collisions)
            for (long c : per_net)
                worst = std::max(worst, static_cast<double>(c) /
                                            static_cast<double>(slots));
        all.collision_rate = worst;
        all.traj_hash = sim.trajectory_hash();
        rows.push_back(std::move(all));
    }
    return rows;
}

} // namespace detail

// Runs the whole sweep x scheme x seed grid.  Replica rows come out in
// deterministic order with mean and ci95 aggregate rows after each
// (sweep value, scheme) block, independent of the worker count.
inline std::vector<MetricRow> run_experiment(const Scenario& base) {
    std::vector<std::pair<std::string, Scenario>> points;
    if (base.sweep) {
        for (const auto& v : base.sweep->values) {
            Scenario sc = base;
            apply_sweep_value(sc, base.sweep->key, v);
            points.emplace_back(v, std::move(sc));
        }
    } else {
        points.emplace_back("-", base);
    }

    struct Job {
        std::size_t point, scheme, seed;
    };
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < points.size(); ++p)
        for (std::size_t s = 0; s < base.schemes.size(); ++s)
            for (std::size_t r = 0; r < base.seeds.size(); ++r)
                jobs.push_back({p, s, r});

    std::vector<std::vector<MetricRow>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            const auto& [value, sc] = points[job.point];
            auto rows = detail::run_replica(sc, base.schemes[job.scheme],
                                            base.seeds[job.seed]);
            for (auto& r : rows) r.sweep_value = value;
            results[i] = std::move(rows);
        }
    };
    const int workers =
        std::min<int>(detail::worker_count(), static_cast<int>(jobs.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<MetricRow> out;
    std::size_t job_index = 0;
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t s = 0; s < base.schemes.size(); ++s) {
            const std::size_t first = job_index;
            for (std::size_t r = 0; r < base.seeds.size(); ++r, ++job_index)
                for (const auto& row : results[job_index]) out.push_back(row);

            // Aggregate over seeds, entity by entity.
            const auto& shape = results[first];
            for (std::size_t e = 0; e < shape.size(); ++e) {
                std::vector<std::optional<double>> d, q, u, c, it, g;
                for (std::size_t r = 0; r < base.seeds.size(); ++r) {
                    const auto& row = results[first + r][e];
                    d.push_back(row.delivered_kb);
                    q.push_back(row.psnr_db);
                    u.push_back(row.utility);
                    c.push_back(row.collision_rate);
                    it.push_back(row.iterations);
                    g.push_back(row.duality_gap);
                }
                MetricRow mean_row;
                mean_row.sweep_key = shape[e].sweep_key;
                mean_row.sweep_value = shape[e].sweep_value;
                mean_row.scheme = shape[e].scheme;
                mean_row.seed = "-";
                mean_row.entity = shape[e].entity;
                MetricRow ci_row = mean_row;
                mean_row.stat = "mean";
                mean_row.delivered_kb = detail::mean_present(d);
                mean_row.psnr_db = detail::mean_present(q);
                mean_row.utility = detail::mean_present(u);
                mean_row.collision_rate = detail::mean_present(c);
                mean_row.iterations = detail::mean_present(it);
                mean_row.duality_gap = detail::mean_present(g);
                ci_row.stat = "ci95";
                ci_row.delivered_kb = detail::ci95_present(d);
                ci_row.psnr_db = detail::ci95_present(q);
                ci_row.utility = detail::ci95_present(u);
                ci_row.collision_rate = detail::ci95_present(c);
                ci_row.iterations = detail::ci95_present(it);
                ci_row.duality_gap = detail::ci95_present(g);
                out.push_back(std::move(mean_row));
                out.push_back(std::move(ci_row));
            }
        }
    }
    return out;
}

inline std::string format_csv(const std::vector<MetricRow>& rows) {
    std::string out =
        "sweep_key,sweep_value,scheme,seed,stat,entity,delivered_kb,psnr_db,"
        "utility,collision_rate,iterations,duality_gap,traj_hash\n";
    for (const auto& r : rows) {
        out += r.sweep_key + ',' + r.sweep_value + ',' + r.scheme + ',' +
               r.seed + ',' + r.stat + ',' + r.entity + ',';
        out += detail::format_cell(r.delivered_kb) + ',';
        out += detail::format_cell(r.psnr_db) + ',';
        out += detail::format_cell(r.utility) + ',';
        out += detail::format_cell(r.collision_rate) + ',';
        out += detail::format_cell(r.iterations) + ',';
        out += detail::format_cell(r.duality_gap) + ',';
        if (r.traj_hash) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%016llx",
                          static_cast<unsigned long long>(*r.traj_hash));
            out += buf;
        } else {
            out += "NA";
        }
        out += '\n';
    }
    return out;
}

} // namespace crsim

#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "multihop.hpp"

namespace crsim {

struct MeshConfig {
    std::vector<std::vector<MarkovChannel>> chains;  // per network, per channel
    std::vector<std::vector<int>> observers;         // votes per (network, channel)
    SensorProfile profile;
    double gamma = 0.2;
    double slot_seconds = 0.02;
    int gop_slots = 10;
    double delay_budget = 3.0;
    int max_paths = 8;
    std::string scheme = "dual";  // dual | sf | heuristic | brute
    DualParams dual;
};

struct SessionGopStats {
    double delivered_kb = 0.0;
    double rate_kbps = 0.0;
    long packets = 0;
    double psnr = 0.0;
    bool rate_ok = false;  // delivered rate reached the base-layer rate
    double utility = 0.0;
    double mean_iterations = 0.0;  // dual scheme only; NaN otherwise
    double mean_gap = 0.0;
};

struct MeshGopResult {
    std::vector<SessionGopStats> sessions;
    std::vector<std::vector<long>> collisions;  // per (network, channel)
    long slots = 0;
};

// Drives the mesh streaming loop: cooperative sensing per network, threshold
// access, per-slot path selection under the configured scheme, and packet
// transmission over the scheduled tunnels against true channel states.
class MeshSim {
public:
    MeshSim(MeshConfig cfg, Topology topo, std::vector<Session> sessions,
            std::uint64_t seed)
        : cfg_(std::move(cfg)), topo_(std::move(topo)),
          sessions_(std::move(sessions)) {
        topo_.validate();
        cfg_.profile.validate();
        if (cfg_.gamma <= 0.0 || cfg_.gamma >= 1.0)
            throw std::invalid_argument("gamma must lie in (0, 1)");
        if (cfg_.scheme != "dual" && cfg_.scheme != "sf" &&
            cfg_.scheme != "heuristic" && cfg_.scheme != "brute")
            throw std::invalid_argument("unknown selection scheme: " + cfg_.scheme);
        for (const auto& s : sessions_) {
            s.video.validate();
            if (s.source == s.dest)
                throw std::invalid_argument("session endpoints must differ");
            topo_.network_of(s.source);
            topo_.network_of(s.dest);
        }
        if (cfg_.observers.size() != cfg_.chains.size())
            throw std::invalid_argument("observer table shape mismatch");
        for (std::size_t k = 0; k < cfg_.chains.size(); ++k) {
            if (cfg_.observers[k].size() != cfg_.chains[k].size())
                throw std::invalid_argument("observer table shape mismatch");
            for (int u : cfg_.observers[k])
                if (u < 1)
                    throw std::invalid_argument("each channel needs >= 1 observer");
        }

        bank_ = ChannelBank(cfg_.chains, seed);
        beliefs_.resize(cfg_.chains.size());
        sense_.resize(cfg_.chains.size());
        for (std::size_t k = 0; k < cfg_.chains.size(); ++k) {
            beliefs_[k].resize(cfg_.chains[k].size());
            for (std::size_t m = 0; m < cfg_.chains[k].size(); ++m) {
                beliefs_[k][m] = 1.0 - cfg_.chains[k][m].utilization();
                sense_[k].push_back(substream(
                    seed, static_cast<std::uint64_t>(StreamTag::sensing), k, m));
            }
        }
        loss_ = substream(seed, static_cast<std::uint64_t>(StreamTag::loss), 0, 0);

        for (const auto& s : sessions_)
            paths_.push_back(enumerate_paths(topo_, s.source, s.dest,
                                             cfg_.delay_budget, cfg_.max_paths));
        build_constraints();

        q_prev_.resize(sessions_.size());
        for (std::size_t l = 0; l < sessions_.size(); ++l)
            q_prev_[l] = sessions_[l].video.q_base;
    }

    const std::vector<std::vector<Path>>& paths() const { return paths_; }
    const std::vector<std::vector<double>>& constraint_rows() const {
        return rows_;
    }
    std::uint64_t trajectory_hash() const { return traj_hash_; }

    MeshGopResult run_gop() {
        const std::size_t K = cfg_.chains.size();
        MeshGopResult result;
        result.slots = cfg_.gop_slots;
        result.collisions.resize(K);
        for (std::size_t k = 0; k < K; ++k)
            result.collisions[k].assign(cfg_.chains[k].size(), 0);

        std::vector<double> delivered(sessions_.size(), 0.0);
        std::vector<long> packets(sessions_.size(), 0);
        std::vector<double> iter_sum(sessions_.size(), 0.0);
        std::vector<double> gap_sum(sessions_.size(), 0.0);
        long dual_slots = 0;

        for (std::size_t l = 0; l < sessions_.size(); ++l)
            q_prev_[l] = sessions_[l].video.q_base;

        for (int tt = 0; tt < cfg_.gop_slots; ++tt) {
            bank_.step();
            traj_hash_ = traj_hash_ * 0x100000001b3ull ^ bank_.state_digest();

            // Sensing, belief update, and per-channel access thresholds.
            std::vector<std::vector<double>> kappa(K);
            for (std::size_t k = 0; k < K; ++k) {
                kappa[k].resize(cfg_.chains[k].size());
                for (std::size_t m = 0; m < cfg_.chains[k].size(); ++m) {
                    const auto& ch = cfg_.chains[k][m];
                    const double prior = ch.lambda * beliefs_[k][m] +
                                         ch.mu * (1.0 - beliefs_[k][m]);
                    kappa[k][m] = solve_threshold(cfg_.gamma, cfg_.observers[k][m],
                                                  cfg_.profile, prior);
                    const auto report =
                        draw_report(bank_.busy(k, m), cfg_.observers[k][m],
                                    cfg_.profile, sense_[k][m]);
                    beliefs_[k][m] =
                        update_belief(beliefs_[k][m], ch, report, cfg_.profile);
                }
            }

            // Channels usable per link: cleared on both endpoint networks.
            std::vector<std::vector<int>> link_avail(topo_.links.size());
            for (std::size_t i = 0; i < topo_.links.size(); ++i) {
                const auto& link = topo_.links[i];
                const int ka = topo_.network_of(link.a);
                const int kb = topo_.network_of(link.b);
                link_avail[i] = available_channels(beliefs_, kappa, ka, kb);
            }

            // Gains and tunnel schedules per enumerated path.
            std::vector<double> gains(num_vars_, 0.0);
            std::vector<ChannelSchedule> schedules(num_vars_);
            for (std::size_t l = 0; l < sessions_.size(); ++l)
                for (std::size_t h = 0; h < paths_[l].size(); ++h) {
                    const std::size_t j = var_base_[l] + h;
                    schedules[j] = schedule_for(paths_[l][h], link_avail);
                    gains[j] = path_gain(sessions_[l].video,
                                         sessions_[l].packet_kb, cfg_.gop_slots,
                                         cfg_.slot_seconds, q_prev_[l],
                                         schedules[j].expected_success);
                }

            // Path selection under the configured scheme.
            std::vector<double> y(num_vars_, 0.0);
            std::vector<std::pair<Path, ChannelSchedule>> walks;  // heuristic
            if (cfg_.scheme == "dual") {
                const DualResult dr =
                    dual_path_select(gains, rows_, cfg_.dual, false);
                y = dr.y;
                for (std::size_t l = 0; l < sessions_.size(); ++l) {
                    iter_sum[l] += dr.iterations;
                    gap_sum[l] += dr.duality_gap;
                }
                ++dual_slots;
            } else if (cfg_.scheme == "sf") {
                y = centralized_sf(gains, rows_).y;
            } else if (cfg_.scheme == "brute") {
                y = brute_force_crv(gains, rows_).y;
            } else {
                std::set<int> used_nodes;
                for (std::size_t l = 0; l < sessions_.size(); ++l) {
                    if (used_nodes.count(sessions_[l].source) ||
                        used_nodes.count(sessions_[l].dest)) {
                        walks.emplace_back(Path{}, ChannelSchedule{});
                        continue;
                    }
                    Topology pruned = prune(used_nodes);
                    const Path p =
                        walk_in(pruned, sessions_[l], link_avail);
                    ChannelSchedule cs;
                    if (!p.empty()) cs = schedule_for(p, link_avail);
                    for (int node : p) used_nodes.insert(node);
                    walks.emplace_back(p, cs);
                }
            }

            // Transmission: every selected path fires its tunnels against the
            // true channel states; one erasure draw per tunnel.
            std::vector<std::set<std::pair<int, int>>> hit(K);
            for (std::size_t l = 0; l < sessions_.size(); ++l) {
                const Path* path = nullptr;
                const ChannelSchedule* sched = nullptr;
                if (cfg_.scheme == "heuristic") {
                    if (!walks[l].first.empty()) {
                        path = &walks[l].first;
                        sched = &walks[l].second;
                    }
                } else {
                    for (std::size_t h = 0; h < paths_[l].size(); ++h)
                        if (y[var_base_[l] + h] > 0.5) {
                            path = &paths_[l][h];
                            sched = &schedules[var_base_[l] + h];
                            break;
                        }
                }
                if (path == nullptr) continue;

                for (const auto& tunnel : sched->tunnels) {
                    bool blocked = false;
                    for (std::size_t hop = 0; hop < tunnel.hops.size(); ++hop) {
                        const int m = tunnel.hops[hop].first;
                        const int na = topo_.network_of((*path)[hop]);
                        const int nb = topo_.network_of((*path)[hop + 1]);
                        for (int k : {na, nb})
                            if (bank_.busy(static_cast<std::size_t>(k),
                                           static_cast<std::size_t>(m))) {
                                blocked = true;
                                hit[static_cast<std::size_t>(k)].insert(
                                    {static_cast<int>(tt), m});
                            }
                    }
                    const double u = loss_.uniform();
                    if (!blocked && u >= tunnel.loss) {
                        delivered[l] += sessions_[l].packet_kb;
                        ++packets[l];
                    }
                }
                const double rate =
                    delivered[l] / (cfg_.gop_slots * cfg_.slot_seconds);
                q_prev_[l] = sessions_[l].video.psnr(
                    std::max(rate, sessions_[l].video.r_base));
            }
            for (std::size_t k = 0; k < K; ++k)
                for (const auto& [slot, m] : hit[k])
                    ++result.collisions[k][static_cast<std::size_t>(m)];
        }

        result.sessions.resize(sessions_.size());
        for (std::size_t l = 0; l < sessions_.size(); ++l) {
            auto& out = result.sessions[l];
            const auto& video = sessions_[l].video;
            out.delivered_kb = delivered[l];
            out.packets = packets[l];
            out.rate_kbps = delivered[l] / (cfg_.gop_slots * cfg_.slot_seconds);
            out.rate_ok = out.rate_kbps >= video.r_base;
            if (out.rate_ok) {
                out.psnr = video.psnr(out.rate_kbps);
                out.utility = std::log(out.psnr);
            }
            if (cfg_.scheme == "dual" && dual_slots > 0) {
                out.mean_iterations = iter_sum[l] / static_cast<double>(dual_slots);
                out.mean_gap = gap_sum[l] / static_cast<double>(dual_slots);
            } else {
                out.mean_iterations = std::nan("");
                out.mean_gap = std::nan("");
            }
        }
        return result;
    }

private:
    void build_constraints() {
        var_base_.resize(sessions_.size());
        num_vars_ = 0;
        for (std::size_t l = 0; l < sessions_.size(); ++l) {
            var_base_[l] = num_vars_;
            num_vars_ += paths_[l].size();
        }

        std::set<std::vector<double>> seen;
        auto push_row = [&](const std::vector<double>& row) {
            int support = 0;
            for (double v : row) support += v > 0.5 ? 1 : 0;
            if (support < 2) return;  // redundant with the [0, 1] clamp
            if (seen.insert(row).second) rows_.push_back(row);
        };

        for (std::size_t l = 0; l < sessions_.size(); ++l) {
            std::vector<double> row(num_vars_, 0.0);
            for (std::size_t h = 0; h < paths_[l].size(); ++h)
                row[var_base_[l] + h] = 1.0;
            push_row(row);
        }
        std::set<int> all_nodes;
        for (const auto& per_session : paths_)
            for (const auto& p : per_session)
                for (int node : p) all_nodes.insert(node);
        for (int node : all_nodes) {
            std::vector<double> row(num_vars_, 0.0);
            for (std::size_t l = 0; l < sessions_.size(); ++l)
                for (std::size_t h = 0; h < paths_[l].size(); ++h)
                    for (int n : paths_[l][h])
                        if (n == node) row[var_base_[l] + h] = 1.0;
            push_row(row);
        }
    }

    ChannelSchedule schedule_for(
        const Path& path,
        const std::vector<std::vector<int>>& link_avail) const {
        std::vector<LinkChannels> lc;
        for (std::size_t hop = 0; hop + 1 < path.size(); ++hop) {
            const int li = topo_.find_link(path[hop], path[hop + 1]);
            LinkChannels entry;
            for (int m : link_avail[static_cast<std::size_t>(li)])
                entry.options.emplace_back(
                    m, topo_.links[static_cast<std::size_t>(li)]
                           .loss[static_cast<std::size_t>(m)]);
            lc.push_back(std::move(entry));
        }
        return schedule_channels(lc);
    }

    Topology prune(const std::set<int>& banned) const {
        Topology t;
        t.num_channels = topo_.num_channels;
        for (const auto& n : topo_.nodes)
            if (!banned.count(n.id)) t.nodes.push_back(n);
        for (const auto& l : topo_.links)
            if (!banned.count(l.a) && !banned.count(l.b)) t.links.push_back(l);
        return t;
    }

    Path walk_in(const Topology& pruned, const Session& s,
                 const std::vector<std::vector<int>>& link_avail) const {
        // The pruned topology renumbers links; rebuild availability per its
        // link order from the full table.
        std::vector<std::vector<int>> avail;
        for (const auto& l : pruned.links) {
            const int orig = topo_.find_link(l.a, l.b);
            avail.push_back(link_avail[static_cast<std::size_t>(orig)]);
        }
        return greedy_walk(pruned, s.source, s.dest, cfg_.delay_budget, avail);
    }

    MeshConfig cfg_;
    Topology topo_;
    std::vector<Session> sessions_;
    std::vector<std::vector<Path>> paths_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::size_t> var_base_;
    std::size_t num_vars_ = 0;
    ChannelBank bank_;
    std::vector<std::vector<double>> beliefs_;
    std::vector<std::vector<Rng>> sense_;
    Rng loss_;
    std::vector<double> q_prev_;
    std::uint64_t traj_hash_ = 0xcbf29ce484222325ull;
};

} // namespace crsim

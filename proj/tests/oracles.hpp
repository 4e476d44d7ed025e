#pragma once

// Brute-force reference implementations used to validate the fast algorithms.
// Everything here favors obviousness over speed.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include <crsim/multicast.hpp>
#include <crsim/multihop.hpp>

namespace oracle {

// Exhaustive search over integer tile allocations subject to the tile budget
// and the per-group rate caps.  Returns the best utility.
inline double best_allocation_utility(const std::vector<crsim::MulticastGroup>& groups,
                                      int budget) {
    double best = 0.0;
    crsim::TileAllocation alloc = crsim::zero_allocation(groups);
    std::function<void(std::size_t, int, int)> walk = [&](std::size_t g, int m,
                                                          int used) {
        if (g == groups.size()) {
            double total = 0.0;
            for (std::size_t i = 0; i < groups.size(); ++i)
                total += crsim::group_utility(groups[i], alloc[i]);
            best = std::max(best, total);
            return;
        }
        if (m == groups[g].schemes()) {
            walk(g + 1, 0, used);
            return;
        }
        for (int count = 0; used + count <= budget; ++count) {
            alloc[g][static_cast<std::size_t>(m)] = count;
            if (crsim::allocation_rate(groups[g], alloc[g]) >
                groups[g].rate_cap + 1e-9)
                break;
            walk(g, m + 1, used + count);
        }
        alloc[g][static_cast<std::size_t>(m)] = 0;
    };
    walk(0, 0, 0);
    return best;
}

// Maximum of sum(score[n] * inc[tile]) over all injective channel-to-tile
// assignments.  Tiles are independent (no queue ordering), which matches
// instances built from single-tile groups.
inline double best_assignment_reward(const std::vector<double>& scores,
                                     const std::vector<double>& incs) {
    double best = 0.0;
    std::vector<char> used(incs.size(), 0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t n, double acc) {
        best = std::max(best, acc);
        if (n == scores.size()) return;
        walk(n + 1, acc);  // channel n left idle
        for (std::size_t t = 0; t < incs.size(); ++t) {
            if (used[t]) continue;
            used[t] = 1;
            walk(n + 1, acc + scores[n] * incs[t]);
            used[t] = 0;
        }
    };
    walk(0, 0.0);
    return best;
}

// Maximum expected tunnel success over all ways to assign channels to
// tunnels, one channel per link per tunnel, each channel used once.  Assumes
// channel id sets are disjoint across links, so intra-path conflicts cannot
// arise and the only coupling is the number of tunnels.
inline double best_tunnel_success(const std::vector<crsim::LinkChannels>& links) {
    std::size_t rounds = links.empty() ? 0 : links[0].options.size();
    for (const auto& l : links) rounds = std::min(rounds, l.options.size());

    std::vector<std::vector<char>> used(links.size());
    for (std::size_t i = 0; i < links.size(); ++i)
        used[i].assign(links[i].options.size(), 0);

    double best = 0.0;
    std::function<void(std::size_t, double)> tunnel =
        [&](std::size_t r, double acc) {
            best = std::max(best, acc);
            if (r == rounds) return;
            std::function<void(std::size_t, double)> pick =
                [&](std::size_t link, double survive) {
                    if (link == links.size()) {
                        tunnel(r + 1, acc + survive);
                        return;
                    }
                    for (std::size_t o = 0; o < links[link].options.size(); ++o) {
                        if (used[link][o]) continue;
                        used[link][o] = 1;
                        pick(link + 1,
                             survive * (1.0 - links[link].options[o].second));
                        used[link][o] = 0;
                    }
                };
            pick(0, 1.0);
        };
    tunnel(0, 0.0);
    return best;
}

// Independent simple-path enumeration by plain recursion over the adjacency
// produced from the link list, with no ordering or cap tricks.
inline std::set<crsim::Path> all_paths(const crsim::Topology& topo, int src,
                                       int dst, double budget) {
    std::set<crsim::Path> out;
    std::vector<char> visited(topo.nodes.size(), 0);
    crsim::Path cur{src};
    std::function<void(int, double)> walk = [&](int node, double spent) {
        if (node == dst) {
            out.insert(cur);
            return;
        }
        visited[static_cast<std::size_t>(node)] = 1;
        for (const auto& link : topo.links) {
            int other = -1;
            if (link.a == node) other = link.b;
            if (link.b == node) other = link.a;
            if (other < 0 || visited[static_cast<std::size_t>(other)]) continue;
            if (spent + link.delay > budget + 1e-12) continue;
            cur.push_back(other);
            walk(other, spent + link.delay);
            cur.pop_back();
        }
        visited[static_cast<std::size_t>(node)] = 0;
    };
    if (src != dst) walk(src, 0.0);
    return out;
}

// Validates a binary path selection against the session and node-conflict
// rows: every row total must stay at or below one.
inline bool selection_feasible(const std::vector<double>& y,
                               const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows) {
        double total = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) total += row[j] * y[j];
        if (total > 1.0 + 1e-9) return false;
    }
    for (double v : y)
        if (v != 0.0 && v != 1.0) return false;
    return true;
}

} // namespace oracle

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "lp.hpp"
#include "sensing.hpp"
#include "video.hpp"

namespace crsim {

// ---------------------------------------------------------------------------
// Mesh topology
// ---------------------------------------------------------------------------

struct MeshNode {
    int id = 0;
    int network = 0;
};

struct MeshLink {
    int a = 0;
    int b = 0;
    double delay = 1.0;
    std::vector<double> loss;  // per channel index
};

struct Topology {
    std::vector<MeshNode> nodes;
    std::vector<MeshLink> links;
    int num_channels = 0;

    void validate() const {
        std::set<int> ids;
        for (const auto& n : nodes) {
            if (!ids.insert(n.id).second)
                throw std::invalid_argument("duplicate node id");
            if (n.network < 0)
                throw std::invalid_argument("node network must be >= 0");
        }
        for (const auto& l : links) {
            if (!ids.count(l.a) || !ids.count(l.b) || l.a == l.b)
                throw std::invalid_argument("link endpoints must be distinct nodes");
            if (l.delay <= 0.0)
                throw std::invalid_argument("link delay must be positive");
            if (static_cast<int>(l.loss.size()) != num_channels)
                throw std::invalid_argument("link loss vector width mismatch");
            for (double p : l.loss)
                if (p < 0.0 || p >= 1.0)
                    throw std::invalid_argument("link loss must lie in [0, 1)");
        }
    }

    int find_link(int a, int b) const {
        for (std::size_t i = 0; i < links.size(); ++i)
            if ((links[i].a == a && links[i].b == b) ||
                (links[i].a == b && links[i].b == a))
                return static_cast<int>(i);
        return -1;
    }

    int network_of(int node) const {
        for (const auto& n : nodes)
            if (n.id == node) return n.network;
        throw std::invalid_argument("unknown node id");
    }

    std::vector<int> neighbors(int node) const {
        std::vector<int> out;
        for (const auto& l : links) {
            if (l.a == node) out.push_back(l.b);
            if (l.b == node) out.push_back(l.a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

struct Session {
    int source = 0;
    int dest = 0;
    VideoSource video;
    double packet_kb = 100.0;  // payload carried per delivered packet
};

using Path = std::vector<int>;  // node ids, source first

// All simple paths within the delay budget, emitted in lexicographic node
// order (depth-first over ascending neighbor ids), truncated at max_paths.
inline std::vector<Path> enumerate_paths(const Topology& topo, int src, int dst,
                                         double delay_budget, int max_paths) {
    std::vector<Path> out;
    Path current{src};
    std::set<int> visited{src};

    struct Walker {
        const Topology& topo;
        int dst;
        double budget;
        int cap;
        std::vector<Path>& out;
        Path& current;
        std::set<int>& visited;

        void go(int node, double used) {
            if (static_cast<int>(out.size()) >= cap) return;
            if (node == dst) {
                out.push_back(current);
                return;
            }
            for (int next : topo.neighbors(node)) {
                if (visited.count(next)) continue;
                const int li = topo.find_link(node, next);
                const double d = used + topo.links[static_cast<std::size_t>(li)].delay;
                if (d > budget + 1e-12) continue;
                visited.insert(next);
                current.push_back(next);
                go(next, d);
                current.pop_back();
                visited.erase(next);
                if (static_cast<int>(out.size()) >= cap) return;
            }
        }
    };

    Walker w{topo, dst, delay_budget, max_paths, out, current, visited};
    w.go(src, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Channel-to-tunnel scheduling along one path
// ---------------------------------------------------------------------------

// 1 - prod(1 - p) over the hops of one tunnel.
inline double tunnel_loss(const std::vector<double>& hop_losses) {
    double survive = 1.0;
    for (double p : hop_losses) survive *= 1.0 - p;
    return 1.0 - survive;
}

struct LinkChannels {
    std::vector<std::pair<int, double>> options;  // (channel id, loss)
};

struct Tunnel {
    std::vector<std::pair<int, double>> hops;  // (channel id, loss) per link
    double loss = 1.0;
};

struct ChannelSchedule {
    std::vector<Tunnel> tunnels;
    double expected_success = 0.0;  // sum over tunnels of (1 - loss)
};

// Builds disjoint tunnels greedily: each round assigns one channel per link,
// taking globally the most reliable remaining option first.  A channel used
// on a link is consumed there and barred from the two adjacent links (a relay
// cannot receive and forward on the same channel).  Links left with a single
// option are assigned eagerly since they have no alternative.  Rounds stop
// when some link runs out of channels.
inline ChannelSchedule schedule_channels(const std::vector<LinkChannels>& links) {
    ChannelSchedule sched;
    const std::size_t L = links.size();
    if (L == 0) return sched;

    std::vector<std::map<int, double>> remaining(L);
    for (std::size_t i = 0; i < L; ++i)
        for (const auto& [ch, p] : links[i].options) {
            if (p < 0.0 || p >= 1.0)
                throw std::invalid_argument("channel loss must lie in [0, 1)");
            remaining[i][ch] = p;
        }

    while (true) {
        bool any_empty = false;
        for (const auto& r : remaining) any_empty |= r.empty();
        if (any_empty) break;

        auto trial = remaining;
        std::vector<std::pair<int, double>> chosen(L, {-1, 0.0});
        std::size_t assigned = 0;
        bool failed = false;

        auto assign = [&](std::size_t i, int ch, double p) {
            chosen[i] = {ch, p};
            ++assigned;
            trial[i].erase(ch);
            if (i > 0) trial[i - 1].erase(ch);
            if (i + 1 < L) trial[i + 1].erase(ch);
        };

        while (assigned < L && !failed) {
            // Forced assignments first: links down to one option.
            bool forced = false;
            for (std::size_t i = 0; i < L; ++i) {
                if (chosen[i].first >= 0) continue;
                if (trial[i].empty()) { failed = true; break; }
                if (trial[i].size() == 1) {
                    assign(i, trial[i].begin()->first, trial[i].begin()->second);
                    forced = true;
                    break;
                }
            }
            if (failed || forced) continue;

            // Otherwise take the most reliable option anywhere.
            std::size_t best_i = L;
            int best_ch = -1;
            double best_p = 2.0;
            for (std::size_t i = 0; i < L; ++i) {
                if (chosen[i].first >= 0) continue;
                for (const auto& [ch, p] : trial[i])
                    if (p < best_p) {
                        best_p = p;
                        best_ch = ch;
                        best_i = i;
                    }
            }
            if (best_i == L) { failed = true; break; }
            assign(best_i, best_ch, best_p);
        }
        if (failed) break;

        Tunnel t;
        std::vector<double> losses;
        for (std::size_t i = 0; i < L; ++i) {
            t.hops.push_back(chosen[i]);
            losses.push_back(chosen[i].second);
        }
        t.loss = tunnel_loss(losses);
        sched.tunnels.push_back(t);
        sched.expected_success += 1.0 - t.loss;

        // Commit consumption and adjacency bans for future rounds.
        for (std::size_t i = 0; i < L; ++i) {
            remaining[i].erase(chosen[i].first);
            if (i > 0) remaining[i - 1].erase(chosen[i].first);
            if (i + 1 < L) remaining[i + 1].erase(chosen[i].first);
        }
    }
    return sched;
}

// Expected utility gain from granting a path this slot: packets land at
// packet_kb each, spread over the GoP's airtime, against the current quality.
inline double path_gain(const VideoSource& video, double packet_kb,
                        int gop_slots, double slot_seconds, double q_prev,
                        double expected_success) {
    if (gop_slots < 1 || slot_seconds <= 0.0 || q_prev <= 0.0)
        throw std::invalid_argument("path gain parameters out of range");
    const double rho =
        video.beta * packet_kb /
        (static_cast<double>(gop_slots) * slot_seconds * q_prev);
    return std::log1p(rho * expected_success);
}

// ---------------------------------------------------------------------------
// Path selection: dual decomposition
// ---------------------------------------------------------------------------

struct DualParams {
    double step = 0.05;       // per-iteration nudge of a path indicator
    double init = 0.1;        // starting value of every multiplier
    int max_iterations = 10000;
    double tolerance = 1e-6;  // multiplier movement for convergence
};

struct DualResult {
    std::vector<double> y;          // rounded binary selection
    std::vector<double> y_relaxed;  // final clamped indicators
    std::vector<double> multipliers;
    std::vector<std::vector<double>> trace;  // multipliers per iteration
    int iterations = 0;
    bool converged = false;
    double dual_value = 0.0;
    double primal_value = 0.0;
    double duality_gap = 0.0;
};

namespace detail {

// Rounds the relaxed selection via the active constraint system: constraints
// with positive multipliers are tight at the optimum, so solve them as
// equalities by Gauss-Jordan, set the free variables by the sign of their
// reduced objective coefficients, and back-substitute.  Returns nothing if
// the system degenerates; the caller then falls back.
inline std::optional<std::vector<double>> round_by_active_set(
    const std::vector<double>& gains,
    const std::vector<std::vector<double>>& rows,
    const std::vector<double>& multipliers) {
    const std::size_t nv = gains.size();
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (multipliers[r] > 1e-7) active.push_back(r);

    // Augmented system [W | 1] over the active rows.
    std::vector<std::vector<double>> a(active.size(),
                                       std::vector<double>(nv + 1, 0.0));
    for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t j = 0; j < nv; ++j) a[i][j] = rows[active[i]][j];
        a[i][nv] = 1.0;
    }

    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nv && rank < a.size(); ++col) {
        std::size_t sel = rank;
        for (std::size_t i = rank; i < a.size(); ++i)
            if (std::fabs(a[i][col]) > std::fabs(a[sel][col])) sel = i;
        if (std::fabs(a[sel][col]) < 1e-9) continue;
        std::swap(a[rank], a[sel]);
        const double p = a[rank][col];
        for (auto& v : a[rank]) v /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank) continue;
            const double f = a[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= nv; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    for (std::size_t i = rank; i < a.size(); ++i)
        if (std::fabs(a[i][nv]) > 1e-7) return std::nullopt;  // inconsistent

    std::vector<char> dependent(nv, 0);
    for (int c : pivot_col) dependent[static_cast<std::size_t>(c)] = 1;

    // Reduced objective coefficient of each free variable after substituting
    // the dependent ones out.
    std::vector<double> y(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        if (dependent[j]) continue;
        double coeff = gains[j];
        for (std::size_t i = 0; i < rank; ++i)
            coeff -= gains[static_cast<std::size_t>(pivot_col[i])] * a[i][j];
        y[j] = coeff > 0.0 ? 1.0 : 0.0;
    }
    for (std::size_t i = 0; i < rank; ++i) {
        double v = a[i][nv];
        for (std::size_t j = 0; j < nv; ++j)
            if (!dependent[j]) v -= a[i][j] * y[j];
        const double r = std::floor(v + 0.5);
        if (std::fabs(v - r) > 1e-6 || (r != 0.0 && r != 1.0))
            return std::nullopt;
        y[static_cast<std::size_t>(pivot_col[i])] = r;
    }

    for (const auto& row : rows) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < nv; ++j) lhs += row[j] * y[j];
        if (lhs > 1.0 + 1e-9) return std::nullopt;
    }
    return y;
}

// Fallback rounding: greedy by gain, admitting a path only if every
// constraint stays satisfied.
inline std::vector<double> round_greedy(
    const std::vector<double>& gains,
    const std::vector<std::vector<double>>& rows) {
    const std::size_t nv = gains.size();
    std::vector<std::size_t> order(nv);
    for (std::size_t j = 0; j < nv; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    std::vector<double> y(nv, 0.0);
    std::vector<double> used(rows.size(), 0.0);
    for (std::size_t j : order) {
        if (gains[j] <= 0.0) break;
        bool ok = true;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (used[r] + rows[r][j] > 1.0 + 1e-9) { ok = false; break; }
        if (!ok) continue;
        y[j] = 1.0;
        for (std::size_t r = 0; r < rows.size(); ++r) used[r] += rows[r][j];
    }
    return y;
}

} // namespace detail

// Subgradient solver for the path selection relaxation.  Each iteration every
// path indicator takes a small step along the sign of its priced-out gain,
// then the multipliers follow the constraint residuals with an adaptive step
// sized by the gap between the dual value and the midpoint estimate of the
// optimum.  On convergence the selection is rounded binary via the active
// constraint system.
inline DualResult dual_path_select(const std::vector<double>& gains,
                                   const std::vector<std::vector<double>>& rows,
                                   const DualParams& params = {},
                                   bool record_trace = false) {
    const std::size_t nv = gains.size();
    const std::size_t nr = rows.size();
    for (const auto& row : rows)
        if (row.size() != nv)
            throw std::invalid_argument("constraint row width mismatch");
    if (params.step <= 0.0 || params.max_iterations < 1)
        throw std::invalid_argument("bad dual parameters");

    DualResult res;
    std::vector<double> y(nv, 0.0);
    std::vector<double> e(nr, params.init);
    std::vector<double> margin(nv, 0.0);

    // Best feasible rounding seen across the run; returned when the
    // iteration cap is hit before convergence.
    std::vector<std::size_t> gain_order(nv);
    for (std::size_t j = 0; j < nv; ++j) gain_order[j] = j;
    std::stable_sort(gain_order.begin(), gain_order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    std::vector<double> best_y = detail::round_greedy(gains, rows);
    double best_val = 0.0;
    for (std::size_t j = 0; j < nv; ++j) best_val += gains[j] * best_y[j];
    std::vector<double> cand(nv, 0.0);
    std::vector<double> used(nr, 0.0);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        double y_change = 0.0;
        for (std::size_t j = 0; j < nv; ++j) {
            double priced = gains[j];
            for (std::size_t r = 0; r < nr; ++r) priced -= rows[r][j] * e[r];
            margin[j] = priced;
            const double before = y[j];
            y[j] += priced > 0.0 ? params.step : -params.step;
            y[j] = std::min(1.0, std::max(0.0, y[j]));
            y_change = std::max(y_change, std::fabs(y[j] - before));
        }

        // Dual value at the current multipliers (inner maximization solved
        // exactly by the margin signs) and the midpoint target.
        double dual = 0.0, primal = 0.0;
        for (std::size_t r = 0; r < nr; ++r) dual += e[r];
        for (std::size_t j = 0; j < nv; ++j) {
            dual += std::max(0.0, margin[j]);
            primal += gains[j] * y[j];
        }
        const double target = 0.5 * (dual + primal);

        // Subgradient from the inner argmax selection, not the relaxed
        // iterate: its components are integers, so the step stays bounded
        // where the relaxed row sums would pass through 1 and blow it up.
        std::vector<double> g(nr, 0.0);
        double gnorm2 = 0.0;
        bool sel_feasible = true;
        for (std::size_t r = 0; r < nr; ++r) {
            g[r] = 1.0;
            for (std::size_t j = 0; j < nv; ++j)
                if (margin[j] > 0.0) g[r] -= rows[r][j];
            gnorm2 += g[r] * g[r];
            if (g[r] < 0.0) sel_feasible = false;
        }

        // Greedy repair of the current selection, kept as the running best
        // feasible rounding.
        std::fill(cand.begin(), cand.end(), 0.0);
        std::fill(used.begin(), used.end(), 0.0);
        double cand_val = 0.0;
        for (std::size_t j : gain_order) {
            if (margin[j] <= 0.0 || gains[j] <= 0.0) continue;
            bool fits = true;
            for (std::size_t r = 0; r < nr; ++r)
                if (used[r] + rows[r][j] > 1.0 + 1e-9) { fits = false; break; }
            if (!fits) continue;
            cand[j] = 1.0;
            cand_val += gains[j];
            for (std::size_t r = 0; r < nr; ++r) used[r] += rows[r][j];
        }
        if (cand_val > best_val) {
            best_val = cand_val;
            best_y = cand;
        }

        double alpha = 0.0;
        if (gnorm2 > 1e-18) alpha = std::max(0.0, (dual - target) / gnorm2);

        double change = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
            const double next = std::max(0.0, e[r] - alpha * g[r]);
            change = std::max(change, std::fabs(next - e[r]));
            e[r] = next;
        }
        if (record_trace) res.trace.push_back(e);
        res.iterations = iter + 1;
        // The multipliers sit still whenever the clamp at zero absorbs the
        // whole step, which happens transiently while the selection is still
        // growing into the constraints, and the adaptive step can also die
        // out while the priced-in selection still overfills a row, which
        // certifies the multipliers are not optimal yet.  Declare
        // convergence only at rest on a feasible selection.
        if (change < params.tolerance && y_change == 0.0 && sel_feasible) {
            res.converged = true;
            break;
        }
    }

    // Final margins and dual value at the terminal multipliers.
    double dual = 0.0;
    for (std::size_t r = 0; r < nr; ++r) dual += e[r];
    for (std::size_t j = 0; j < nv; ++j) {
        margin[j] = gains[j];
        for (std::size_t r = 0; r < nr; ++r) margin[j] -= rows[r][j] * e[r];
        dual += std::max(0.0, margin[j]);
    }

    auto rounded = detail::round_by_active_set(gains, rows, e);
    std::vector<double> terminal = rounded ? *rounded : detail::round_greedy(gains, rows);
    double terminal_val = 0.0;
    for (std::size_t j = 0; j < nv; ++j) terminal_val += gains[j] * terminal[j];
    if (terminal_val >= best_val) {
        res.y = std::move(terminal);
        res.primal_value = terminal_val;
    } else {
        res.y = std::move(best_y);
        res.primal_value = best_val;
    }

    res.y_relaxed = y;
    res.multipliers = e;
    res.dual_value = dual;
    res.duality_gap = res.dual_value - res.primal_value;
    return res;
}

// ---------------------------------------------------------------------------
// Path selection: centralized alternatives
// ---------------------------------------------------------------------------

struct SelectionResult {
    std::vector<double> y;
    double objective = 0.0;
};

// LP relaxation of the path selection, rounded by repeatedly pinning the
// largest indicator to 1 (zeroing every path it excludes) and re-solving.
// A pin that breaks feasibility is retracted to 0.
inline SelectionResult centralized_sf(const std::vector<double>& gains,
                                      const std::vector<std::vector<double>>& rows) {
    const std::size_t nv = gains.size();
    SelectionResult out;
    out.y.assign(nv, 0.0);
    if (nv == 0) return out;

    std::vector<int> fixed(nv, -1);  // -1 free, else 0/1
    while (true) {
        LinearProgram lp;
        for (std::size_t j = 0; j < nv; ++j) {
            const double lo = fixed[j] < 0 ? 0.0 : static_cast<double>(fixed[j]);
            const double hi = fixed[j] < 0 ? 1.0 : static_cast<double>(fixed[j]);
            lp.add_variable(lo, hi, gains[j]);
        }
        for (const auto& row : rows) lp.add_row(row, '<', 1.0);
        const LpResult res = solve_lp(lp);
        if (res.status != LpResult::Status::optimal)
            throw std::runtime_error("path selection LP did not solve");

        std::size_t pick = nv;
        double best = -1.0;
        for (std::size_t j = 0; j < nv; ++j)
            if (fixed[j] < 0 && res.x[j] > best) {
                best = res.x[j];
                pick = j;
            }
        if (pick == nv) break;

        fixed[pick] = 1;
        // Every path sharing a constraint with the pick is excluded.
        std::vector<int> trial = fixed;
        for (const auto& row : rows)
            if (row[pick] > 0.5)
                for (std::size_t j = 0; j < nv; ++j)
                    if (j != pick && row[j] > 0.5 && trial[j] < 0) trial[j] = 0;
        {
            LinearProgram check;
            for (std::size_t j = 0; j < nv; ++j) {
                const double v = trial[j] < 0 ? 0.0 : static_cast<double>(trial[j]);
                const double lo = trial[j] < 0 ? 0.0 : v;
                const double hi = trial[j] < 0 ? 1.0 : v;
                check.add_variable(lo, hi, gains[j]);
            }
            for (const auto& row : rows) check.add_row(row, '<', 1.0);
            if (solve_lp(check).status == LpResult::Status::optimal)
                fixed = trial;
            else
                fixed[pick] = 0;
        }
    }

    for (std::size_t j = 0; j < nv; ++j) {
        out.y[j] = fixed[j] == 1 ? 1.0 : 0.0;
        out.objective += gains[j] * out.y[j];
    }
    return out;
}

// Exhaustive search over binary selections; the reference optimum for small
// instances.  Instance size is capped to keep the enumeration honest.
inline SelectionResult brute_force_crv(const std::vector<double>& gains,
                                       const std::vector<std::vector<double>>& rows) {
    const std::size_t nv = gains.size();
    if (nv > 16)
        throw std::invalid_argument(
            "exhaustive path search limited to 16 indicators");
    SelectionResult out;
    out.y.assign(nv, 0.0);
    for (std::size_t mask = 0; mask < (1ull << nv); ++mask) {
        double obj = 0.0;
        bool ok = true;
        for (const auto& row : rows) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < nv; ++j)
                if (mask & (1ull << j)) lhs += row[j];
            if (lhs > 1.0 + 1e-12) { ok = false; break; }
        }
        if (!ok) continue;
        for (std::size_t j = 0; j < nv; ++j)
            if (mask & (1ull << j)) obj += gains[j];
        if (obj > out.objective + 1e-15) {
            out.objective = obj;
            for (std::size_t j = 0; j < nv; ++j)
                out.y[j] = (mask & (1ull << j)) ? 1.0 : 0.0;
        }
    }
    return out;
}

// Greedy walk used as the naive baseline: from the source, repeatedly cross
// the link with the most currently-available channels, among neighbors that
// can still reach the destination within the remaining delay budget.
inline Path greedy_walk(const Topology& topo, int src, int dst,
                        double delay_budget,
                        const std::vector<std::vector<int>>& link_channels) {
    Path path{src};
    std::set<int> visited{src};
    int node = src;
    double used = 0.0;

    auto reachable = [&](int from, double budget) {
        // Cheapest remaining delay to dst avoiding visited nodes.
        std::map<int, double> dist;
        dist[from] = 0.0;
        std::set<int> done;
        while (true) {
            int u = -1;
            double du = std::numeric_limits<double>::infinity();
            for (const auto& [n, d] : dist)
                if (!done.count(n) && d < du) { u = n; du = d; }
            if (u < 0) break;
            if (u == dst) return du <= budget + 1e-12;
            done.insert(u);
            for (int v : topo.neighbors(u)) {
                if (visited.count(v) && v != dst) continue;
                if (done.count(v)) continue;
                const int li = topo.find_link(u, v);
                const double nd = du + topo.links[static_cast<std::size_t>(li)].delay;
                if (!dist.count(v) || nd < dist[v]) dist[v] = nd;
            }
        }
        return false;
    };

    while (node != dst) {
        int best = -1, best_count = -1;
        for (int v : topo.neighbors(node)) {
            if (visited.count(v)) continue;
            const int li = topo.find_link(node, v);
            const double d = topo.links[static_cast<std::size_t>(li)].delay;
            if (used + d > delay_budget + 1e-12) continue;
            visited.insert(v);
            const bool ok = v == dst || reachable(v, delay_budget - used - d);
            visited.erase(v);
            if (!ok) continue;
            const int count =
                static_cast<int>(link_channels[static_cast<std::size_t>(li)].size());
            if (count > best_count) {
                best_count = count;
                best = v;
            }
        }
        if (best < 0) return {};
        const int li = topo.find_link(node, best);
        used += topo.links[static_cast<std::size_t>(li)].delay;
        node = best;
        path.push_back(node);
        visited.insert(node);
    }
    return path;
}

} // namespace crsim

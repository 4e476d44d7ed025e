#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crsim {

// Rate-quality model of one fine-granularity-scalable encoding: PSNR grows
// linearly in delivered rate once the base layer is in.
struct VideoSource {
    double q_base = 30.0;    // PSNR in dB at exactly the base-layer rate
    double beta = 0.01;      // dB per kb of enhancement data
    double r_base = 0.0;     // base-layer kb per GoP
    double r_enh_max = 0.0;  // enhancement kb available per GoP

    void validate() const {
        if (q_base <= 1.0 || beta <= 0.0 || r_base < 0.0 || r_enh_max < 0.0)
            throw std::invalid_argument("video source parameters out of range");
    }

    // PSNR at a total delivered rate of `rate` kb per GoP.
    double psnr(double rate) const {
        if (rate < r_base)
            throw std::domain_error("PSNR undefined below the base-layer rate");
        return q_base + beta * (rate - r_base);
    }
};

// One multicast group: a video source plus its audience, stratified by the
// highest modulation-coding scheme each user can decode.  audience[k] is the
// number of users that decode schemes 1..k+1; payload[m] is the kb carried by
// one tile sent with scheme m+1.
struct MulticastGroup {
    VideoSource source;
    std::vector<int> audience;
    std::vector<double> payload;
    double rate_cap = 0.0;  // enhancement kb cap for this group per GoP

    int schemes() const { return static_cast<int>(payload.size()); }

    void validate() const {
        source.validate();
        if (audience.size() != payload.size() || audience.empty())
            throw std::invalid_argument("audience/payload length mismatch");
        for (std::size_t k = 0; k + 1 < audience.size(); ++k)
            if (audience[k] < audience[k + 1])
                throw std::invalid_argument("audience must be nonincreasing");
        if (audience.back() < 0)
            throw std::invalid_argument("audience counts must be >= 0");
        for (std::size_t m = 0; m < payload.size(); ++m) {
            if (payload[m] <= 0.0)
                throw std::invalid_argument("tile payloads must be positive");
            if (m > 0 && payload[m] <= payload[m - 1])
                throw std::invalid_argument(
                    "tile payloads must be strictly increasing");
        }
        if (rate_cap < 0.0)
            throw std::invalid_argument("rate cap must be >= 0");
    }
};

// Tile counts per (group, scheme).
using TileAllocation = std::vector<std::vector<int>>;

inline TileAllocation zero_allocation(const std::vector<MulticastGroup>& groups) {
    TileAllocation l(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
        l[g].assign(static_cast<std::size_t>(groups[g].schemes()), 0);
    return l;
}

// Sum of log-PSNR over the group's audience strata.  Users able to decode up
// to scheme k see the base quality plus every tile sent with schemes <= k.
inline double group_utility(const MulticastGroup& group,
                            const std::vector<int>& tiles) {
    const int M = group.schemes();
    double utility = 0.0;
    double rate = 0.0;
    for (int k = 0; k < M; ++k) {
        rate += group.payload[static_cast<std::size_t>(k)] *
                tiles[static_cast<std::size_t>(k)];
        const int n_k = group.audience[static_cast<std::size_t>(k)];
        const int n_next =
            k + 1 < M ? group.audience[static_cast<std::size_t>(k) + 1] : 0;
        const int users = n_k - n_next;
        if (users > 0)
            utility += users * std::log(group.source.q_base +
                                        group.source.beta * rate);
    }
    return utility;
}

// Marginal utility of the i-th tile sent with scheme m (1-based i), assuming
// no tiles above scheme m have been granted yet.  That holds whenever tiles
// are granted in scheme order, which is how the scheduler consumes them.
inline double incremental_utility(const MulticastGroup& group,
                                  const std::vector<int>& tiles, int m, int i) {
    if (i < 1) throw std::invalid_argument("tile ordinal is 1-based");
    double below = 0.0;
    for (int u = 0; u < m; ++u)
        below += group.payload[static_cast<std::size_t>(u)] *
                 tiles[static_cast<std::size_t>(u)];
    const double b_m = group.payload[static_cast<std::size_t>(m)];
    const double denom = group.source.q_base +
                         group.source.beta * (below + (i - 1) * b_m);
    // Every stratum from m upward gains the same log increment; the stratum
    // counts telescope to the audience of scheme m.
    return group.audience[static_cast<std::size_t>(m)] *
           std::log1p(group.source.beta * b_m / denom);
}

// Unicast objective: log of PSNR at the delivered rate.
inline double session_utility(const VideoSource& source, double rate) {
    return std::log(source.psnr(rate));
}

} // namespace crsim

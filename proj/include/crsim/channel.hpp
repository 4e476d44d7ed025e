#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace crsim {

// Stream tags used when deriving per-purpose substreams from a master seed.
enum class StreamTag : std::uint64_t {
    channel = 1,  // channel state evolution, keyed further by (network, index)
    sensing = 2,  // observation draws
    access = 3,   // transmit/no-transmit draws
    loss = 4,     // packet erasure draws
};

// Licensed-user occupancy of one channel: a two-state discrete-time Markov
// chain over {idle, busy}.  lambda is P(idle -> idle), mu is P(busy -> idle).
struct MarkovChannel {
    double lambda = 0.5;
    double mu = 0.5;
    bool busy = false;

    // Long-run fraction of busy slots.
    double utilization() const {
        const double denom = 1.0 - lambda + mu;
        if (denom <= 0.0) return 0.0;
        return (1.0 - lambda) / denom;
    }

    void step(Rng& rng) {
        const double stay_idle = busy ? mu : lambda;
        busy = !rng.bernoulli(stay_idle);
    }
};

// A bank of channels grouped by network, each with its own derived stream.
// Copyable value; stepping mutates only this bank.
class ChannelBank {
public:
    ChannelBank() = default;

    // params[k][m] gives (lambda, mu) of channel m on network k.  Initial
    // states are drawn from each chain's stationary distribution.
    ChannelBank(const std::vector<std::vector<MarkovChannel>>& params,
                std::uint64_t master_seed) {
        channels_ = params;
        streams_.resize(params.size());
        for (std::size_t k = 0; k < params.size(); ++k) {
            streams_[k].reserve(params[k].size());
            for (std::size_t m = 0; m < params[k].size(); ++m) {
                auto& ch = channels_[k][m];
                if (ch.lambda <= 0.0 || ch.lambda >= 1.0 || ch.mu <= 0.0 ||
                    ch.mu >= 1.0)
                    throw std::invalid_argument(
                        "channel transition probabilities must lie in (0, 1)");
                streams_[k].push_back(
                    substream(master_seed,
                              static_cast<std::uint64_t>(StreamTag::channel),
                              k, m));
                ch.busy = streams_[k][m].bernoulli(ch.utilization());
            }
        }
    }

    std::size_t networks() const { return channels_.size(); }
    std::size_t size(std::size_t network) const { return channels_[network].size(); }

    const MarkovChannel& at(std::size_t network, std::size_t m) const {
        return channels_[network][m];
    }

    bool busy(std::size_t network, std::size_t m) const {
        return channels_[network][m].busy;
    }

    void step() {
        for (std::size_t k = 0; k < channels_.size(); ++k)
            for (std::size_t m = 0; m < channels_[k].size(); ++m)
                channels_[k][m].step(streams_[k][m]);
    }

    // Order-independent digest of the current truth, folded slot by slot into
    // a trajectory hash by the experiment driver.
    std::uint64_t state_digest() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const auto& net : channels_)
            for (const auto& ch : net) {
                h ^= ch.busy ? 0x100000001b3ull : 0x9e3779b1ull;
                h *= 0x100000001b3ull;
            }
        return h;
    }

private:
    std::vector<std::vector<MarkovChannel>> channels_;
    std::vector<std::vector<Rng>> streams_;
};

} // namespace crsim

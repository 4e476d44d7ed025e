#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "channel.hpp"

namespace crsim {

// Spectrum sensor error rates shared by all observers of a channel.
// epsilon: P(report busy | idle).  delta: P(report idle | busy).
struct SensorProfile {
    double epsilon = 0.1;
    double delta = 0.1;

    void validate() const {
        if (epsilon <= 0.0 || epsilon >= 1.0 || delta <= 0.0 || delta >= 1.0)
            throw std::invalid_argument(
                "sensor error rates must lie strictly inside (0, 1)");
    }
};

// Votes collected for one channel in one slot.
struct SensingReport {
    int observers = 0;   // total reports
    int idle_votes = 0;  // reports saying the channel is idle
};

// One slot of belief maintenance: advance yesterday's availability belief
// through the channel's transition kernel, then fold in today's votes.
// Returns P(channel idle now | vote history).
inline double update_belief(double prev_belief, const MarkovChannel& ch,
                            const SensingReport& report,
                            const SensorProfile& profile) {
    profile.validate();
    if (report.observers < 0 || report.idle_votes < 0 ||
        report.idle_votes > report.observers)
        throw std::invalid_argument("malformed sensing report");

    const double prior_idle =
        ch.lambda * prev_belief + ch.mu * (1.0 - prev_belief);
    if (report.observers == 0) return prior_idle;
    if (prior_idle <= 0.0) return 0.0;
    if (prior_idle >= 1.0) return 1.0;

    // Likelihood ratio of the vote pattern under busy vs idle.  An idle vote
    // multiplies by delta/(1-eps), a busy vote by (1-delta)/eps.
    const double idle_vote_ratio = profile.delta / (1.0 - profile.epsilon);
    const double busy_vote_ratio = (1.0 - profile.delta) / profile.epsilon;
    const double u = static_cast<double>(report.idle_votes);
    const double v = static_cast<double>(report.observers - report.idle_votes);
    const double odds = std::pow(idle_vote_ratio, u) *
                        std::pow(busy_vote_ratio, v) *
                        ((1.0 - prior_idle) / prior_idle);
    return 1.0 / (1.0 + odds);
}

// Availability belief extrapolated tau slots ahead with no new observations.
inline double predict_belief(double belief, const MarkovChannel& ch, int tau) {
    if (tau < 0) throw std::invalid_argument("prediction horizon must be >= 0");
    const double r = ch.lambda - ch.mu;
    if (tau == 0) return belief;
    if (r == 1.0) return belief;  // lambda = 1, mu = 0: frozen chain
    const double rt = std::pow(r, static_cast<double>(tau));
    return rt * belief + ch.mu * (1.0 - rt) / (1.0 - r);
}

// Per-channel access parameters.  gamma is the tolerated probability of
// colliding with a licensed user; kappa is the belief threshold used by
// threshold-access nodes.
struct AccessPolicy {
    double gamma = 0.1;
    double kappa = 0.0;
};

// Probabilistic access: transmit with the largest probability that keeps the
// expected collision chance under gamma.
inline double tx_probability(double belief, double gamma) {
    if (belief >= 1.0) return 1.0;
    return std::min(1.0, gamma / (1.0 - belief));
}

namespace detail {

inline double choose(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

// Posterior availability given i idle votes out of n, before thresholding.
inline double vote_posterior(int idle_votes, int observers,
                             const SensorProfile& profile, double prior_idle) {
    if (prior_idle <= 0.0) return 0.0;
    if (prior_idle >= 1.0) return 1.0;
    const double idle_vote_ratio = profile.delta / (1.0 - profile.epsilon);
    const double busy_vote_ratio = (1.0 - profile.delta) / profile.epsilon;
    const double odds =
        std::pow(idle_vote_ratio, static_cast<double>(idle_votes)) *
        std::pow(busy_vote_ratio, static_cast<double>(observers - idle_votes)) *
        ((1.0 - prior_idle) / prior_idle);
    return 1.0 / (1.0 + odds);
}

} // namespace detail

// P(threshold test passes | channel truly busy): the sum over vote counts
// whose posterior clears kappa, weighted by the busy-conditional vote law.
inline double collision_probability(double kappa, int observers,
                                    const SensorProfile& profile,
                                    double prior_idle) {
    profile.validate();
    if (observers < 1) throw std::invalid_argument("need at least one observer");
    double p = 0.0;
    for (int i = 0; i <= observers; ++i) {
        if (detail::vote_posterior(i, observers, profile, prior_idle) < kappa)
            continue;
        p += detail::choose(observers, i) *
             std::pow(profile.delta, static_cast<double>(i)) *
             std::pow(1.0 - profile.delta,
                      static_cast<double>(observers - i));
    }
    return p;
}

// Smallest belief threshold whose collision probability is within gamma.
// Only observers+1 posteriors are achievable, so the search is over that
// finite set; if even the strictest fails, a threshold just above the largest
// posterior shuts the channel (collision probability 0).
inline double solve_threshold(double gamma, int observers,
                              const SensorProfile& profile, double prior_idle) {
    profile.validate();
    if (observers < 1) throw std::invalid_argument("need at least one observer");
    if (gamma >= 1.0) return 0.0;

    std::vector<double> posteriors;
    posteriors.reserve(static_cast<std::size_t>(observers) + 1);
    for (int i = 0; i <= observers; ++i)
        posteriors.push_back(
            detail::vote_posterior(i, observers, profile, prior_idle));
    std::sort(posteriors.begin(), posteriors.end());

    for (double kappa : posteriors)
        if (collision_probability(kappa, observers, profile, prior_idle) <=
            gamma)
            return kappa;
    return std::nextafter(posteriors.back(), 2.0);
}

// Channels whose beliefs clear the thresholds of both endpoint networks.
// beliefs[k][m] and kappas[k][m] are indexed by (network, channel).
inline std::vector<int> available_channels(
    const std::vector<std::vector<double>>& beliefs,
    const std::vector<std::vector<double>>& kappas, int net_a, int net_b) {
    std::vector<int> out;
    const auto& ba = beliefs[static_cast<std::size_t>(net_a)];
    const auto& bb = beliefs[static_cast<std::size_t>(net_b)];
    for (std::size_t m = 0; m < ba.size(); ++m) {
        const bool ok_a = ba[m] >= kappas[static_cast<std::size_t>(net_a)][m];
        const bool ok_b = bb[m] >= kappas[static_cast<std::size_t>(net_b)][m];
        if (ok_a && ok_b) out.push_back(static_cast<int>(m));
    }
    return out;
}

// Draws one slot of votes for a channel with known truth.
inline SensingReport draw_report(bool truly_busy, int observers,
                                 const SensorProfile& profile, Rng& rng) {
    SensingReport r;
    r.observers = observers;
    for (int i = 0; i < observers; ++i) {
        const double p_idle_vote =
            truly_busy ? profile.delta : 1.0 - profile.epsilon;
        if (rng.bernoulli(p_idle_vote)) ++r.idle_votes;
    }
    return r;
}

} // namespace crsim

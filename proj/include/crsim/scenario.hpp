#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "multicast.hpp"
#include "multihop_sim.hpp"

namespace crsim {

struct SweepSpec {
    std::string key;
    std::vector<std::string> values;  // parsed per key when applied
};

// A fully described experiment: everything the driver needs to rebuild the
// simulators for any sweep point, scheme, and seed.
struct Scenario {
    std::string name;
    std::string mode;  // "infrastructure" or "multihop"
    std::vector<std::uint64_t> seeds;
    int gops = 1;

    // Channel population (shared template across networks in multihop mode).
    int channel_count = 0;
    std::optional<double> eta;           // utilization; lambda derived when set
    std::optional<double> lambda_scalar;
    std::optional<double> mu_scalar;
    std::vector<double> lambda;  // per channel when given as arrays
    std::vector<double> mu;

    SensorProfile profile;
    double gamma = 0.2;
    std::vector<std::string> schemes;
    std::optional<SweepSpec> sweep;

    // Infrastructure mode.
    int gop_slots = 150;
    int window = 10;
    std::vector<MulticastGroup> groups;

    // Multihop mode.
    int networks = 1;
    std::vector<std::vector<int>> observers;
    double slot_seconds = 0.02;
    double delay_budget = 3.0;
    int max_paths = 8;
    double packet_kb = 100.0;
    DualParams dual;
    Topology topo;
    std::vector<Session> sessions;
};

namespace detail {

inline const nlohmann::json& need(const nlohmann::json& j, const std::string& field,
                                  const std::string& where) {
    if (!j.contains(field))
        throw std::invalid_argument("missing field '" + where + field + "'");
    return j.at(field);
}

inline double need_num(const nlohmann::json& j, const std::string& field,
                       const std::string& where = "") {
    const auto& v = need(j, field, where);
    if (!v.is_number())
        throw std::invalid_argument("field '" + where + field + "' must be a number");
    return v.get<double>();
}

inline int need_int(const nlohmann::json& j, const std::string& field,
                    const std::string& where = "") {
    const auto& v = need(j, field, where);
    if (!v.is_number_integer())
        throw std::invalid_argument("field '" + where + field + "' must be an integer");
    return v.get<int>();
}

inline std::string need_str(const nlohmann::json& j, const std::string& field,
                            const std::string& where = "") {
    const auto& v = need(j, field, where);
    if (!v.is_string())
        throw std::invalid_argument("field '" + where + field + "' must be a string");
    return v.get<std::string>();
}

inline std::vector<double> num_list(const nlohmann::json& v, const std::string& what) {
    if (!v.is_array())
        throw std::invalid_argument("field '" + what + "' must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw std::invalid_argument("field '" + what + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline double lambda_from_eta(double eta, double mu) {
    if (eta <= 0.0 || eta >= 1.0)
        throw std::invalid_argument("eta must lie in (0, 1)");
    const double lam = 1.0 - eta * mu / (1.0 - eta);
    if (lam <= 0.0 || lam >= 1.0)
        throw std::invalid_argument(
            "eta/mu combination leaves no valid idle-persistence probability");
    return lam;
}

} // namespace detail

// Per-channel chains for one network built from the scenario's template.
inline std::vector<MarkovChannel> build_chains(const Scenario& sc) {
    std::vector<MarkovChannel> chains(static_cast<std::size_t>(sc.channel_count));
    for (int m = 0; m < sc.channel_count; ++m) {
        auto& ch = chains[static_cast<std::size_t>(m)];
        const double mu = sc.mu_scalar ? *sc.mu_scalar
                                       : sc.mu[static_cast<std::size_t>(m)];
        ch.mu = mu;
        if (sc.eta)
            ch.lambda = detail::lambda_from_eta(*sc.eta, mu);
        else
            ch.lambda = sc.lambda_scalar ? *sc.lambda_scalar
                                         : sc.lambda[static_cast<std::size_t>(m)];
    }
    return chains;
}

inline Scenario load_scenario_json(const nlohmann::json& j,
                                   const std::string& name = "") {
    using detail::need;
    using detail::need_int;
    using detail::need_num;
    using detail::need_str;

    Scenario sc;
    sc.name = name;
    sc.mode = need_str(j, "mode");
    if (sc.mode != "infrastructure" && sc.mode != "multihop")
        throw std::invalid_argument(
            "field 'mode' must be 'infrastructure' or 'multihop'");

    for (const auto& s : need(j, "seeds", "")) {
        if (!s.is_number_integer() || s.get<long long>() < 0)
            throw std::invalid_argument("field 'seeds' must hold nonnegative integers");
        sc.seeds.push_back(s.get<std::uint64_t>());
    }
    if (sc.seeds.empty())
        throw std::invalid_argument("field 'seeds' must not be empty");

    sc.gops = need_int(j, "gops");
    if (sc.gops < 1) throw std::invalid_argument("field 'gops' must be >= 1");

    const auto& ch = need(j, "channels", "");
    sc.channel_count = need_int(ch, "count", "channels.");
    if (sc.channel_count < 1)
        throw std::invalid_argument("field 'channels.count' must be >= 1");
    if (ch.contains("eta")) {
        sc.eta = need_num(ch, "eta", "channels.");
        sc.mu_scalar = need_num(ch, "mu", "channels.");
    } else {
        const auto& lam = need(ch, "lambda", "channels.");
        if (lam.is_number())
            sc.lambda_scalar = lam.get<double>();
        else {
            sc.lambda = detail::num_list(lam, "channels.lambda");
            if (static_cast<int>(sc.lambda.size()) != sc.channel_count)
                throw std::invalid_argument(
                    "field 'channels.lambda' length must equal channels.count");
        }
        const auto& mu = need(ch, "mu", "channels.");
        if (mu.is_number())
            sc.mu_scalar = mu.get<double>();
        else {
            sc.mu = detail::num_list(mu, "channels.mu");
            if (static_cast<int>(sc.mu.size()) != sc.channel_count)
                throw std::invalid_argument(
                    "field 'channels.mu' length must equal channels.count");
        }
    }

    const auto& sensing = need(j, "sensing", "");
    sc.profile.epsilon = need_num(sensing, "epsilon", "sensing.");
    sc.profile.delta = need_num(sensing, "delta", "sensing.");
    sc.profile.validate();

    sc.gamma = need_num(need(j, "access", ""), "gamma", "access.");
    if (sc.gamma <= 0.0 || sc.gamma >= 1.0)
        throw std::invalid_argument("field 'access.gamma' must lie in (0, 1)");

    for (const auto& s : need(j, "schemes", "")) {
        if (!s.is_string())
            throw std::invalid_argument("field 'schemes' must hold strings");
        sc.schemes.push_back(s.get<std::string>());
    }
    if (sc.schemes.empty())
        throw std::invalid_argument("field 'schemes' must not be empty");

    if (j.contains("sweep")) {
        SweepSpec sweep;
        sweep.key = need_str(j.at("sweep"), "key", "sweep.");
        for (const auto& v : need(j.at("sweep"), "values", "sweep.")) {
            if (v.is_string())
                sweep.values.push_back(v.get<std::string>());
            else if (v.is_number()) {
                std::ostringstream os;
                os << v.get<double>();
                sweep.values.push_back(os.str());
            } else
                throw std::invalid_argument(
                    "field 'sweep.values' must hold numbers or strings");
        }
        if (sweep.values.empty())
            throw std::invalid_argument("field 'sweep.values' must not be empty");
        sc.sweep = sweep;
    }

    if (sc.mode == "infrastructure") {
        sc.gop_slots = need_int(j, "slots_per_gop");
        sc.window = need_int(j, "estimation_window");
        if (sc.gop_slots < 1 || sc.window < 1)
            throw std::invalid_argument(
                "fields 'slots_per_gop' and 'estimation_window' must be >= 1");
        for (const auto& g : need(j, "groups", "")) {
            MulticastGroup grp;
            grp.source.q_base = need_num(g, "q_base", "groups[].");
            grp.source.beta = need_num(g, "beta", "groups[].");
            grp.source.r_base = need_num(g, "r_base_kb", "groups[].");
            grp.source.r_enh_max = need_num(g, "r_enh_max_kb", "groups[].");
            grp.rate_cap = grp.source.r_enh_max;
            for (const auto& a : need(g, "audience", "groups[]."))
                grp.audience.push_back(a.get<int>());
            grp.payload = detail::num_list(need(g, "payload_kb", "groups[]."),
                                           "groups[].payload_kb");
            grp.validate();
            sc.groups.push_back(std::move(grp));
        }
        if (sc.groups.empty())
            throw std::invalid_argument("field 'groups' must not be empty");
        for (const auto& s : sc.schemes)
            if (s != "greedy" && s != "sf" && s != "equal")
                throw std::invalid_argument("unknown infrastructure scheme: " + s);
    } else {
        sc.networks = need_int(j, "networks");
        if (sc.networks < 1)
            throw std::invalid_argument("field 'networks' must be >= 1");
        sc.slot_seconds = need_num(j, "slot_seconds");
        sc.gop_slots = need_int(j, "slots_per_gop");
        sc.delay_budget = need_num(j, "delay_budget");
        sc.max_paths = need_int(j, "max_paths");
        sc.packet_kb = need_num(j, "packet_kb");
        if (sc.slot_seconds <= 0.0 || sc.gop_slots < 1 || sc.delay_budget <= 0.0 ||
            sc.max_paths < 1 || sc.packet_kb <= 0.0)
            throw std::invalid_argument("multihop timing fields out of range");

        const auto& obs = need(j, "observers", "");
        if (!obs.is_array() || static_cast<int>(obs.size()) != sc.networks)
            throw std::invalid_argument(
                "field 'observers' must hold one row per network");
        for (const auto& row : obs) {
            std::vector<int> counts;
            for (const auto& v : row) counts.push_back(v.get<int>());
            if (static_cast<int>(counts.size()) != sc.channel_count)
                throw std::invalid_argument(
                    "field 'observers' rows must have channels.count entries");
            sc.observers.push_back(std::move(counts));
        }

        if (j.contains("dual")) {
            const auto& d = j.at("dual");
            if (d.contains("step")) sc.dual.step = need_num(d, "step", "dual.");
            if (d.contains("init")) sc.dual.init = need_num(d, "init", "dual.");
            if (d.contains("max_iterations"))
                sc.dual.max_iterations = need_int(d, "max_iterations", "dual.");
            if (d.contains("tolerance"))
                sc.dual.tolerance = need_num(d, "tolerance", "dual.");
        }

        sc.topo.num_channels = sc.channel_count;
        for (const auto& n : need(j, "nodes", "")) {
            MeshNode node;
            node.id = need_int(n, "id", "nodes[].");
            node.network = need_int(n, "network", "nodes[].");
            if (node.network >= sc.networks)
                throw std::invalid_argument(
                    "field 'nodes[].network' out of range");
            sc.topo.nodes.push_back(node);
        }
        for (const auto& l : need(j, "links", "")) {
            MeshLink link;
            link.a = need_int(l, "a", "links[].");
            link.b = need_int(l, "b", "links[].");
            link.delay = need_num(l, "delay", "links[].");
            link.loss = detail::num_list(need(l, "loss", "links[]."),
                                         "links[].loss");
            sc.topo.links.push_back(std::move(link));
        }
        sc.topo.validate();

        for (const auto& s : need(j, "sessions", "")) {
            Session session;
            session.source = need_int(s, "source", "sessions[].");
            session.dest = need_int(s, "dest", "sessions[].");
            session.packet_kb = sc.packet_kb;
            const auto& v = need(s, "video", "sessions[].");
            session.video.q_base = need_num(v, "q_base", "sessions[].video.");
            session.video.beta = need_num(v, "beta", "sessions[].video.");
            session.video.r_base = need_num(v, "r_base_kb", "sessions[].video.");
            session.video.validate();
            sc.sessions.push_back(session);
        }
        if (sc.sessions.empty())
            throw std::invalid_argument("field 'sessions' must not be empty");
        for (const auto& s : sc.schemes)
            if (s != "dual" && s != "sf" && s != "heuristic" && s != "brute")
                throw std::invalid_argument("unknown multihop scheme: " + s);
    }
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("scenario JSON parse error: " +
                                    std::string(e.what()));
    }
    return load_scenario_json(j, path);
}

// Applies one sweep value in place.  "sensing" takes "epsilon:delta" pairs;
// every other key takes a plain number.
inline void apply_sweep_value(Scenario& sc, const std::string& key,
                              const std::string& value) {
    auto as_num = [&]() {
        try {
            return std::stod(value);
        } catch (...) {
            throw std::invalid_argument("sweep value '" + value +
                                        "' is not a number");
        }
    };
    if (key == "gamma") {
        sc.gamma = as_num();
        if (sc.gamma <= 0.0 || sc.gamma >= 1.0)
            throw std::invalid_argument("sweep gamma must lie in (0, 1)");
    } else if (key == "channels") {
        const int n = static_cast<int>(as_num());
        if (n < 1) throw std::invalid_argument("sweep channels must be >= 1");
        if (!sc.lambda.empty() || !sc.mu.empty())
            throw std::invalid_argument(
                "channel-count sweep requires scalar lambda/mu");
        sc.channel_count = n;
        if (sc.mode == "multihop")
            throw std::invalid_argument(
                "channel-count sweep applies to infrastructure mode only");
    } else if (key == "eta") {
        sc.eta = as_num();
        if (!sc.mu_scalar && sc.mu.empty())
            throw std::invalid_argument("eta sweep requires a mu specification");
    } else if (key == "slot_seconds") {
        sc.slot_seconds = as_num();
        if (sc.slot_seconds <= 0.0)
            throw std::invalid_argument("sweep slot_seconds must be positive");
    } else if (key == "sensing") {
        const auto colon = value.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument(
                "sensing sweep values use 'epsilon:delta' form");
        sc.profile.epsilon = std::stod(value.substr(0, colon));
        sc.profile.delta = std::stod(value.substr(colon + 1));
        sc.profile.validate();
    } else {
        throw std::invalid_argument("unknown sweep key: " + key);
    }
}

} // namespace crsim

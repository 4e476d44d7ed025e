#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <crsim/experiment.hpp>

namespace {

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cognitive radio video streaming simulator"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run a scenario and emit CSV metrics");
    std::string scenario_path;
    std::string out_path;
    int seed_count = 0;
    std::string schemes_csv;
    std::string sweep_spec;
    sim->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sim->add_option("--out", out_path, "write the CSV here instead of stdout");
    sim->add_option("--seeds", seed_count,
                    "run this many seeds (truncates or extends the scenario list)");
    sim->add_option("--schemes", schemes_csv,
                    "comma-separated subset of the scenario's schemes");
    sim->add_option("--sweep", sweep_spec,
                    "override the sweep, e.g. gamma=0.1,0.2,0.3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        crsim::Scenario sc = crsim::load_scenario(scenario_path);

        if (seed_count > 0) {
            std::vector<std::uint64_t> seeds;
            std::uint64_t next = sc.seeds.empty() ? 1 : sc.seeds.back() + 1;
            for (int i = 0; i < seed_count; ++i) {
                if (i < static_cast<int>(sc.seeds.size()))
                    seeds.push_back(sc.seeds[static_cast<std::size_t>(i)]);
                else
                    seeds.push_back(next++);
            }
            sc.seeds = std::move(seeds);
        }

        if (!schemes_csv.empty()) {
            const auto wanted = split_csv(schemes_csv);
            if (wanted.empty())
                throw std::invalid_argument("--schemes needs at least one name");
            for (const auto& s : wanted)
                if (std::find(sc.schemes.begin(), sc.schemes.end(), s) ==
                    sc.schemes.end())
                    throw std::invalid_argument(
                        "scheme '" + s + "' is not listed in the scenario");
            sc.schemes = wanted;
        }

        if (!sweep_spec.empty()) {
            const auto eq = sweep_spec.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--sweep expects key=v1,v2,...");
            crsim::SweepSpec sweep;
            sweep.key = sweep_spec.substr(0, eq);
            sweep.values = split_csv(sweep_spec.substr(eq + 1));
            if (sweep.values.empty())
                throw std::invalid_argument("--sweep needs at least one value");
            // Validate values up front so bad input fails before any run.
            for (const auto& v : sweep.values) {
                crsim::Scenario probe = sc;
                crsim::apply_sweep_value(probe, sweep.key, v);
            }
            sc.sweep = std::move(sweep);
        }

        const auto rows = crsim::run_experiment(sc);
        const std::string csv = crsim::format_csv(rows);
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file: " + out_path);
            out << csv;
            if (!out) throw std::runtime_error("failed writing: " + out_path);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

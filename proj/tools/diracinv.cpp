// diracinv command-line front end.
//
//   diracinv run <scenario.json>   run the scenario's tasks
//   diracinv demo <catalog-name>   run the built-in scenario for a catalog entry
//   diracinv selftest              run every property suite
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 input error.

#include "diracinv/diracinv.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using diracinv::Error;
using diracinv::ErrorCode;
using ojson = nlohmann::ordered_json;

struct Options {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<double> tol;
    std::string out;
};

void emit(const ojson& doc, const Options& opt)
{
    const std::string text = doc.dump(2) + "\n";
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::Schema, "cannot write '" + opt.out + "'");
    f << text;
}

/// Reports must be finite everywhere; anything else is an input problem.
int finish(const ojson& doc, int code, const Options& opt)
{
    if (!diracinv::all_finite(doc)) throw Error(ErrorCode::NonFinite, "report contains a non-finite number");
    emit(doc, opt);
    return code;
}

int run_scenario_json(const ojson& j, const Options& opt)
{
    diracinv::ScenarioOverrides ov{opt.seed, opt.samples, opt.tol};
    const auto s = diracinv::parse_scenario(j, ov);
    const auto r = diracinv::run_scenario(s);
    return finish(r.report.to_json(), r.exit_code, opt);
}

int input_error(const std::string& message, const Options& opt)
{
    std::cerr << "diracinv: " << message << "\n";
    try {
        emit(ojson{{"tool", "diracinv"}, {"version", diracinv::kVersion}, {"passed", false}, {"input_error", message}},
             opt);
    } catch (...) {
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirac equation inversion toolkit"};
    app.require_subcommand(1);
    Options opt;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double tol = 0.0;
    auto* o_seed = app.add_option("--seed", seed, "sampling seed (default 42)");
    auto* o_samples = app.add_option("--samples", samples, "number of sample points")->check(CLI::PositiveNumber);
    auto* o_tol = app.add_option("--tol", tol, "indicator and guard tolerance (relative)");
    app.add_option("--out", opt.out, "write the report to a file instead of stdout");

    std::string scenario_path, demo_name;
    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    auto* demo = app.add_subcommand("demo", "run the demo scenario of a catalog entry");
    demo->add_option("name", demo_name, "rest_plane_wave | degenerate_example | lset")->required();
    auto* selftest = app.add_subcommand("selftest", "run every property suite");
    for (auto* sub : {run, demo, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*o_seed) opt.seed = seed;
    if (*o_samples) opt.samples = samples;
    if (*o_tol) opt.tol = tol;

    try {
        if (*run) {
            std::ifstream in(scenario_path, std::ios::binary);
            if (!in) return input_error("cannot read '" + scenario_path + "'", opt);
            std::stringstream buf;
            buf << in.rdbuf();
            ojson j;
            try {
                j = ojson::parse(buf.str());
            } catch (const nlohmann::json::parse_error& e) {
                return input_error(scenario_path + ": not valid JSON at byte " + std::to_string(e.byte), opt);
            }
            return run_scenario_json(j, opt);
        }
        if (*demo) return run_scenario_json(diracinv::demo_scenario(demo_name), opt);
        diracinv::SelftestOptions so;
        if (opt.seed) so.seed = *opt.seed;
        if (opt.samples) so.samples = *opt.samples;
        const auto rep = diracinv::run_selftest(so);
        ojson doc = rep.to_json();
        doc["version"] = diracinv::kVersion;
        return finish(doc, rep.passed() ? 0 : 1, opt);
    } catch (const Error& e) {
        return input_error(e.what(), opt);
    } catch (const std::exception& e) {
        return input_error(std::string("internal error: ") + e.what(), opt);
    }
}

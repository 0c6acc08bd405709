// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any failed.

#include "diracinv/diracinv.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#ifndef DIRACINV_CLI
#error "DIRACINV_CLI must name the command-line binary"
#endif

namespace {

using namespace diracinv;

struct Outcome {
    bool ok;
    std::string note;
};

Outcome from_report(const Report& r)
{
    if (r.passed()) return {true, std::to_string(r.check_count()) + " checks"};
    std::string note;
    for (const auto& f : r.failures()) note += f + "; ";
    return {false, note};
}

struct Captured {
    std::string out;
    int status;
};

Captured capture(const std::string& cmd)
{
    Captured c{{}, -1};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return c;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
    c.status = pclose(pipe);
    return c;
}

Outcome determinism()
{
    const std::string cmd = std::string("\"") + DIRACINV_CLI + "\" selftest --seed 42";
    const auto a = capture(cmd), b = capture(cmd);
    if (a.status != 0 || b.status != 0)
        return {false, "selftest exited with status " + std::to_string(a.status) + "/" + std::to_string(b.status)};
    if (a.out.empty() || a.out != b.out) return {false, "reports differ"};
    return {true, std::to_string(a.out.size()) + " identical bytes"};
}

}  // namespace

int main()
{
    const std::uint64_t seed = 42;
    SampleDomain d;
    d.seed = seed;
    d.count = 100;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"gamma structure", [] { return from_report(structure_selftest()); }},
        {"degenerate example residual and indicator", [&] { return from_report(suite_degenerate_residual(d)); }},
        {"potential family residuals", [&] { return from_report(suite_family(d)); }},
        {"Theta real with unit norm", [&] { return from_report(suite_theta(d)); }},
        {"gauge-inequivalent family member", [&] { return from_report(suite_gauge_inequivalence(d)); }},
        {"inversion round trip", [&] { return from_report(suite_inversion(seed, d)); }},
        {"mass uniqueness", [&] { return from_report(suite_mass(seed, d)); }},
        {"light-like gap", [&] { return from_report(suite_lightlike(seed, d)); }},
        {"lemma suites", [&] { return from_report(suite_lemmas(seed, 1000)); }},
        {"parser and differentiator", [&] { return from_report(suite_exprlang(seed, 100)); }},
        {"selftest determinism", determinism},
    };

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o{false, ""};
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::cout << "criterion " << (k + 1) << " [" << (o.ok ? "PASS" : "FAIL") << "] " << criteria[k].first << " ("
                  << o.note << ")\n";
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}

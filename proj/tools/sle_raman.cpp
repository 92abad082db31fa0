// sle_raman — command-line front end: FSRS / TASP sweeps, population traces,
// and the built-in validation battery.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sleraman/sleraman.hpp"

namespace {

using namespace sleraman;

std::vector<double> resolve_delays(const Scenario& s, const std::string& delayOverride) {
    if (!delayOverride.empty()) return parse_delay_spec(delayOverride);
    if (!s.delaySpecs.empty()) return parse_delay_specs(s.delaySpecs);
    throw ValidationError("no delays given: pass --delays or set them in the scenario");
}

std::unique_ptr<std::ofstream> open_sink(const std::string& path, std::ostream*& out) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw IoError("cannot open output file '" + path + "'");
    out = file.get();
    return file;
}

int run_fsrs(const std::string& scenarioArg, const std::string& delayArg,
             const std::string& outPath, const std::string& pathArg, bool withStatic) {
    const Scenario scenario = load_scenario(scenarioArg);
    const SLEModel model = scenario_to_model(scenario);
    const AxisPlan plan = make_axis_plan(scenario);
    const std::vector<double> delays = resolve_delays(scenario, delayArg);

    EvalPath path = scenario.path;
    if (pathArg == "analytic") path = EvalPath::Analytic;
    else if (pathArg == "quadrature") path = EvalPath::Quadrature;
    else if (pathArg == "time-domain") path = EvalPath::TimeDomain;
    else if (!pathArg.empty()) throw ValidationError("unknown --path '" + pathArg + "'");

    std::vector<Spectrum> spectra;
    if (path == EvalPath::TimeDomain) {
        spectra = fsrs_time_domain_spectra(model, plan.internalGrid, delays);
        for (auto& s : spectra) s.label = scenario.name;
    } else {
        spectra = fsrs_spectra(model, plan.internalGrid, delays, path, 0, scenario.name,
                               scenario.quadratureTol);
    }
    for (auto& s : spectra) s = map_axis_back(plan, std::move(s));

    std::ostream* out = nullptr;
    auto file = open_sink(outPath, out);
    if (withStatic) {
        std::vector<Spectrum> staticSpectra;
        staticSpectra.reserve(delays.size());
        for (double t : delays) {
            Spectrum st = static_limit_spectrum(model, plan.internalGrid, t);
            st.label = scenario.name;
            staticSpectra.push_back(map_axis_back(plan, std::move(st)));
        }
        emit_csv_with_static(spectra, staticSpectra, *out);
    } else {
        emit_csv(spectra, *out);
    }
    return 0;
}

int run_tasp(const std::string& scenarioArg, const std::string& delayArg,
             const std::string& outPath) {
    const Scenario scenario = load_scenario(scenarioArg);
    const SLEModel model = scenario_to_model(scenario);
    const AxisPlan plan = make_axis_plan(scenario);
    const std::vector<double> delays = resolve_delays(scenario, delayArg);
    std::vector<Spectrum> spectra;
    spectra.reserve(delays.size());
    for (double t : delays) {
        Spectrum sp = tasp_spectrum(model, plan.internalGrid, t);
        sp.label = scenario.name;
        spectra.push_back(map_axis_back(plan, std::move(sp)));
    }
    std::ostream* out = nullptr;
    auto file = open_sink(outPath, out);
    emit_csv(spectra, *out);
    return 0;
}

int run_populations(const std::string& scenarioArg, const std::string& timesArg,
                    const std::string& outPath) {
    const Scenario scenario = load_scenario(scenarioArg);
    const SLEModel model = scenario_to_model(scenario);
    if (timesArg.empty()) throw ValidationError("populations: --times is required");
    const std::vector<double> times = parse_delay_spec(timesArg);
    RealVector t(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) t(i) = times[i];
    const auto traj = propagate(model.bath, model.p0, t);
    std::ostream* out = nullptr;
    auto file = open_sink(outPath, out);
    emit_populations_csv(traj, *out);
    return 0;
}

int run_validate(bool quick) {
    const auto results = run_validation(quick);
    bool allPass = true;
    std::printf("%-36s %-6s %-9s %s\n", "check", "result", "time", "detail");
    for (const auto& r : results) {
        allPass = allPass && r.pass;
        std::printf("%-36s %-6s %8.2fs %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                    r.detail.c_str());
    }
    std::printf("%s\n", allPass ? "all checks passed" : "some checks FAILED");
    return allPass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic-Liouville simulator for femtosecond stimulated Raman and "
                 "shaped-pulse transient absorption spectra"};
    app.require_subcommand(1);

    std::string scenarioArg, delayArg, timesArg, outPath = "-", pathArg;
    bool withStatic = false, quick = false;

    auto* fsrs = app.add_subcommand("fsrs", "compute FSRS spectra over a delay schedule");
    fsrs->add_option("--scenario", scenarioArg, "scenario file, inline JSON, or preset name")
        ->required();
    fsrs->add_option("--delays", delayArg, "delay spec, e.g. 2fs,500fs:10ps:500fs");
    fsrs->add_option("--out", outPath, "output CSV path ('-' = stdout)");
    fsrs->add_option("--path", pathArg, "analytic | quadrature | time-domain");
    fsrs->add_flag("--static-limit", withStatic, "add static-average columns side by side");

    auto* tasp = app.add_subcommand("tasp", "compute TASP spectra over a delay schedule");
    tasp->add_option("--scenario", scenarioArg, "scenario file, inline JSON, or preset name")
        ->required();
    tasp->add_option("--delays", delayArg, "delay spec");
    tasp->add_option("--out", outPath, "output CSV path ('-' = stdout)");

    auto* pops = app.add_subcommand("populations", "bath population trace");
    pops->add_option("--scenario", scenarioArg, "scenario file, inline JSON, or preset name")
        ->required();
    pops->add_option("--times", timesArg, "time spec, e.g. 0:20ps:100fs")->required();
    pops->add_option("--out", outPath, "output CSV path ('-' = stdout)");

    auto* val = app.add_subcommand("validate", "run the internal consistency battery");
    val->add_flag("--quick", quick, "reduced grids (finishes well under a minute)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // prints the message and usage hint; collapse CLI11's error codes to 1
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (fsrs->parsed()) return run_fsrs(scenarioArg, delayArg, outPath, pathArg, withStatic);
        if (tasp->parsed()) return run_tasp(scenarioArg, delayArg, outPath);
        if (pops->parsed()) return run_populations(scenarioArg, timesArg, outPath);
        if (val->parsed()) return run_validate(quick);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericsError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

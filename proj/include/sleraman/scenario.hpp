// scenario.hpp — configuration schema, built-in parameter presets, and CSV
// emission. Files use cm^-1 / fs; everything internal is rad/s and seconds.
// Rate-dimensioned fields accept either a *_cm or a *_per_s spelling (exactly
// one); presets carry their rates in s^-1 so tabulated values survive exactly.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sleraman/errors.hpp"
#include "sleraman/signals.hpp"
#include "sleraman/sle_core.hpp"
#include "sleraman/units.hpp"

namespace sleraman {

struct UnitValue {
    double value = 0.0;
    bool perSecond = false; // false: cm^-1, true: rad/s (angular)

    double toRad() const { return perSecond ? value : units::cm_to_rad(value); }
    static UnitValue cm(double v) { return {v, false}; }
    static UnitValue per_s(double v) { return {v, true}; }
};

struct Scenario {
    std::string name = "custom";

    int bathStates = 10;
    double k1 = 0.0;     // s^-1
    double kLast = 0.0;  // s^-1
    double backwardRatio = 0.1;
    int initialState = 1;

    struct Mode {
        UnitValue omega1;
        UnitValue delta;
        UnitValue gamma;
        double alpha = 1.0;
        double mu = 1.0;
    };
    std::vector<Mode> modes;

    double probeSigma_fs = 20.0;
    double probeCenterOffset_cm = -1000.0;
    std::string pumpShiftConvention = "stokes-positive";

    double shiftMin_cm = 600.0;
    double shiftMax_cm = 1800.0;
    double step_cm = 1.0;

    std::vector<std::string> delaySpecs;
    EvalPath path = EvalPath::Analytic;
    double quadratureTol = 1e-9;

    void validate() const {
        if (bathStates < 1) throw ValidationError("bath.N: need at least one state");
        if (bathStates > 1 && (!(k1 > 0.0) || !(kLast > 0.0)))
            throw ValidationError("bath.k1/k_last: rates must be positive");
        if (backwardRatio < 0.0) throw ValidationError("bath.backwardRatio: must be nonnegative");
        if (initialState < 1 || initialState > bathStates)
            throw ValidationError("bath.initialState: out of range");
        if (modes.empty()) throw ValidationError("modes: at least one mode required");
        for (const auto& m : modes) {
            if (!(m.omega1.toRad() > 0.0)) throw ValidationError("modes.omega1: must be positive");
            if (!(m.gamma.toRad() > 0.0)) throw ValidationError("modes.gamma: must be positive");
            if (m.alpha < 0.0 || m.mu < 0.0)
                throw ValidationError("modes.alpha/mu: must be nonnegative");
        }
        if (!(probeSigma_fs > 0.0)) throw ValidationError("pulses.probeSigma_fs: must be positive");
        if (pumpShiftConvention != "stokes-positive" && pumpShiftConvention != "stokes-negative")
            throw ValidationError("pulses.pumpShiftConvention: unknown value");
        if (!(step_cm > 0.0)) throw ValidationError("grid.step_cm: must be positive");
        if (!(shiftMin_cm < shiftMax_cm)) throw ValidationError("grid: shiftMin_cm < shiftMax_cm required");
        if (!(quadratureTol > 0.0)) throw ValidationError("evaluation.tolerances.quadrature: must be positive");
    }
};

// Delay mini-grammar: comma list of values or start:stop:step spans, with fs/ps
// suffixes (bare numbers read as fs). Returns seconds.
inline std::vector<double> parse_delay_spec(const std::string& spec) {
    auto parseOne = [](const std::string& tok) -> double {
        if (tok.empty()) throw ParseError("delay spec: empty token");
        double scale = 1e-15;
        std::string num = tok;
        if (tok.size() > 2 && tok.substr(tok.size() - 2) == "fs") {
            num = tok.substr(0, tok.size() - 2);
        } else if (tok.size() > 2 && tok.substr(tok.size() - 2) == "ps") {
            scale = 1e-12;
            num = tok.substr(0, tok.size() - 2);
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(num, &used);
        } catch (const std::exception&) {
            throw ParseError("delay spec: cannot parse '" + tok + "'");
        }
        if (used != num.size()) throw ParseError("delay spec: trailing junk in '" + tok + "'");
        return v * scale;
    };

    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto firstColon = item.find(':');
        if (firstColon == std::string::npos) {
            out.push_back(parseOne(item));
            continue;
        }
        const auto secondColon = item.find(':', firstColon + 1);
        if (secondColon == std::string::npos)
            throw ParseError("delay spec: span needs start:stop:step in '" + item + "'");
        const double start = parseOne(item.substr(0, firstColon));
        const double stop = parseOne(item.substr(firstColon + 1, secondColon - firstColon - 1));
        const double step = parseOne(item.substr(secondColon + 1));
        if (!(step > 0.0)) throw ParseError("delay spec: step must be positive in '" + item + "'");
        if (stop < start) throw ParseError("delay spec: stop before start in '" + item + "'");
        for (double t = start; t <= stop + 0.5 * step; t += step) out.push_back(t);
    }
    return out;
}

inline std::vector<double> parse_delay_specs(const std::vector<std::string>& specs) {
    std::vector<double> out;
    for (const auto& s : specs) {
        const auto part = parse_delay_spec(s);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

namespace detail {

using json = nlohmann::ordered_json;

inline void reject_unknown(const json& obj, const std::vector<std::string>& known,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool found = false;
        for (const auto& k : known)
            if (it.key() == k) { found = true; break; }
        if (!found) throw ValidationError(where + ": unknown key '" + it.key() + "'");
    }
}

inline double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number()) throw ValidationError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

inline UnitValue read_unit_value(const json& obj, const std::string& stem,
                                 const std::string& where) {
    const std::string cmKey = stem + "_cm";
    const std::string sKey = stem + "_per_s";
    const bool hasCm = obj.contains(cmKey);
    const bool hasS = obj.contains(sKey);
    if (hasCm == hasS)
        throw ValidationError(where + ": exactly one of " + cmKey + " / " + sKey + " required");
    if (hasCm) return UnitValue::cm(require_number(obj, cmKey, where));
    return UnitValue::per_s(require_number(obj, sKey, where));
}

} // namespace detail

inline Scenario preset_regime_i() {
    Scenario s;
    s.name = "regime-I";
    s.bathStates = 10;
    s.k1 = 1.00e12;
    s.kLast = 0.667e12;
    s.backwardRatio = 0.1;
    s.initialState = 1;
    const UnitValue d1 = UnitValue::per_s(3.76e12);
    const UnitValue d2 = UnitValue::per_s(7.51e12);
    const UnitValue g = UnitValue::per_s(1.88e12);
    s.modes = {{UnitValue::cm(800.0), d1, g, 1.0, 1.0},
               {UnitValue::cm(1290.0), d1, g, 1.0, 1.0},
               {UnitValue::cm(1200.0), d2, g, 1.0, 1.0},
               {UnitValue::cm(1500.0), d2, g, 1.0, 1.0}};
    s.probeSigma_fs = 20.0;
    s.probeCenterOffset_cm = -1000.0;
    s.delaySpecs = {"2fs", "50fs:1ps:50fs", "500fs:10ps:500fs", "11ps:15ps:1ps"};
    return s;
}

inline Scenario preset_regime_ii() {
    Scenario s = preset_regime_i();
    s.name = "regime-II";
    s.kLast = 0.333e12;
    const UnitValue d1 = UnitValue::per_s(0.939e12);
    const UnitValue d2 = UnitValue::per_s(3.76e12);
    s.modes[0].delta = d1;
    s.modes[1].delta = d1;
    s.modes[2].delta = d2;
    s.modes[3].delta = d2;
    s.modes[1].omega1 = UnitValue::cm(1267.5);
    s.probeSigma_fs = 30.0;
    return s;
}

inline Scenario parse_scenario_json(const std::string& text, const std::string& name) {
    detail::json doc;
    try {
        doc = detail::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario parse error at byte ") + std::to_string(e.byte) +
                         ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario: top level must be an object");
    detail::reject_unknown(doc, {"bath", "modes", "pulses", "grid", "delays", "evaluation"},
                           "scenario");

    Scenario s;
    s.name = name;
    if (!doc.contains("bath")) throw ValidationError("scenario: missing 'bath'");
    const auto& bath = doc["bath"];
    detail::reject_unknown(bath, {"N", "k1", "k_last", "backwardRatio", "initialState"}, "bath");
    if (!bath.contains("N") || !bath["N"].is_number_integer())
        throw ValidationError("bath.N: integer required");
    s.bathStates = bath["N"].get<int>();
    if (s.bathStates > 1) {
        s.k1 = detail::require_number(bath, "k1", "bath");
        s.kLast = detail::require_number(bath, "k_last", "bath");
    } else {
        s.k1 = bath.contains("k1") ? bath["k1"].get<double>() : 1.0;
        s.kLast = bath.contains("k_last") ? bath["k_last"].get<double>() : s.k1;
    }
    if (bath.contains("backwardRatio")) s.backwardRatio = bath["backwardRatio"].get<double>();
    if (bath.contains("initialState")) {
        if (!bath["initialState"].is_number_integer())
            throw ValidationError("bath.initialState: integer required");
        s.initialState = bath["initialState"].get<int>();
    }

    if (!doc.contains("modes") || !doc["modes"].is_array() || doc["modes"].empty())
        throw ValidationError("scenario: 'modes' must be a nonempty array");
    for (const auto& jm : doc["modes"]) {
        detail::reject_unknown(jm,
                               {"omega1_cm", "omega1_per_s", "delta_cm", "delta_per_s", "gamma_cm",
                                "gamma_per_s", "alpha", "mu"},
                               "modes[]");
        Scenario::Mode m;
        m.omega1 = detail::read_unit_value(jm, "omega1", "modes[]");
        m.delta = detail::read_unit_value(jm, "delta", "modes[]");
        m.gamma = detail::read_unit_value(jm, "gamma", "modes[]");
        if (jm.contains("alpha")) m.alpha = jm["alpha"].get<double>();
        if (jm.contains("mu")) m.mu = jm["mu"].get<double>();
        s.modes.push_back(m);
    }

    if (doc.contains("pulses")) {
        const auto& p = doc["pulses"];
        detail::reject_unknown(p, {"probeSigma_fs", "probeCenterOffset_cm", "pumpShiftConvention"},
                               "pulses");
        if (p.contains("probeSigma_fs")) s.probeSigma_fs = p["probeSigma_fs"].get<double>();
        if (p.contains("probeCenterOffset_cm"))
            s.probeCenterOffset_cm = p["probeCenterOffset_cm"].get<double>();
        if (p.contains("pumpShiftConvention"))
            s.pumpShiftConvention = p["pumpShiftConvention"].get<std::string>();
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        detail::reject_unknown(g, {"shiftMin_cm", "shiftMax_cm", "step_cm"}, "grid");
        if (g.contains("shiftMin_cm")) s.shiftMin_cm = g["shiftMin_cm"].get<double>();
        if (g.contains("shiftMax_cm")) s.shiftMax_cm = g["shiftMax_cm"].get<double>();
        if (g.contains("step_cm")) s.step_cm = g["step_cm"].get<double>();
    }
    if (doc.contains("delays")) {
        if (!doc["delays"].is_array()) throw ValidationError("delays: expected an array");
        for (const auto& d : doc["delays"]) {
            if (d.is_string())
                s.delaySpecs.push_back(d.get<std::string>());
            else if (d.is_number())
                s.delaySpecs.push_back(std::to_string(d.get<double>()) + "fs");
            else
                throw ValidationError("delays: entries must be strings or numbers");
        }
    }
    if (doc.contains("evaluation")) {
        const auto& e = doc["evaluation"];
        detail::reject_unknown(e, {"path", "tolerances"}, "evaluation");
        if (e.contains("path")) {
            const std::string p = e["path"].get<std::string>();
            if (p == "analytic")
                s.path = EvalPath::Analytic;
            else if (p == "quadrature")
                s.path = EvalPath::Quadrature;
            else if (p == "time-domain")
                s.path = EvalPath::TimeDomain;
            else
                throw ValidationError("evaluation.path: unknown value '" + p + "'");
        }
        if (e.contains("tolerances")) {
            detail::reject_unknown(e["tolerances"], {"quadrature"}, "evaluation.tolerances");
            if (e["tolerances"].contains("quadrature"))
                s.quadratureTol = e["tolerances"]["quadrature"].get<double>();
        }
    }

    parse_delay_specs(s.delaySpecs); // surface grammar errors at load time
    s.validate();
    return s;
}

// Loads a scenario from a preset name, a file path, or raw JSON text.
inline Scenario load_scenario(const std::string& source) {
    if (source == "regime-I") {
        Scenario s = preset_regime_i();
        s.validate();
        return s;
    }
    if (source == "regime-II") {
        Scenario s = preset_regime_ii();
        s.validate();
        return s;
    }
    if (!source.empty() && source.front() == '{') return parse_scenario_json(source, "inline");
    std::ifstream in(source);
    if (!in) throw ParseError("scenario: cannot open '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str(), source);
}

inline std::string emit_scenario(const Scenario& s) {
    detail::json doc;
    doc["bath"] = {{"N", s.bathStates},
                   {"k1", s.k1},
                   {"k_last", s.kLast},
                   {"backwardRatio", s.backwardRatio},
                   {"initialState", s.initialState}};
    doc["modes"] = detail::json::array();
    for (const auto& m : s.modes) {
        detail::json jm;
        jm[m.omega1.perSecond ? "omega1_per_s" : "omega1_cm"] = m.omega1.value;
        jm[m.delta.perSecond ? "delta_per_s" : "delta_cm"] = m.delta.value;
        jm[m.gamma.perSecond ? "gamma_per_s" : "gamma_cm"] = m.gamma.value;
        jm["alpha"] = m.alpha;
        jm["mu"] = m.mu;
        doc["modes"].push_back(jm);
    }
    doc["pulses"] = {{"probeSigma_fs", s.probeSigma_fs},
                     {"probeCenterOffset_cm", s.probeCenterOffset_cm},
                     {"pumpShiftConvention", s.pumpShiftConvention}};
    doc["grid"] = {{"shiftMin_cm", s.shiftMin_cm},
                   {"shiftMax_cm", s.shiftMax_cm},
                   {"step_cm", s.step_cm}};
    doc["delays"] = s.delaySpecs;
    doc["evaluation"] = {{"path", to_string(s.path)},
                         {"tolerances", {{"quadrature", s.quadratureTol}}}};
    return doc.dump(2) + "\n";
}

inline SLEModel scenario_to_model(const Scenario& s) {
    s.validate();
    RateMatrix bath = s.bathStates == 1 ? single_state_bath()
                                        : build_chain(s.bathStates, s.k1, s.kLast, s.backwardRatio);
    std::vector<VibrationalMode> modes;
    for (const auto& m : s.modes) {
        VibrationalMode vm;
        vm.omega1 = m.omega1.toRad();
        vm.delta = m.delta.toRad();
        vm.gamma = m.gamma.toRad();
        vm.alpha = m.alpha;
        vm.mu = m.mu;
        modes.push_back(vm);
    }
    PulseSet pulses;
    pulses.probeSigma = units::fs_to_s(s.probeSigma_fs);
    pulses.probeCenterOffset = units::cm_to_rad(s.probeCenterOffset_cm);
    return make_model(std::move(bath), std::move(modes), pulses, s.initialState);
}

inline std::vector<double> scenario_grid(const Scenario& s) {
    std::vector<double> grid;
    // largest count that stays inside [min, max] (tolerating rounding on the edge)
    const long n = static_cast<long>(
        std::floor((s.shiftMax_cm - s.shiftMin_cm) / s.step_cm + 1e-9));
    grid.reserve(n + 1);
    for (long i = 0; i <= n; ++i) grid.push_back(s.shiftMin_cm + i * s.step_cm);
    return grid;
}

// Reported-axis handling for the pumpShiftConvention flag. Internally all
// signals live on the positive Stokes axis; stokes-negative reporting mirrors
// the abscissa.
struct AxisPlan {
    std::vector<double> reportGrid;
    std::vector<double> internalGrid;
    bool mirrored = false;
};

inline AxisPlan make_axis_plan(const Scenario& s) {
    AxisPlan plan;
    plan.reportGrid = scenario_grid(s);
    if (s.pumpShiftConvention == "stokes-negative") {
        plan.mirrored = true;
        if (plan.reportGrid.back() > 0.0)
            throw ValidationError("grid: stokes-negative convention needs a negative shift axis");
        plan.internalGrid.reserve(plan.reportGrid.size());
        for (auto it = plan.reportGrid.rbegin(); it != plan.reportGrid.rend(); ++it)
            plan.internalGrid.push_back(-*it);
    } else {
        plan.internalGrid = plan.reportGrid;
    }
    return plan;
}

inline Spectrum map_axis_back(const AxisPlan& plan, Spectrum spec) {
    if (plan.mirrored) {
        std::vector<double> values(spec.values.rbegin(), spec.values.rend());
        spec.values = std::move(values);
    }
    spec.shiftGrid = plan.reportGrid;
    spec.validate();
    return spec;
}

namespace detail {

inline void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    out += buf;
}

} // namespace detail

// CSV rows in (delay-major, shift-minor) order; 9 significant digits; LF only.
inline std::size_t emit_csv(const std::vector<Spectrum>& spectra, std::ostream& sink) {
    if (spectra.empty()) throw IoError("emit_csv: empty spectrum list");
    for (const auto& s : spectra) {
        s.validate();
        if (s.shiftGrid != spectra.front().shiftGrid)
            throw IoError("emit_csv: inconsistent grids");
    }
    std::string out = "raman_shift_cm,delay_fs,intensity,path\n";
    for (const auto& s : spectra) {
        const double delayFs = units::s_to_fs(s.delay);
        for (std::size_t i = 0; i < s.shiftGrid.size(); ++i) {
            detail::append_number(out, s.shiftGrid[i]);
            out += ',';
            detail::append_number(out, delayFs);
            out += ',';
            detail::append_number(out, s.values[i]);
            out += ',';
            out += to_string(s.path);
            out += '\n';
        }
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) throw IoError("emit_csv: write failed");
    return out.size();
}

// Side-by-side variant with a static-limit column.
inline std::size_t emit_csv_with_static(const std::vector<Spectrum>& spectra,
                                        const std::vector<Spectrum>& staticSpectra,
                                        std::ostream& sink) {
    if (spectra.empty() || spectra.size() != staticSpectra.size())
        throw IoError("emit_csv_with_static: spectrum list mismatch");
    std::string out = "raman_shift_cm,delay_fs,intensity,static_intensity,path\n";
    for (std::size_t k = 0; k < spectra.size(); ++k) {
        const auto& s = spectra[k];
        const auto& st = staticSpectra[k];
        if (s.shiftGrid != st.shiftGrid || s.delay != st.delay)
            throw IoError("emit_csv_with_static: grid/delay mismatch");
        const double delayFs = units::s_to_fs(s.delay);
        for (std::size_t i = 0; i < s.shiftGrid.size(); ++i) {
            detail::append_number(out, s.shiftGrid[i]);
            out += ',';
            detail::append_number(out, delayFs);
            out += ',';
            detail::append_number(out, s.values[i]);
            out += ',';
            detail::append_number(out, st.values[i]);
            out += ',';
            out += to_string(s.path);
            out += '\n';
        }
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) throw IoError("emit_csv_with_static: write failed");
    return out.size();
}

inline std::size_t emit_populations_csv(const PopulationTrajectory& traj, std::ostream& sink) {
    std::string out = "time_fs";
    for (Eigen::Index s = 0; s < traj.populations.rows(); ++s)
        out += ",rho_" + std::to_string(s + 1);
    out += '\n';
    for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
        detail::append_number(out, units::s_to_fs(traj.times(i)));
        for (Eigen::Index s = 0; s < traj.populations.rows(); ++s) {
            out += ',';
            detail::append_number(out, traj.populations(s, i));
        }
        out += '\n';
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) throw IoError("emit_populations_csv: write failed");
    return out.size();
}

} // namespace sleraman

#include "openslice/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <optional>

#include "openslice/bell.hpp"
#include "openslice/errors.hpp"
#include "openslice/quantum.hpp"
#include "openslice/random.hpp"
#include "openslice/report.hpp"
#include "openslice/svg.hpp"

namespace openslice::commands {

namespace {

using nlohmann::json;
using spacetime::FourVector;
using spacetime::SpacelikeSlice;

constexpr double kMinLinearResidual = 0.5;

json to_json(const FourVector& v) { return json::array({v.t, v.x, v.y, v.z}); }

json to_json(const bell::Vec3& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const quantum::TwoSpinState& state) {
    json out = json::array();
    for (const quantum::Amplitude& a : state.amplitudes()) {
        out.push_back(json::array({a.real(), a.imag()}));
    }
    return out;
}

json to_json(const classical::LiouvilleSupport& support) {
    json out = json::array();
    for (const classical::SupportPoint& p : support.points()) {
        out.push_back({{"e1", p.e1}, {"e2", p.e2}, {"weight", p.weight}});
    }
    return out;
}

json to_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    }
    return out;
}

quantum::Observer observer_role(const std::string& name) {
    if (name == "alice") return quantum::Observer::Alice;
    if (name == "bob") return quantum::Observer::Bob;
    return quantum::Observer::Magician;
}

/// First configured slice of the named observer lying after its own event
/// and before the other observer's event.
config::ResolvedSlice select_sandwich_slice(const config::ScenarioConfig& scenario,
                                            const std::string& name, const FourVector& own_event,
                                            const FourVector& other_event) {
    bool has_slices = false;
    for (const config::ResolvedSlice& rs : config::resolved_slices(scenario)) {
        if (rs.observer != name) continue;
        has_slices = true;
        const SpacelikeSlice slice = rs.slice();
        if (spacetime::before_slice(slice, own_event) &&
            !spacetime::before_slice(slice, other_event)) {
            return rs;
        }
    }
    if (!has_slices) {
        throw InvalidScenarioError("scenario configures no slices for observer \"" + name + "\"");
    }
    throw InvalidScenarioError("no configured slice of \"" + name +
                               "\" lies after that observer's own event and before the other "
                               "observer's event");
}

void write_json(const std::filesystem::path& path, const json& value) {
    report::write_text_file(path, value.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// figures

struct Window {
    double half_size;

    double px(double x, double canvas, double margin) const {
        return margin + (x + half_size) / (2.0 * half_size) * (canvas - 2.0 * margin);
    }
    double py(double t, double canvas, double margin) const {
        return canvas - margin - (t + half_size) / (2.0 * half_size) * (canvas - 2.0 * margin);
    }
    bool contains(double x, double t) const {
        return std::abs(x) <= half_size && std::abs(t) <= half_size;
    }
};

/// Liang-Barsky clip of the segment (x1,t1)-(x2,t2) to the square window.
std::optional<std::array<double, 4>> clip_segment(double x1, double t1, double x2, double t2,
                                                  double half) {
    const double dx = x2 - x1;
    const double dt = t2 - t1;
    double u0 = 0.0;
    double u1 = 1.0;
    const std::array<std::pair<double, double>, 4> tests{{{-dx, x1 + half},
                                                          {dx, half - x1},
                                                          {-dt, t1 + half},
                                                          {dt, half - t1}}};
    for (const auto& [p, q] : tests) {
        if (p == 0.0) {
            if (q < 0.0) return std::nullopt;
            continue;
        }
        const double r = q / p;
        if (p < 0.0) {
            u0 = std::max(u0, r);
        } else {
            u1 = std::min(u1, r);
        }
        if (u0 > u1) return std::nullopt;
    }
    return std::array<double, 4>{x1 + u0 * dx, t1 + u0 * dt, x1 + u1 * dx, t1 + u1 * dt};
}

struct SpacetimeFigure {
    std::string svg_text;
    json data;
};

SpacetimeFigure make_spacetime_figure(const config::ScenarioConfig& scenario) {
    const double canvas = 640.0;
    const double margin = 60.0;

    const classical::BouncerParams& params = scenario.classical_params;
    const std::array<std::pair<std::string, FourVector>, 4> events{{
        {"A", scenario.quantum_event_a},
        {"B", scenario.quantum_event_b},
        {"K1", params.kick_event_1},
        {"K2", params.kick_event_2}}};

    double extent = 1.0;
    for (const auto& [label, e] : events) {
        extent = std::max({extent, std::abs(e.t), std::abs(e.x)});
    }
    for (const config::ResolvedSlice& rs : config::resolved_slices(scenario)) {
        extent = std::max(extent, std::abs(rs.tau));
    }
    const Window window{1.8 * extent};

    svg::Document doc(canvas, canvas);
    auto px = [&](double x) { return window.px(x, canvas, margin); };
    auto py = [&](double t) { return window.py(t, canvas, margin); };
    auto draw_world_line = [&](double x1, double t1, double x2, double t2,
                               const std::string& stroke, double width,
                               const std::string& dash) {
        if (auto seg = clip_segment(x1, t1, x2, t2, window.half_size)) {
            doc.line(px((*seg)[0]), py((*seg)[1]), px((*seg)[2]), py((*seg)[3]), stroke, width,
                     dash);
        }
    };

    // axes
    draw_world_line(-window.half_size, 0.0, window.half_size, 0.0, "#bbbbbb", 1.0, "");
    draw_world_line(0.0, -window.half_size, 0.0, window.half_size, "#bbbbbb", 1.0, "");
    doc.text(canvas - margin + 8.0, py(0.0) + 4.0, "x");
    doc.text(px(0.0) - 4.0, margin - 8.0, "t");

    json data;
    data["kind"] = "worldline-diagram";
    data["window"] = {{"half_size", window.half_size}};
    data["canvas"] = {{"width", canvas}, {"height", canvas}, {"margin", margin}};

    // light cones, one per distinct (t, x) apex
    const double reach = 4.0 * window.half_size;
    std::vector<std::pair<double, double>> apexes;
    for (const auto& [label, e] : events) {
        if (std::find(apexes.begin(), apexes.end(), std::pair{e.t, e.x}) != apexes.end()) {
            continue;
        }
        apexes.emplace_back(e.t, e.x);
        draw_world_line(e.x - reach, e.t - reach, e.x + reach, e.t + reach, "#e0b040", 0.8, "4 3");
        draw_world_line(e.x - reach, e.t + reach, e.x + reach, e.t - reach, "#e0b040", 0.8, "4 3");
    }

    // observer world lines through their anchors
    data["observers"] = json::array();
    for (const config::ObserverDef& o : scenario.observers) {
        double anchor_x = 0.0;
        if (observer_role(o.name) == quantum::Observer::Alice) {
            anchor_x = scenario.quantum_event_a.x;
        } else if (observer_role(o.name) == quantum::Observer::Bob) {
            anchor_x = scenario.quantum_event_b.x;
        }
        const double v = std::tanh(o.rapidity);
        const double span = window.half_size;
        draw_world_line(anchor_x - v * span, -span, anchor_x + v * span, span, "#3060c0", 1.5, "");
        if (window.contains(anchor_x, 0.0)) {
            doc.text(px(anchor_x) + 5.0, py(0.0) - 6.0, o.name, 11.0);
        }
        data["observers"].push_back({{"name", o.name},
                                     {"rapidity", o.rapidity},
                                     {"velocity", v},
                                     {"anchor_x", anchor_x}});
    }

    // slice lines t = x tanh(chi) + tau / cosh(chi)
    data["slices"] = json::array();
    std::size_t slice_index = 0;
    for (const config::ResolvedSlice& rs : config::resolved_slices(scenario)) {
        const double slope = std::tanh(rs.rapidity);
        const double intercept = rs.tau / std::cosh(rs.rapidity);
        const double x0 = -window.half_size;
        const double x1 = window.half_size;
        draw_world_line(x0, slope * x0 + intercept, x1, slope * x1 + intercept, "#40a060", 1.0,
                        "8 4");
        const double label_t = slope * x1 + intercept;
        if (std::abs(label_t) <= window.half_size) {
            doc.text(canvas - 4.0, py(label_t) - 3.0,
                     rs.observer + " tau=" + report::format_sig(rs.tau), 10.0, "end");
        }
        data["slices"].push_back({{"index", slice_index++},
                                  {"observer", rs.observer},
                                  {"tau", rs.tau},
                                  {"chi", rs.rapidity},
                                  {"slope", slope},
                                  {"intercept", intercept}});
    }

    // pre-kick bouncer world lines
    data["bouncers"] = json::array();
    for (int particle : {1, 2}) {
        const FourVector& kick = particle == 1 ? params.kick_event_1 : params.kick_event_2;
        const double t_start = -window.half_size;
        const double t_stop = std::min(kick.t - 1e-9 * std::max(1.0, std::abs(kick.t)),
                                       window.half_size);
        json points = json::array();
        if (t_stop > t_start) {
            const int n_samples = 257;
            std::vector<std::pair<double, double>> polyline;
            polyline.reserve(n_samples);
            for (int i = 0; i < n_samples; ++i) {
                const double t = t_start + (t_stop - t_start) * i / (n_samples - 1);
                const double x = classical::bouncer_position(params, particle, t);
                polyline.emplace_back(px(x), py(t));
                points.push_back(json::array({t, x}));
            }
            doc.polyline(polyline, "#c05050", 1.2);
        }
        data["bouncers"].push_back(
            {{"particle", particle}, {"kick_time", kick.t}, {"points", points}});
    }

    // events last, on top of everything else
    data["events"] = json::array();
    for (const auto& [label, e] : events) {
        if (window.contains(e.x, e.t)) {
            const bool kick_marker = label[0] == 'K';
            doc.circle(px(e.x), py(e.t), kick_marker ? 3.5 : 5.0,
                       kick_marker ? "#803030" : "#202020",
                       label + " = (" + report::format_sig(e.t) + ", " +
                           report::format_sig(e.x) + ")");
            doc.text(px(e.x) + 7.0, py(e.t) + (kick_marker ? 14.0 : -8.0), label, 11.0);
        }
        data["events"].push_back(
            {{"label", label}, {"t", e.t}, {"x", e.x}, {"y", e.y}, {"z", e.z}});
    }

    return {doc.str(), std::move(data)};
}

struct SupportFigure {
    std::string svg_text;
    json data;
};

SupportFigure make_support_figure(const config::ScenarioConfig& scenario,
                                  const config::ResolvedSlice& rs, std::size_t index,
                                  bool boosted) {
    const double canvas = 480.0;
    const double margin = 70.0;
    const classical::BouncerParams& params = scenario.classical_params;
    const classical::LiouvilleSupport support =
        boosted ? classical::boosted_support_on_slice(params, rs.slice(), {})
                : classical::support_on_slice(params, rs.slice(), {});

    const double e_minus = classical::kicked_energy(params, -1);
    const double e_zero = classical::rest_energy(params);
    const double e_plus = classical::kicked_energy(params, +1);

    double lo = std::min({e_minus, e_zero, e_plus});
    double hi = std::max({e_minus, e_zero, e_plus});
    for (const classical::SupportPoint& p : support.points()) {
        lo = std::min({lo, p.e1, p.e2});
        hi = std::max({hi, p.e1, p.e2});
    }
    const double pad = std::max(0.5, 0.15 * (hi - lo));
    lo -= pad;
    hi += pad;

    auto to_px = [&](double e) { return margin + (e - lo) / (hi - lo) * (canvas - 2.0 * margin); };
    auto to_py = [&](double e) {
        return canvas - margin - (e - lo) / (hi - lo) * (canvas - 2.0 * margin);
    };

    svg::Document doc(canvas, canvas);
    // frame
    doc.line(margin, canvas - margin, canvas - margin, canvas - margin, "#303030", 1.0);
    doc.line(margin, canvas - margin, margin, margin, "#303030", 1.0);
    doc.text(canvas - margin + 6.0, canvas - margin + 4.0, "E1", 12.0);
    doc.text(margin - 24.0, margin - 8.0, "E2", 12.0);

    // reference energies as dotted guides on both axes
    const std::array<std::pair<const char*, double>, 3> guides{{
        {"E-", e_minus}, {"E0", e_zero}, {"E+", e_plus}}};
    for (const auto& [label, e] : guides) {
        if (e < lo || e > hi) continue;
        doc.line(to_px(e), canvas - margin, to_px(e), margin, "#cccccc", 0.6, "2 3");
        doc.line(margin, to_py(e), canvas - margin, to_py(e), "#cccccc", 0.6, "2 3");
        doc.text(to_px(e) - 10.0, canvas - margin + 16.0, report::format_sig(e), 9.0);
        doc.text(margin - 4.0, to_py(e) + 3.0, report::format_sig(e), 9.0, "end");
    }

    for (const classical::SupportPoint& p : support.points()) {
        doc.circle(to_px(p.e1), to_py(p.e2), 4.0 + 6.0 * p.weight,
                   boosted ? "#3060c0" : "#202020",
                   "(" + report::format_sig(p.e1) + ", " + report::format_sig(p.e2) +
                       ") weight " + report::format_sig(p.weight));
    }
    doc.text(margin, margin - 24.0,
             rs.observer + " tau=" + report::format_sig(rs.tau) +
                 " chi=" + report::format_sig(rs.rapidity) +
                 (boosted ? " (boosted-frame energies)" : " (magician-frame energies)"),
             11.0);

    json data;
    data["kind"] = "support-dots";
    data["index"] = index;
    data["observer"] = rs.observer;
    data["tau"] = rs.tau;
    data["chi"] = rs.rapidity;
    data["frame"] = boosted ? "boosted" : "magician";
    data["energies"] = {{"e_minus", e_minus}, {"e0", e_zero}, {"e_plus", e_plus}};
    data["points"] = to_json(support);
    data["axis_range"] = json::array({lo, hi});
    return {doc.str(), std::move(data)};
}

} // namespace

std::vector<FigureArtifact> cmd_figures(const config::ScenarioConfig& scenario,
                                        const CommandOptions& options) {
    config::validate(scenario);
    std::vector<FigureArtifact> artifacts;
    auto emit = [&](const std::string& kind, const std::string& name,
                    const std::string& format, const std::string& content) {
        report::write_text_file(options.output_dir / name, content);
        artifacts.push_back({kind, name, format});
    };

    const SpacetimeFigure spacetime_figure = make_spacetime_figure(scenario);
    emit("worldline-diagram", "spacetime.svg", "SVG", spacetime_figure.svg_text);
    emit("worldline-diagram", "spacetime.json", "JSON", spacetime_figure.data.dump(2) + "\n");

    const std::vector<config::ResolvedSlice> slices = config::resolved_slices(scenario);
    std::vector<json> support_data;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const std::string stem = "support_" + std::to_string(i) + "_" + sanitize(slices[i].observer);
        const SupportFigure figure = make_support_figure(scenario, slices[i], i, false);
        emit("support-dots", stem + ".svg", "SVG", figure.svg_text);
        emit("support-dots", stem + ".json", "JSON", figure.data.dump(2) + "\n");
        support_data.push_back(figure.data);
        if (options.boosted_energies) {
            const SupportFigure boosted = make_support_figure(scenario, slices[i], i, true);
            emit("support-dots", stem + "_boosted.svg", "SVG", boosted.svg_text);
            emit("support-dots", stem + "_boosted.json", "JSON", boosted.data.dump(2) + "\n");
            support_data.push_back(boosted.data);
        }
    }

    if (options.format == OutputFormat::Csv) {
        std::string supports_csv = report::csv_line(
            {"slice_index", "observer", "tau", "chi", "frame", "e1", "e2", "weight"});
        for (const json& data : support_data) {
            for (const json& p : data["points"]) {
                supports_csv += report::csv_line(
                    {std::to_string(data["index"].get<std::size_t>()),
                     data["observer"].get<std::string>(),
                     report::format_sig(data["tau"].get<double>()),
                     report::format_sig(data["chi"].get<double>()),
                     data["frame"].get<std::string>(),
                     report::format_sig(p["e1"].get<double>()),
                     report::format_sig(p["e2"].get<double>()),
                     report::format_sig(p["weight"].get<double>())});
            }
        }
        emit("support-dots", "supports.csv", "CSV", supports_csv);

        std::string worldlines_csv = report::csv_line({"object", "t", "x"});
        for (const json& e : spacetime_figure.data["events"]) {
            worldlines_csv += report::csv_line({"event_" + e["label"].get<std::string>(),
                                                report::format_sig(e["t"].get<double>()),
                                                report::format_sig(e["x"].get<double>())});
        }
        for (const json& b : spacetime_figure.data["bouncers"]) {
            const std::string name = "bouncer_" + std::to_string(b["particle"].get<int>());
            for (const json& point : b["points"]) {
                worldlines_csv += report::csv_line({name,
                                                    report::format_sig(point[0].get<double>()),
                                                    report::format_sig(point[1].get<double>())});
            }
        }
        emit("worldline-diagram", "worldlines.csv", "CSV", worldlines_csv);
    }

    json manifest;
    manifest["artifacts"] = json::array();
    for (const FigureArtifact& a : artifacts) {
        manifest["artifacts"].push_back({{"kind", a.kind}, {"path", a.path}, {"format", a.format}});
    }
    write_json(options.output_dir / "figures_manifest.json", manifest);
    return artifacts;
}

namespace {

json verdict_json(const checker::CheckVerdict& v) {
    json out;
    out["function_exists"] = v.existence.function_exists;
    out["witness"] = v.existence.witness
                         ? json::array({v.existence.witness->first, v.existence.witness->second})
                         : json(nullptr);
    out["best_linear_residual"] = v.fit.residual;
    out["per_row_errors"] = v.fit.per_row_errors;
    return out;
}

json slice_json(const config::ResolvedSlice& rs) {
    return {{"observer", rs.observer}, {"tau", rs.tau}, {"chi", rs.rapidity}};
}

} // namespace

CheckResult cmd_check(const config::ScenarioConfig& scenario, const CommandOptions& options) {
    config::validate(scenario);
    const classical::BouncerParams& params = scenario.classical_params;

    if (spacetime::causal_relation(scenario.quantum_event_a, scenario.quantum_event_b) !=
        spacetime::CausalClass::Spacelike) {
        throw InvalidScenarioError("measurement events must be spacelike-separated");
    }
    if (spacetime::causal_relation(params.kick_event_1, params.kick_event_2) !=
        spacetime::CausalClass::Spacelike) {
        throw InvalidScenarioError("kick events must be spacelike-separated");
    }

    const config::ResolvedSlice alice_q = select_sandwich_slice(
        scenario, "alice", scenario.quantum_event_a, scenario.quantum_event_b);
    const config::ResolvedSlice bob_q = select_sandwich_slice(
        scenario, "bob", scenario.quantum_event_b, scenario.quantum_event_a);
    const quantum::ObserverSlice alice_slice{quantum::Observer::Alice, alice_q.tau,
                                             alice_q.rapidity};
    const quantum::ObserverSlice bob_slice{quantum::Observer::Bob, bob_q.tau, bob_q.rapidity};
    const checker::QuantumTable quantum_table = checker::build_quantum_table(
        scenario.quantum_event_a, scenario.quantum_event_b, alice_slice, bob_slice);
    const checker::CheckVerdict quantum_verdict = checker::verdict(quantum_table);

    const config::ResolvedSlice alice_c =
        select_sandwich_slice(scenario, "alice", params.kick_event_1, params.kick_event_2);
    const config::ResolvedSlice bob_c =
        select_sandwich_slice(scenario, "bob", params.kick_event_2, params.kick_event_1);
    const checker::ClassicalTable classical_table =
        checker::build_classical_table(params, alice_c.slice(), bob_c.slice());
    const checker::CheckVerdict classical_verdict = checker::verdict(classical_table);

    const bool degenerate = std::abs(classical::kicked_energy(params, +1) -
                                     classical::kicked_energy(params, -1)) <= classical::kMergeTol;

    const bool quantum_ok = !quantum_verdict.existence.function_exists &&
                            quantum_verdict.fit.residual > kMinLinearResidual;
    const bool classical_ok =
        degenerate ? classical_verdict.existence.function_exists
                   : (!classical_verdict.existence.function_exists &&
                      classical_verdict.fit.residual > kMinLinearResidual);
    const bool confirmed = quantum_ok && classical_ok;

    json quantum_json = verdict_json(quantum_verdict);
    quantum_json["rows"] = json::array();
    for (const checker::QuantumRow& row : quantum_table.rows) {
        quantum_json["rows"].push_back({{"branch", {{"a", to_json(row.branch.a)},
                                                    {"b", to_json(row.branch.b)}}},
                                        {"left", to_json(row.left)},
                                        {"right", to_json(row.right)}});
    }
    json classical_json = verdict_json(classical_verdict);
    classical_json["rows"] = json::array();
    for (const checker::ClassicalRow& row : classical_table.rows) {
        classical_json["rows"].push_back({{"branch", {{"s1", row.branch.s1},
                                                      {"s2", row.branch.s2}}},
                                          {"left", to_json(row.left)},
                                          {"right", to_json(row.right)}});
    }

    json out;
    out["claims_confirmed"] = confirmed;
    out["classical_degenerate"] = degenerate;
    out["thresholds"] = {{"min_linear_residual", kMinLinearResidual},
                         {"residual_zero", checker::kResidualZeroTol}};
    out["events"] = {{"quantum_a", to_json(scenario.quantum_event_a)},
                     {"quantum_b", to_json(scenario.quantum_event_b)},
                     {"kick_1", to_json(params.kick_event_1)},
                     {"kick_2", to_json(params.kick_event_2)}};
    out["slices"] = {{"quantum", {{"alice", slice_json(alice_q)}, {"bob", slice_json(bob_q)}}},
                     {"classical", {{"alice", slice_json(alice_c)}, {"bob", slice_json(bob_c)}}}};
    out["quantum"] = quantum_json;
    out["classical"] = classical_json;
    write_json(options.output_dir / "check.json", out);

    CheckResult result;
    result.quantum = quantum_verdict;
    result.classical = classical_verdict;
    result.classical_degenerate = degenerate;
    result.claims_confirmed = confirmed;
    result.exit_code = confirmed ? 0 : 1;
    if (confirmed) {
        result.summary = degenerate
                             ? "claims confirmed; classical scenario degenerate (E+ = E-), "
                               "descriptions coincide and a trivial map exists"
                             : "claims confirmed: no transformation relates the two observers' "
                               "descriptions in either scenario";
    } else {
        result.summary = "claim check FAILED: see check.json";
    }
    return result;
}

ChshResult cmd_chsh(const config::ScenarioConfig& scenario, const CommandOptions& options) {
    config::validate(scenario);
    const bell::AnalyzerSettings settings = bell::AnalyzerSettings::make(
        scenario.bell.a, scenario.bell.a_prime, scenario.bell.b, scenario.bell.b_prime);
    const std::uint64_t seed = scenario.seed;
    const std::size_t n_samples = static_cast<std::size_t>(scenario.bell.n_samples);

    const bell::ChshBreakdown quantum_breakdown =
        bell::chsh_breakdown(settings, bell::CorrelationModel::Quantum);
    const bell::ChshBreakdown analytic_breakdown =
        bell::chsh_breakdown(settings, bell::CorrelationModel::ClassicalAnalytic);
    const std::array<bell::CorrelationEstimate, 4> mc_estimates =
        bell::chsh_correlations_mc(settings, n_samples, seed);
    const double mc_s = mc_estimates[0].value + mc_estimates[1].value + mc_estimates[2].value -
                        mc_estimates[3].value;
    const double scan_max =
        bell::classical_chsh_bound_scan(static_cast<std::size_t>(scenario.bell.scan_quadruples),
                                        seed);

    const std::array<const char*, 4> pair_names{"a,b", "a,b_prime", "a_prime,b",
                                                "a_prime,b_prime"};
    const json settings_json = {{"a", to_json(settings.a)},
                                {"a_prime", to_json(settings.a_prime)},
                                {"b", to_json(settings.b)},
                                {"b_prime", to_json(settings.b_prime)}};

    auto analytic_result = [&](const char* model, const bell::ChshBreakdown& breakdown) {
        json correlations = json::array();
        for (std::size_t i = 0; i < 4; ++i) {
            correlations.push_back({{"pair", pair_names[i]}, {"value", breakdown.correlations[i]}});
        }
        return json{{"model", model},
                    {"settings", settings_json},
                    {"S", breakdown.s},
                    {"correlations", correlations},
                    {"n_samples", nullptr},
                    {"seed", nullptr}};
    };

    json mc_correlations = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        const bell::CorrelationEstimate& e = mc_estimates[i];
        mc_correlations.push_back({{"pair", pair_names[i]},
                                   {"value", e.value},
                                   {"standard_error",
                                    std::isfinite(e.standard_error) ? json(e.standard_error)
                                                                    : json(nullptr)},
                                   {"n_samples", e.n_samples}});
    }

    json out;
    out["seed"] = seed;
    out["results"] = json::array({
        analytic_result("quantum", quantum_breakdown),
        analytic_result("classical-analytic", analytic_breakdown),
        json{{"model", "classical-mc"},
             {"settings", settings_json},
             {"S", mc_s},
             {"correlations", mc_correlations},
             {"n_samples", n_samples},
             {"seed", seed}},
    });
    out["bound_scan"] = {{"model", "classical-analytic"},
                         {"max_abs_S", scan_max},
                         {"n_quadruples", scenario.bell.scan_quadruples},
                         {"seed", seed}};
    write_json(options.output_dir / "chsh.json", out);

    if (options.format == OutputFormat::Csv) {
        std::string csv =
            report::csv_line({"model", "pair", "value", "standard_error", "n_samples"});
        for (std::size_t i = 0; i < 4; ++i) {
            csv += report::csv_line({"quantum", pair_names[i],
                                     report::format_sig(quantum_breakdown.correlations[i]), "",
                                     ""});
        }
        for (std::size_t i = 0; i < 4; ++i) {
            csv += report::csv_line({"classical-analytic", pair_names[i],
                                     report::format_sig(analytic_breakdown.correlations[i]), "",
                                     ""});
        }
        for (std::size_t i = 0; i < 4; ++i) {
            csv += report::csv_line({"classical-mc", pair_names[i],
                                     report::format_sig(mc_estimates[i].value),
                                     report::format_sig(mc_estimates[i].standard_error),
                                     std::to_string(mc_estimates[i].n_samples)});
        }
        report::write_text_file(options.output_dir / "chsh.csv", csv);
    }

    return {quantum_breakdown.s, analytic_breakdown.s, mc_s, scan_max};
}

SimulateResult cmd_simulate(const config::ScenarioConfig& scenario,
                            const CommandOptions& options) {
    config::validate(scenario);
    const classical::BouncerParams& params = scenario.classical_params;

    // Branch facts first, from fixed derived streams: they are properties of
    // the history, not of any observer, so they must not depend on how the
    // observer list is ordered.
    auto sign_engine = rng::make_engine(scenario.seed, "classical-signs");
    const int sign_1 = rng::uniform01(sign_engine) < 0.5 ? +1 : -1;
    const int sign_2 = rng::uniform01(sign_engine) < 0.5 ? +1 : -1;

    auto outcome_engine = rng::make_engine(scenario.seed, "quantum-outcomes");
    const quantum::TwoSpinState initial = quantum::prepare_initial();
    const quantum::MeasurementResult first = quantum::measure_sigma_y(initial, 1, outcome_engine);
    const quantum::MeasurementResult second =
        quantum::measure_sigma_y(first.post_state, 2, outcome_engine);

    json observers_json = json::array();
    for (const config::ObserverDef& o : scenario.observers) {
        json slices_json = json::array();
        for (const config::ResolvedSlice& rs : config::resolved_slices(scenario)) {
            if (rs.observer != o.name) continue;
            const SpacelikeSlice slice = rs.slice();

            classical::MeasurementRecord record;
            if (scenario.simulate.measured) {
                if (spacetime::before_slice(slice, params.kick_event_1)) record.particle_1 = sign_1;
                if (spacetime::before_slice(slice, params.kick_event_2)) record.particle_2 = sign_2;
            }
            const classical::LiouvilleSupport support =
                classical::support_on_slice(params, slice, record);

            quantum::OutcomeBranch branch;
            if (spacetime::before_slice(slice, scenario.quantum_event_a)) {
                branch.a = first.outcome;
            }
            if (spacetime::before_slice(slice, scenario.quantum_event_b)) {
                branch.b = second.outcome;
            }
            const quantum::TwoSpinState description =
                quantum::description_on_slice({observer_role(o.name), rs.tau, rs.rapidity},
                                              branch, scenario.quantum_event_a,
                                              scenario.quantum_event_b);

            slices_json.push_back({{"tau", rs.tau},
                                   {"chi", rs.rapidity},
                                   {"record", {{"particle_1", to_json(record.particle_1)},
                                               {"particle_2", to_json(record.particle_2)}}},
                                   {"classical_support", to_json(support)},
                                   {"support_size", support.size()},
                                   {"branch", {{"a", to_json(branch.a)},
                                               {"b", to_json(branch.b)}}},
                                   {"quantum_state", to_json(description)}});
        }
        observers_json.push_back(
            {{"name", o.name}, {"rapidity", o.rapidity}, {"slices", slices_json}});
    }

    json out;
    out["seed"] = scenario.seed;
    out["measured"] = scenario.simulate.measured;
    out["classical_signs"] = {{"particle_1", sign_1}, {"particle_2", sign_2}};
    out["quantum_outcomes"] = {{"a", first.outcome},
                               {"probability_a", first.probability},
                               {"b", second.outcome},
                               {"probability_b", second.probability}};
    out["observers"] = observers_json;
    write_json(options.output_dir / "simulate.json", out);

    return {sign_1, sign_2, first.outcome, second.outcome};
}

} // namespace openslice::commands

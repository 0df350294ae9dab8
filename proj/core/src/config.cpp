#include "openslice/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "openslice/errors.hpp"

namespace openslice::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void reject_unknown_keys(const json& object, const std::string& where,
                         const std::set<std::string>& known) {
    if (!object.is_object()) {
        fail(where + " must be a JSON object");
    }
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            fail("unknown key \"" + key + "\" in " + where);
        }
    }
}

const json& field(const json& object, const std::string& where, const std::string& key) {
    auto it = object.find(key);
    if (it == object.end()) {
        fail("missing key \"" + key + "\" in " + where);
    }
    return *it;
}

double number(const json& object, const std::string& where, const std::string& key) {
    const json& v = field(object, where, key);
    if (!v.is_number()) {
        fail("key \"" + key + "\" in " + where + " must be a number");
    }
    return v.get<double>();
}

std::uint64_t count(const json& object, const std::string& where, const std::string& key) {
    const json& v = field(object, where, key);
    if (!v.is_number_unsigned()) {
        fail("key \"" + key + "\" in " + where + " must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

bool all_numbers(const json& v) {
    for (const json& e : v) {
        if (!e.is_number()) return false;
    }
    return true;
}

spacetime::FourVector four_vector(const json& object, const std::string& where,
                                  const std::string& key) {
    const json& v = field(object, where, key);
    if (!v.is_array() || v.size() != 4 || !all_numbers(v)) {
        fail("key \"" + key + "\" in " + where + " must be an array [t, x, y, z]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
}

bell::Vec3 vec3(const json& object, const std::string& where, const std::string& key) {
    const json& v = field(object, where, key);
    if (!v.is_array() || v.size() != 3 || !all_numbers(v)) {
        fail("key \"" + key + "\" in " + where + " must be an array [x, y, z]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json to_json(const spacetime::FourVector& v) { return json::array({v.t, v.x, v.y, v.z}); }

json to_json(const bell::Vec3& v) { return json::array({v.x, v.y, v.z}); }

} // namespace

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.classical_params = {3.0, 4.0, 4.0, 1.0, -1.0, 1.0, {0.0, -1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
    c.quantum_event_a = {0.0, -1.0, 0.0, 0.0};
    c.quantum_event_b = {0.0, 1.0, 0.0, 0.0};
    c.observers = {{"alice", -0.5}, {"bob", 0.5}, {"magician", 0.0}};
    c.slices = {{"alice", -1.0}, {"alice", 0.0}, {"alice", 1.0},
                {"bob", 0.0},
                {"magician", -2.0}, {"magician", 2.0}};
    const bell::AnalyzerSettings standard = bell::standard_quadruple();
    c.bell = {standard.a, standard.a_prime, standard.b, standard.b_prime, 100000, 10000};
    c.simulate = {true};
    c.seed = 1905;
    c.output_dir = "out";
    return c;
}

ScenarioConfig parse(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        fail("scenario must be a JSON object");
    }
    reject_unknown_keys(root, "scenario", {"units", "seed", "output_dir", "classical", "quantum",
                                           "observers", "slices", "bell", "simulate"});

    const json& units = field(root, "scenario", "units");
    if (!units.is_string() || units.get<std::string>() != "natural") {
        fail("key \"units\" must be the string \"natural\" (c = 1)");
    }

    ScenarioConfig c;
    c.seed = count(root, "scenario", "seed");
    const json& out_dir = field(root, "scenario", "output_dir");
    if (!out_dir.is_string()) {
        fail("key \"output_dir\" must be a string");
    }
    c.output_dir = out_dir.get<std::string>();

    const json& cl = field(root, "scenario", "classical");
    reject_unknown_keys(cl, "classical", {"m", "p", "k", "segment_half_length", "x_center_1",
                                          "x_center_2", "kick_event_1", "kick_event_2"});
    c.classical_params.m = number(cl, "classical", "m");
    c.classical_params.p = number(cl, "classical", "p");
    c.classical_params.k = number(cl, "classical", "k");
    c.classical_params.segment_half_length = number(cl, "classical", "segment_half_length");
    c.classical_params.x_center_1 = number(cl, "classical", "x_center_1");
    c.classical_params.x_center_2 = number(cl, "classical", "x_center_2");
    c.classical_params.kick_event_1 = four_vector(cl, "classical", "kick_event_1");
    c.classical_params.kick_event_2 = four_vector(cl, "classical", "kick_event_2");

    const json& qu = field(root, "scenario", "quantum");
    reject_unknown_keys(qu, "quantum", {"event_a", "event_b"});
    c.quantum_event_a = four_vector(qu, "quantum", "event_a");
    c.quantum_event_b = four_vector(qu, "quantum", "event_b");

    const json& observers = field(root, "scenario", "observers");
    if (!observers.is_array() || observers.empty()) {
        fail("key \"observers\" must be a non-empty array");
    }
    for (const json& o : observers) {
        reject_unknown_keys(o, "observers[]", {"name", "rapidity"});
        const json& name = field(o, "observers[]", "name");
        if (!name.is_string()) {
            fail("observer names must be strings");
        }
        c.observers.push_back({name.get<std::string>(), number(o, "observers[]", "rapidity")});
    }

    const json& slices = field(root, "scenario", "slices");
    if (!slices.is_array()) {
        fail("key \"slices\" must be an array");
    }
    for (const json& s : slices) {
        reject_unknown_keys(s, "slices[]", {"observer", "tau"});
        const json& observer = field(s, "slices[]", "observer");
        if (!observer.is_string()) {
            fail("slice observer references must be strings");
        }
        c.slices.push_back({observer.get<std::string>(), number(s, "slices[]", "tau")});
    }

    const json& be = field(root, "scenario", "bell");
    reject_unknown_keys(be, "bell",
                        {"a", "a_prime", "b", "b_prime", "n_samples", "scan_quadruples"});
    c.bell.a = vec3(be, "bell", "a");
    c.bell.a_prime = vec3(be, "bell", "a_prime");
    c.bell.b = vec3(be, "bell", "b");
    c.bell.b_prime = vec3(be, "bell", "b_prime");
    c.bell.n_samples = count(be, "bell", "n_samples");
    c.bell.scan_quadruples = count(be, "bell", "scan_quadruples");

    const json& sim = field(root, "scenario", "simulate");
    reject_unknown_keys(sim, "simulate", {"measured"});
    const json& measured = field(sim, "simulate", "measured");
    if (!measured.is_boolean()) {
        fail("key \"measured\" must be a boolean");
    }
    c.simulate.measured = measured.get<bool>();

    return c;
}

ScenarioConfig load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read scenario file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string serialize(const ScenarioConfig& c) {
    json root;
    root["units"] = "natural";
    root["seed"] = c.seed;
    root["output_dir"] = c.output_dir;
    root["classical"] = {
        {"m", c.classical_params.m},
        {"p", c.classical_params.p},
        {"k", c.classical_params.k},
        {"segment_half_length", c.classical_params.segment_half_length},
        {"x_center_1", c.classical_params.x_center_1},
        {"x_center_2", c.classical_params.x_center_2},
        {"kick_event_1", to_json(c.classical_params.kick_event_1)},
        {"kick_event_2", to_json(c.classical_params.kick_event_2)},
    };
    root["quantum"] = {
        {"event_a", to_json(c.quantum_event_a)},
        {"event_b", to_json(c.quantum_event_b)},
    };
    root["observers"] = json::array();
    for (const ObserverDef& o : c.observers) {
        root["observers"].push_back({{"name", o.name}, {"rapidity", o.rapidity}});
    }
    root["slices"] = json::array();
    for (const SliceDef& s : c.slices) {
        root["slices"].push_back({{"observer", s.observer}, {"tau", s.tau}});
    }
    root["bell"] = {
        {"a", to_json(c.bell.a)},
        {"a_prime", to_json(c.bell.a_prime)},
        {"b", to_json(c.bell.b)},
        {"b_prime", to_json(c.bell.b_prime)},
        {"n_samples", c.bell.n_samples},
        {"scan_quadruples", c.bell.scan_quadruples},
    };
    root["simulate"] = {{"measured", c.simulate.measured}};
    return root.dump(2) + "\n";
}

void validate(const ScenarioConfig& c) {
    // Generous bounds that still keep every cosh/sinh product finite, so
    // slice comparisons never hit inf - inf.
    constexpr double kMaxRapidity = 100.0;
    constexpr double kMaxCoordinate = 1e12;
    auto bounded = [](const spacetime::FourVector& v) {
        return std::abs(v.t) <= kMaxCoordinate && std::abs(v.x) <= kMaxCoordinate &&
               std::abs(v.y) <= kMaxCoordinate && std::abs(v.z) <= kMaxCoordinate;
    };
    try {
        classical::validate(c.classical_params);
    } catch (const std::invalid_argument& e) {
        fail(std::string("classical: ") + e.what());
    }
    if (!bounded(c.classical_params.kick_event_1) || !bounded(c.classical_params.kick_event_2)) {
        fail("classical: kick event coordinates must not exceed 1e12");
    }
    if (!spacetime::is_finite(c.quantum_event_a) || !spacetime::is_finite(c.quantum_event_b) ||
        !bounded(c.quantum_event_a) || !bounded(c.quantum_event_b)) {
        fail("quantum: measurement event coordinates must be finite and not exceed 1e12");
    }
    std::set<std::string> names;
    for (const ObserverDef& o : c.observers) {
        if (o.name.empty()) {
            fail("observers: names must be non-empty");
        }
        if (!names.insert(o.name).second) {
            fail("observers: duplicate name \"" + o.name + "\"");
        }
        if (!std::isfinite(o.rapidity) || std::abs(o.rapidity) > kMaxRapidity) {
            fail("observers: rapidity of \"" + o.name + "\" must be finite and within +-100");
        }
    }
    for (const SliceDef& s : c.slices) {
        if (!names.contains(s.observer)) {
            fail("slices: unknown observer \"" + s.observer + "\"");
        }
        if (!std::isfinite(s.tau) || std::abs(s.tau) > kMaxCoordinate) {
            fail("slices: tau must be finite and within +-1e12");
        }
    }
    try {
        bell::AnalyzerSettings::make(c.bell.a, c.bell.a_prime, c.bell.b, c.bell.b_prime);
    } catch (const std::invalid_argument& e) {
        fail(std::string("bell: ") + e.what());
    }
    if (c.bell.n_samples < 1) {
        fail("bell: n_samples must be at least 1");
    }
    if (c.bell.scan_quadruples < 1) {
        fail("bell: scan_quadruples must be at least 1");
    }
    if (c.output_dir.empty()) {
        fail("output_dir must be non-empty");
    }
}

double observer_rapidity(const ScenarioConfig& c, std::string_view name) {
    for (const ObserverDef& o : c.observers) {
        if (o.name == name) {
            return o.rapidity;
        }
    }
    throw ConfigError("no observer named \"" + std::string(name) + "\" in scenario");
}

std::vector<ResolvedSlice> resolved_slices(const ScenarioConfig& c) {
    std::vector<ResolvedSlice> out;
    out.reserve(c.slices.size());
    for (const SliceDef& s : c.slices) {
        out.push_back({s.observer, observer_rapidity(c, s.observer), s.tau});
    }
    return out;
}

} // namespace openslice::config

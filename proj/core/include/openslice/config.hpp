#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "openslice/bell.hpp"
#include "openslice/classical.hpp"
#include "openslice/spacetime.hpp"

namespace openslice::config {

struct ObserverDef {
    std::string name;
    double rapidity{};

    friend bool operator==(const ObserverDef&, const ObserverDef&) = default;
};

struct SliceDef {
    std::string observer; ///< must name an entry of ScenarioConfig::observers
    double tau{};

    friend bool operator==(const SliceDef&, const SliceDef&) = default;
};

struct BellConfig {
    bell::Vec3 a;
    bell::Vec3 a_prime;
    bell::Vec3 b;
    bell::Vec3 b_prime;
    std::uint64_t n_samples{};
    std::uint64_t scan_quadruples{};

    friend bool operator==(const BellConfig&, const BellConfig&) = default;
};

struct SimulateConfig {
    /// When true the sampled history includes the energy measurements, so
    /// post-kick supports collapse to singletons; when false kicks happen
    /// but nobody reads out the energies.
    bool measured = true;

    friend bool operator==(const SimulateConfig&, const SimulateConfig&) = default;
};

/// One self-contained scenario file (JSON, natural units). Unknown keys are
/// rejected so a typo cannot silently fall back to a default.
struct ScenarioConfig {
    classical::BouncerParams classical_params;
    spacetime::FourVector quantum_event_a;
    spacetime::FourVector quantum_event_b;
    std::vector<ObserverDef> observers;
    std::vector<SliceDef> slices;
    BellConfig bell;
    SimulateConfig simulate;
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// The worked scenario: m = 3, p = 4, k = 4, kicks and measurements at
/// A = (0,-1) and B = (0,+1), observer rapidities -+0.5, CHSH at the
/// standard quadruple.
ScenarioConfig default_config();

/// Parses a scenario from JSON text. Throws ConfigError on malformed JSON,
/// unknown keys, missing keys, wrong types, or a units note other than
/// "natural".
ScenarioConfig parse(const std::string& text);

/// Reads and parses a scenario file. Throws IoError if unreadable.
ScenarioConfig load_file(const std::filesystem::path& path);

/// Serializes to JSON text; parse(serialize(c)) == c.
std::string serialize(const ScenarioConfig& c);

/// Structural validation: positive masses and lengths, resolvable observer
/// references, unit analyzer directions, at least one Monte Carlo sample.
/// Throws ConfigError naming the offending field. Slice/event geometry is
/// checked by the description-table builders instead.
void validate(const ScenarioConfig& c);

/// Rapidity of the named observer; ConfigError if unknown.
double observer_rapidity(const ScenarioConfig& c, std::string_view name);

struct ResolvedSlice {
    std::string observer;
    double rapidity{};
    double tau{};

    spacetime::SpacelikeSlice slice() const { return {rapidity, tau}; }
};

/// All configured slices in file order with rapidities resolved.
std::vector<ResolvedSlice> resolved_slices(const ScenarioConfig& c);

} // namespace openslice::config

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>

#include "openslice/config.hpp"
#include "openslice/errors.hpp"
#include "openslice/report.hpp"

using namespace openslice;
using config::ScenarioConfig;

TEST_CASE("the default scenario round-trips through serialize/parse") {
    const ScenarioConfig original = config::default_config();
    CHECK_NOTHROW(config::validate(original));
    const ScenarioConfig reparsed = config::parse(config::serialize(original));
    CHECK(reparsed == original);
    // idempotent serialization
    CHECK(config::serialize(reparsed) == config::serialize(original));
}

TEST_CASE("a modified scenario round-trips too") {
    ScenarioConfig c = config::default_config();
    c.seed = 99;
    c.simulate.measured = false;
    c.classical_params.k = 0.0;
    c.observers.push_back({"carol", 1.25});
    c.slices.push_back({"carol", -0.75});
    c.output_dir = "elsewhere";
    const ScenarioConfig reparsed = config::parse(config::serialize(c));
    CHECK(reparsed == c);
}

TEST_CASE("unknown keys are rejected at every level") {
    nlohmann::json root = nlohmann::json::parse(config::serialize(config::default_config()));
    root["extra"] = 1;
    CHECK_THROWS_WITH_AS(config::parse(root.dump()),
                         doctest::Contains("unknown key \"extra\""), ConfigError);
    root.erase("extra");
    root["classical"]["typo"] = 2.0;
    CHECK_THROWS_WITH_AS(config::parse(root.dump()), doctest::Contains("typo"), ConfigError);
    root["classical"].erase("typo");
    root["slices"][0]["observr"] = "alice";
    CHECK_THROWS_WITH_AS(config::parse(root.dump()), doctest::Contains("observr"), ConfigError);
}

TEST_CASE("missing keys and wrong types are named") {
    nlohmann::json root = nlohmann::json::parse(config::serialize(config::default_config()));
    root.erase("seed");
    CHECK_THROWS_WITH_AS(config::parse(root.dump()), doctest::Contains("seed"), ConfigError);

    root = nlohmann::json::parse(config::serialize(config::default_config()));
    root["seed"] = -5;
    CHECK_THROWS_AS(config::parse(root.dump()), ConfigError);

    root = nlohmann::json::parse(config::serialize(config::default_config()));
    root["classical"]["m"] = "three";
    CHECK_THROWS_WITH_AS(config::parse(root.dump()), doctest::Contains("\"m\""), ConfigError);

    root = nlohmann::json::parse(config::serialize(config::default_config()));
    root["quantum"]["event_a"] = nlohmann::json::array({0.0, 1.0});
    CHECK_THROWS_AS(config::parse(root.dump()), ConfigError);
}

TEST_CASE("the units note is mandatory and must be natural") {
    nlohmann::json root = nlohmann::json::parse(config::serialize(config::default_config()));
    root["units"] = "SI";
    CHECK_THROWS_WITH_AS(config::parse(root.dump()), doctest::Contains("natural"), ConfigError);
    root.erase("units");
    CHECK_THROWS_AS(config::parse(root.dump()), ConfigError);
}

TEST_CASE("validation resolves cross-references and physical constraints") {
    ScenarioConfig c = config::default_config();
    c.slices.push_back({"nobody", 0.0});
    CHECK_THROWS_WITH_AS(config::validate(c), doctest::Contains("nobody"), ConfigError);

    c = config::default_config();
    c.classical_params.m = -1.0;
    CHECK_THROWS_AS(config::validate(c), ConfigError);

    c = config::default_config();
    c.bell.a = {2.0, 0.0, 0.0};
    CHECK_THROWS_AS(config::validate(c), ConfigError);

    c = config::default_config();
    c.bell.n_samples = 0;
    CHECK_THROWS_AS(config::validate(c), ConfigError);

    c = config::default_config();
    c.observers.push_back({"alice", 0.25});
    CHECK_THROWS_WITH_AS(config::validate(c), doctest::Contains("duplicate"), ConfigError);

    c = config::default_config();
    c.observers[0].rapidity = 1e3; // cosh would overflow downstream
    CHECK_THROWS_AS(config::validate(c), ConfigError);

    c = config::default_config();
    c.slices[0].tau = 1e15;
    CHECK_THROWS_AS(config::validate(c), ConfigError);
}

TEST_CASE("observer lookups") {
    const ScenarioConfig c = config::default_config();
    CHECK(config::observer_rapidity(c, "alice") == doctest::Approx(-0.5));
    CHECK(config::observer_rapidity(c, "bob") == doctest::Approx(0.5));
    CHECK_THROWS_AS(config::observer_rapidity(c, "eve"), ConfigError);
    const auto slices = config::resolved_slices(c);
    REQUIRE(slices.size() == c.slices.size());
    CHECK(slices[0].observer == "alice");
    CHECK(slices[0].rapidity == doctest::Approx(-0.5));
    CHECK(slices[0].tau == doctest::Approx(-1.0));
}

TEST_CASE("missing scenario files raise an i/o error") {
    CHECK_THROWS_AS(config::load_file("/nonexistent/scenario.json"), IoError);
}

TEST_CASE("malformed JSON raises a config error") {
    CHECK_THROWS_AS(config::parse("{ not json"), ConfigError);
    CHECK_THROWS_AS(config::parse("[1, 2, 3]"), ConfigError);
}

TEST_CASE("report helpers: fixed formatting and i/o failures") {
    CHECK(report::format_sig(5.0) == "5");
    CHECK(report::format_sig(std::sqrt(73.0)) == "8.54400374532");
    CHECK(report::format_sig(-0.5) == "-0.5");
    CHECK(report::csv_line({"a", "b", "c"}) == "a,b,c\n");
    // writing over a directory fails with the path in the message
    const auto dir = std::filesystem::temp_directory_path();
    CHECK_THROWS_WITH_AS(report::write_text_file(dir, "x"),
                         doctest::Contains(dir.string().c_str()), IoError);
}

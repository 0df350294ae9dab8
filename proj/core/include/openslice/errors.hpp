#pragma once

#include <stdexcept>
#include <string>

namespace openslice {

/// A measurement record references a particle whose kick is not yet in the
/// slice's past.
class InconsistentRecordError : public std::runtime_error {
public:
    explicit InconsistentRecordError(const std::string& what) : std::runtime_error(what) {}
};

/// An observed energy matches no point of the support.
class ImpossibleOutcomeError : public std::runtime_error {
public:
    explicit ImpossibleOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

/// A trajectory was requested outside the time range the model defines.
class OutOfModelError : public std::runtime_error {
public:
    explicit OutOfModelError(const std::string& what) : std::runtime_error(what) {}
};

/// An outcome branch does not match the set of interventions in the slice's past.
class InconsistentBranchError : public std::runtime_error {
public:
    explicit InconsistentBranchError(const std::string& what) : std::runtime_error(what) {}
};

/// Slice/event geometry does not realize the two-observer scenario.
class InvalidScenarioError : public std::runtime_error {
public:
    explicit InvalidScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario file cannot be parsed or fails validation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure; the message names the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace openslice

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>

namespace openslice::bell {

inline constexpr double kUnitNormTol = 1e-12;

/// Fixed Monte Carlo chunk size: estimates are accumulated chunk by chunk
/// with per-chunk derived seeds, so a given (seed, n_samples) pair yields
/// the same estimate no matter how chunks are scheduled.
inline constexpr std::size_t kMcChunkSize = 4096;

struct Vec3 {
    double x{};
    double y{};
    double z{};

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
/// Angle between a and b in [0, pi] via atan2(|a x b|, a.b); stable near 0
/// and pi. Throws std::invalid_argument for zero or non-finite vectors.
double angle_between(const Vec3& a, const Vec3& b);
Vec3 normalized(const Vec3& v);

/// The four analyzer directions of a CHSH run; unit vectors within
/// kUnitNormTol.
struct AnalyzerSettings {
    Vec3 a;
    Vec3 a_prime;
    Vec3 b;
    Vec3 b_prime;

    /// Validates unit norms; throws std::invalid_argument otherwise.
    static AnalyzerSettings make(const Vec3& a, const Vec3& a_prime, const Vec3& b,
                                 const Vec3& b_prime);
};

/// The planar optimum of the CHSH combination used here: a at 0 deg, a' at
/// 90 deg, b at 45 deg, b' at -45 deg in the xy-plane. The quantum singlet
/// reaches |S| = 2*sqrt(2) here; the classical model reaches exactly 2.
AnalyzerSettings standard_quadruple();

/// Exact correlation E[A*B] of the classical magician's model: fragments
/// carry opposite angular momenta lambda, -lambda with lambda isotropic, and
/// the analyzers read out A = sign(a.lambda), B = sign(b.(-lambda)). Equals
/// -1 + 2*theta/pi with theta the angle between a and b.
double classical_correlation_analytic(const Vec3& a, const Vec3& b);

struct CorrelationEstimate {
    double value;          ///< mean of A*B, in [-1, 1]
    double standard_error; ///< NaN when n_samples < 2 (undefined)
    std::size_t n_samples;
};

/// Monte Carlo estimate of the same correlation, sampling lambda uniformly
/// on the sphere (inverse CDF: uniform cos(polar), uniform azimuth).
/// Deterministic for fixed (a, b, n_samples, seed).
CorrelationEstimate classical_correlation_mc(const Vec3& a, const Vec3& b,
                                             std::size_t n_samples, std::uint64_t seed);

/// <psi-| (sigma.a (x) sigma.b) |psi-> computed from the explicit singlet
/// state (|z+z-> - |z-z+>)/sqrt(2); equals -a.b.
double quantum_singlet_correlation(const Vec3& a, const Vec3& b);

enum class CorrelationModel { ClassicalAnalytic, ClassicalMc, Quantum };

std::string_view to_string(CorrelationModel m);

/// The four analyzer pairs of the CHSH combination, in the fixed order
/// (a,b), (a,b'), (a',b), (a',b').
std::array<std::pair<Vec3, Vec3>, 4> setting_pairs(const AnalyzerSettings& settings);

/// Monte Carlo correlation estimates for the four CHSH pairs; pair i draws
/// from the derived stream (seed, "chsh-pair", i).
std::array<CorrelationEstimate, 4> chsh_correlations_mc(const AnalyzerSettings& settings,
                                                        std::size_t n_samples,
                                                        std::uint64_t seed);

struct ChshBreakdown {
    std::array<double, 4> correlations; ///< E for the four setting_pairs
    double s;                           ///< E0 + E1 + E2 - E3
};

ChshBreakdown chsh_breakdown(const AnalyzerSettings& settings, CorrelationModel model,
                             std::size_t mc_samples = 100000, std::uint64_t seed = 0);

/// S = E(a,b) + E(a,b') + E(a',b) - E(a',b') under the chosen model.
/// mc_samples and seed matter only for CorrelationModel::ClassicalMc.
double chsh(const AnalyzerSettings& settings, CorrelationModel model,
            std::size_t mc_samples = 100000, std::uint64_t seed = 0);

/// Max |S| of the classical-analytic model over n_quadruples random
/// analyzer quadruples. Local hidden-variable bound: never exceeds 2.
double classical_chsh_bound_scan(std::size_t n_quadruples, std::uint64_t seed);

} // namespace openslice::bell

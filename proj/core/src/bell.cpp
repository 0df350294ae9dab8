#include "openslice/bell.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "openslice/random.hpp"

namespace openslice::bell {

namespace {

using Complex = std::complex<double>;

int sign_of(double v) { return v >= 0.0 ? +1 : -1; }

void require_nonzero(const Vec3& v, const char* what) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
        throw std::invalid_argument(std::string(what) + ": vector must be finite");
    }
    if (norm(v) == 0.0) {
        throw std::invalid_argument(std::string(what) + ": vector must be nonzero");
    }
}

Vec3 sample_isotropic(std::mt19937_64& engine) {
    const double cos_polar = rng::uniform(engine, -1.0, 1.0);
    const double azimuth = rng::uniform(engine, 0.0, 2.0 * std::numbers::pi);
    const double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
    return {sin_polar * std::cos(azimuth), sin_polar * std::sin(azimuth), cos_polar};
}

/// sigma.n as a 2x2 complex matrix, row-major.
std::array<Complex, 4> pauli_dot(const Vec3& n) {
    return {Complex{n.z, 0.0}, Complex{n.x, -n.y}, Complex{n.x, n.y}, Complex{-n.z, 0.0}};
}

} // namespace

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
    require_nonzero(v, "normalized");
    const double n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

double angle_between(const Vec3& a, const Vec3& b) {
    require_nonzero(a, "angle_between");
    require_nonzero(b, "angle_between");
    const Vec3 cross{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    return std::atan2(norm(cross), dot(a, b));
}

AnalyzerSettings AnalyzerSettings::make(const Vec3& a, const Vec3& a_prime, const Vec3& b,
                                        const Vec3& b_prime) {
    const std::array<std::pair<Vec3, const char*>, 4> directions{{
        {a, "a"}, {a_prime, "a_prime"}, {b, "b"}, {b_prime, "b_prime"}}};
    for (const auto& [v, name] : directions) {
        require_nonzero(v, name);
        if (std::abs(norm(v) - 1.0) > kUnitNormTol) {
            throw std::invalid_argument(std::string("analyzer direction ") + name +
                                        " must be a unit vector");
        }
    }
    return {a, a_prime, b, b_prime};
}

AnalyzerSettings standard_quadruple() {
    const double r = std::sqrt(0.5);
    return AnalyzerSettings::make({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {r, r, 0.0}, {r, -r, 0.0});
}

double classical_correlation_analytic(const Vec3& a, const Vec3& b) {
    const double theta = angle_between(a, b);
    return -1.0 + 2.0 * theta / std::numbers::pi;
}

CorrelationEstimate classical_correlation_mc(const Vec3& a, const Vec3& b,
                                             std::size_t n_samples, std::uint64_t seed) {
    require_nonzero(a, "classical_correlation_mc");
    require_nonzero(b, "classical_correlation_mc");
    if (n_samples < 1) {
        throw std::invalid_argument("classical_correlation_mc: need at least one sample");
    }
    double sum = 0.0;
    const std::size_t n_chunks = (n_samples + kMcChunkSize - 1) / kMcChunkSize;
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {
        auto engine = rng::make_engine(seed, "bell-mc-chunk", chunk);
        const std::size_t begin = chunk * kMcChunkSize;
        const std::size_t end = std::min(begin + kMcChunkSize, n_samples);
        double chunk_sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const Vec3 lambda = sample_isotropic(engine);
            const int outcome_a = sign_of(dot(a, lambda));
            const int outcome_b = -sign_of(dot(b, lambda));
            chunk_sum += static_cast<double>(outcome_a * outcome_b);
        }
        sum += chunk_sum;
    }
    const double mean = sum / static_cast<double>(n_samples);
    double standard_error = std::numeric_limits<double>::quiet_NaN();
    if (n_samples >= 2) {
        // Products are +-1, so the sample variance is n(1 - mean^2)/(n - 1).
        const double var = (1.0 - mean * mean) * static_cast<double>(n_samples) /
                           static_cast<double>(n_samples - 1);
        standard_error = std::sqrt(var / static_cast<double>(n_samples));
    }
    return {mean, standard_error, n_samples};
}

double quantum_singlet_correlation(const Vec3& a, const Vec3& b) {
    require_nonzero(a, "quantum_singlet_correlation");
    require_nonzero(b, "quantum_singlet_correlation");
    const Vec3 ua = normalized(a);
    const Vec3 ub = normalized(b);
    // |psi-> over |z+z+>, |z+z->, |z-z+>, |z-z->.
    const double r = std::sqrt(0.5);
    const std::array<Complex, 4> singlet{0.0, r, -r, 0.0};
    const std::array<Complex, 4> ma = pauli_dot(ua);
    const std::array<Complex, 4> mb = pauli_dot(ub);
    // (sigma.a (x) sigma.b) |psi->, then the overlap with |psi->.
    std::array<Complex, 4> acted{};
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int i2 = 0; i2 < 2; ++i2) {
            Complex sum = 0.0;
            for (int j1 = 0; j1 < 2; ++j1) {
                for (int j2 = 0; j2 < 2; ++j2) {
                    sum += ma[i1 * 2 + j1] * mb[i2 * 2 + j2] * singlet[j1 * 2 + j2];
                }
            }
            acted[i1 * 2 + i2] = sum;
        }
    }
    Complex expectation = 0.0;
    for (int i = 0; i < 4; ++i) {
        expectation += std::conj(singlet[i]) * acted[i];
    }
    return expectation.real();
}

std::string_view to_string(CorrelationModel m) {
    switch (m) {
        case CorrelationModel::ClassicalAnalytic: return "classical-analytic";
        case CorrelationModel::ClassicalMc: return "classical-mc";
        case CorrelationModel::Quantum: return "quantum";
    }
    return "unknown";
}

std::array<std::pair<Vec3, Vec3>, 4> setting_pairs(const AnalyzerSettings& settings) {
    return {{{settings.a, settings.b},
             {settings.a, settings.b_prime},
             {settings.a_prime, settings.b},
             {settings.a_prime, settings.b_prime}}};
}

std::array<CorrelationEstimate, 4> chsh_correlations_mc(const AnalyzerSettings& settings,
                                                        std::size_t n_samples,
                                                        std::uint64_t seed) {
    const auto pairs = setting_pairs(settings);
    std::array<CorrelationEstimate, 4> out{};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out[i] = classical_correlation_mc(pairs[i].first, pairs[i].second, n_samples,
                                          rng::derive_seed(seed, "chsh-pair", i));
    }
    return out;
}

ChshBreakdown chsh_breakdown(const AnalyzerSettings& settings, CorrelationModel model,
                             std::size_t mc_samples, std::uint64_t seed) {
    const auto pairs = setting_pairs(settings);
    ChshBreakdown breakdown{};
    switch (model) {
        case CorrelationModel::ClassicalAnalytic:
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                breakdown.correlations[i] =
                    classical_correlation_analytic(pairs[i].first, pairs[i].second);
            }
            break;
        case CorrelationModel::ClassicalMc: {
            const auto estimates = chsh_correlations_mc(settings, mc_samples, seed);
            for (std::size_t i = 0; i < estimates.size(); ++i) {
                breakdown.correlations[i] = estimates[i].value;
            }
            break;
        }
        case CorrelationModel::Quantum:
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                breakdown.correlations[i] =
                    quantum_singlet_correlation(pairs[i].first, pairs[i].second);
            }
            break;
    }
    breakdown.s = breakdown.correlations[0] + breakdown.correlations[1] +
                  breakdown.correlations[2] - breakdown.correlations[3];
    return breakdown;
}

double chsh(const AnalyzerSettings& settings, CorrelationModel model, std::size_t mc_samples,
            std::uint64_t seed) {
    return chsh_breakdown(settings, model, mc_samples, seed).s;
}

double classical_chsh_bound_scan(std::size_t n_quadruples, std::uint64_t seed) {
    if (n_quadruples < 1) {
        throw std::invalid_argument("classical_chsh_bound_scan: need at least one quadruple");
    }
    auto engine = rng::make_engine(seed, "bell-bound-scan");
    double max_abs_s = 0.0;
    for (std::size_t i = 0; i < n_quadruples; ++i) {
        const AnalyzerSettings settings{sample_isotropic(engine), sample_isotropic(engine),
                                        sample_isotropic(engine), sample_isotropic(engine)};
        max_abs_s = std::max(max_abs_s,
                             std::abs(chsh(settings, CorrelationModel::ClassicalAnalytic)));
    }
    return max_abs_s;
}

} // namespace openslice::bell

#include "openslice/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "openslice/errors.hpp"

namespace openslice::classical {

namespace {

/// One alternative for a single particle: magician-frame energy, the
/// momentum that goes with it, and its probability.
struct Branch {
    double energy;
    double momentum;
    double weight;
};

const spacetime::FourVector& kick_event(const BouncerParams& params, int particle) {
    return particle == 1 ? params.kick_event_1 : params.kick_event_2;
}

void require_particle_index(int particle) {
    if (particle != 1 && particle != 2) {
        throw std::invalid_argument("particle index must be 1 or 2, got " + std::to_string(particle));
    }
}

/// Branch set of one particle on a slice. Pre-kick momenta are +-p with
/// weight 1/2 each; the kick shifts the momentum to k +- p.
std::vector<Branch> particle_branches(const BouncerParams& params,
                                      const spacetime::SpacelikeSlice& slice,
                                      const MeasurementRecord& record,
                                      int particle) {
    const bool kicked = spacetime::before_slice(slice, kick_event(params, particle));
    const std::optional<int> measured = record.sign_of(particle);
    if (measured && !kicked) {
        throw InconsistentRecordError("measurement record references particle " +
                                      std::to_string(particle) +
                                      " whose kick is not before the slice");
    }
    if (measured && *measured != 1 && *measured != -1) {
        throw std::invalid_argument("measured sign must be +1 or -1");
    }
    if (!kicked) {
        const double e0 = rest_energy(params);
        return {{e0, params.p, 0.5}, {e0, -params.p, 0.5}};
    }
    if (measured) {
        const int s = *measured;
        return {{kicked_energy(params, s), params.k + s * params.p, 1.0}};
    }
    return {{kicked_energy(params, +1), params.k + params.p, 0.5},
            {kicked_energy(params, -1), params.k - params.p, 0.5}};
}

LiouvilleSupport product_support(const std::vector<Branch>& b1, const std::vector<Branch>& b2,
                                 bool boosted, double chi) {
    const double ch = std::cosh(chi);
    const double sh = std::sinh(chi);
    auto energy_of = [&](const Branch& b) {
        return boosted ? b.energy * ch - b.momentum * sh : b.energy;
    };
    std::vector<SupportPoint> points;
    points.reserve(b1.size() * b2.size());
    for (const Branch& x : b1) {
        for (const Branch& y : b2) {
            points.push_back({energy_of(x), energy_of(y), x.weight * y.weight});
        }
    }
    return LiouvilleSupport::from_points(std::move(points));
}

LiouvilleSupport support_impl(const BouncerParams& params, const spacetime::SpacelikeSlice& slice,
                              const MeasurementRecord& record, bool boosted) {
    validate(params);
    return product_support(particle_branches(params, slice, record, 1),
                           particle_branches(params, slice, record, 2), boosted, slice.chi);
}

} // namespace

void validate(const BouncerParams& params) {
    if (!(params.m > 0.0) || !std::isfinite(params.m)) {
        throw std::invalid_argument("bouncer mass must be positive and finite");
    }
    if (!(params.p >= 0.0) || !std::isfinite(params.p)) {
        throw std::invalid_argument("bouncer momentum must be nonnegative and finite");
    }
    if (!std::isfinite(params.k)) {
        throw std::invalid_argument("kick momentum must be finite");
    }
    if (!(params.segment_half_length > 0.0) || !std::isfinite(params.segment_half_length)) {
        throw std::invalid_argument("segment half-length must be positive and finite");
    }
    if (!std::isfinite(params.x_center_1) || !std::isfinite(params.x_center_2)) {
        throw std::invalid_argument("segment centers must be finite");
    }
    if (!spacetime::is_finite(params.kick_event_1) || !spacetime::is_finite(params.kick_event_2)) {
        throw std::invalid_argument("kick events must be finite");
    }
}

double rest_energy(const BouncerParams& params) {
    if (!(params.m > 0.0)) {
        throw std::invalid_argument("rest_energy: mass must be positive");
    }
    if (params.p < 0.0) {
        throw std::invalid_argument("rest_energy: momentum must be nonnegative");
    }
    return std::sqrt(params.m * params.m + params.p * params.p);
}

double kicked_energy(const BouncerParams& params, int sign) {
    if (!(params.m > 0.0)) {
        throw std::invalid_argument("kicked_energy: mass must be positive");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("kicked_energy: sign must be +1 or -1");
    }
    const double q = params.k + sign * params.p;
    return std::sqrt(params.m * params.m + q * q);
}

LiouvilleSupport LiouvilleSupport::from_points(std::vector<SupportPoint> points) {
    LiouvilleSupport support;
    for (const SupportPoint& p : points) {
        if (!std::isfinite(p.e1) || !std::isfinite(p.e2) || !std::isfinite(p.weight)) {
            throw std::invalid_argument("support point has non-finite fields");
        }
        if (!(p.weight > 0.0)) {
            throw std::invalid_argument("support weights must be strictly positive");
        }
        auto match = std::find_if(support.points_.begin(), support.points_.end(),
                                  [&](const SupportPoint& q) {
                                      return std::abs(q.e1 - p.e1) <= kMergeTol &&
                                             std::abs(q.e2 - p.e2) <= kMergeTol;
                                  });
        if (match != support.points_.end()) {
            match->weight += p.weight;
        } else {
            support.points_.push_back(p);
        }
    }
    if (support.points_.empty()) {
        throw std::invalid_argument("support must contain at least one point");
    }
    double sum = 0.0;
    for (const SupportPoint& p : support.points_) sum += p.weight;
    for (SupportPoint& p : support.points_) p.weight /= sum;
    std::sort(support.points_.begin(), support.points_.end(), [](const auto& a, const auto& b) {
        return a.e1 != b.e1 ? a.e1 < b.e1 : a.e2 < b.e2;
    });
    return support;
}

double LiouvilleSupport::total_weight() const {
    double sum = 0.0;
    for (const SupportPoint& p : points_) sum += p.weight;
    return sum;
}

std::vector<std::pair<double, double>> LiouvilleSupport::marginal(int particle) const {
    require_particle_index(particle);
    std::vector<std::pair<double, double>> out;
    for (const SupportPoint& p : points_) {
        const double e = particle == 1 ? p.e1 : p.e2;
        auto match = std::find_if(out.begin(), out.end(), [&](const auto& q) {
            return std::abs(q.first - e) <= kMergeTol;
        });
        if (match != out.end()) {
            match->second += p.weight;
        } else {
            out.emplace_back(e, p.weight);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool supports_equal(const LiouvilleSupport& a, const LiouvilleSupport& b, double tol) {
    if (a.size() != b.size()) return false;
    // Greedy matching; supports are tiny and already merged, so points are
    // pairwise distinct beyond tol and the match is unique.
    std::vector<bool> used(b.size(), false);
    for (const SupportPoint& p : a.points()) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const SupportPoint& q = b.points()[j];
            if (!used[j] && std::abs(p.e1 - q.e1) <= tol && std::abs(p.e2 - q.e2) <= tol &&
                std::abs(p.weight - q.weight) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

LiouvilleSupport support_on_slice(const BouncerParams& params,
                                  const spacetime::SpacelikeSlice& slice,
                                  const MeasurementRecord& record) {
    return support_impl(params, slice, record, /*boosted=*/false);
}

LiouvilleSupport boosted_support_on_slice(const BouncerParams& params,
                                          const spacetime::SpacelikeSlice& slice,
                                          const MeasurementRecord& record) {
    return support_impl(params, slice, record, /*boosted=*/true);
}

LiouvilleSupport collapse(const LiouvilleSupport& support, int particle, double observed) {
    require_particle_index(particle);
    std::vector<SupportPoint> kept;
    for (const SupportPoint& p : support.points()) {
        const double e = particle == 1 ? p.e1 : p.e2;
        if (std::abs(e - observed) <= kMergeTol) {
            kept.push_back(p);
        }
    }
    if (kept.empty()) {
        throw ImpossibleOutcomeError("observed energy " + std::to_string(observed) +
                                     " matches no support point of particle " +
                                     std::to_string(particle));
    }
    return LiouvilleSupport::from_points(std::move(kept));
}

double bouncer_position(const BouncerParams& params, int particle, double t) {
    require_particle_index(particle);
    validate(params);
    const spacetime::FourVector& kick = kick_event(params, particle);
    if (!(t < kick.t)) {
        throw OutOfModelError("bouncer_position: t = " + std::to_string(t) +
                              " is not before the kick at t = " + std::to_string(kick.t) +
                              "; the post-kick trajectory is not modeled");
    }
    const double center = particle == 1 ? params.x_center_1 : params.x_center_2;
    if (params.p == 0.0) {
        return center;
    }
    const double l = params.segment_half_length;
    const double v = params.p / rest_energy(params);
    const double period = 4.0 * l / v;
    const double u = t - period * std::floor(t / period);
    if (u < l / v) {
        return center + v * u;
    }
    if (u < 3.0 * l / v) {
        return center + l - v * (u - l / v);
    }
    return center - l + v * (u - 3.0 * l / v);
}

} // namespace openslice::classical

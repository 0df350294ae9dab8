#pragma once

#include <optional>
#include <vector>

#include "openslice/spacetime.hpp"

namespace openslice::classical {

/// Energy tolerance below which two support points count as the same point.
/// Keeps the 1/2/4 cardinality rule honest when E+ and E- degenerate
/// (k = 0 or p = 0).
inline constexpr double kMergeTol = 1e-9;

/// Two equal point masses bouncing on fixed segments of the x-axis in the
/// magicians' frame, each receiving a momentum kick k at a pinned spacetime
/// event. Energies derived from these parameters are magician-frame values.
struct BouncerParams {
    double m{};                   ///< rest mass, m > 0
    double p{};                   ///< pre-kick momentum magnitude, p >= 0
    double k{};                   ///< kick momentum
    double segment_half_length{}; ///< L > 0
    double x_center_1{};
    double x_center_2{};
    spacetime::FourVector kick_event_1;
    spacetime::FourVector kick_event_2;

    friend bool operator==(const BouncerParams&, const BouncerParams&) = default;
};

/// Checks m > 0, p >= 0, L > 0 and finite kick events. Throws
/// std::invalid_argument on violation. Spacelike separation of the kick
/// events is a scenario property checked by the description-table builder,
/// not assumed here.
void validate(const BouncerParams& params);

/// E0 = sqrt(m^2 + p^2).
double rest_energy(const BouncerParams& params);

/// E(sign) = sqrt(m^2 + (k + sign*p)^2), sign in {+1, -1}.
double kicked_energy(const BouncerParams& params, int sign);

struct SupportPoint {
    double e1{};
    double e2{};
    double weight{};
};

/// Finite weighted point set on the (E1, E2) energy plane. Always stored
/// merged (duplicates within kMergeTol combined), normalized (weights sum
/// to 1) and sorted by (e1, e2).
class LiouvilleSupport {
public:
    /// Merges duplicates, validates strictly positive weights, normalizes.
    static LiouvilleSupport from_points(std::vector<SupportPoint> points);

    const std::vector<SupportPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    double total_weight() const;

    /// Marginal weights over one particle's energy axis, merged within
    /// kMergeTol: list of (energy, weight).
    std::vector<std::pair<double, double>> marginal(int particle) const;

private:
    std::vector<SupportPoint> points_;
};

/// True iff the two supports contain the same points with the same weights,
/// coordinates and weights compared within tol.
bool supports_equal(const LiouvilleSupport& a, const LiouvilleSupport& b, double tol = kMergeTol);

/// Which kicked particles have had their energy measured, and the sign of
/// the pre-kick momentum the measurement revealed.
struct MeasurementRecord {
    std::optional<int> particle_1; ///< +1 -> E+ observed, -1 -> E-
    std::optional<int> particle_2;

    std::optional<int> sign_of(int particle) const {
        return particle == 1 ? particle_1 : particle_2;
    }
};

/// Per-observer Liouville support on the given slice, energies in the
/// magicians' frame. Each particle contributes {E0} if its kick is not
/// before the slice, {E+, E-} with weight 1/2 each if kicked and unmeasured,
/// and {E(sign)} if kicked and measured. The support is the product of the
/// two particle sets. Throws InconsistentRecordError if the record carries a
/// sign for a particle whose kick is not before the slice.
LiouvilleSupport support_on_slice(const BouncerParams& params,
                                  const spacetime::SpacelikeSlice& slice,
                                  const MeasurementRecord& record);

/// Same construction with each energy transformed to the slice's frame,
/// E' = E cosh(chi) - p_x sinh(chi), using the momentum carried by each
/// branch (pre-kick momenta are +-p with weight 1/2 each, so an unkicked
/// particle generally contributes two boosted-energy points).
LiouvilleSupport boosted_support_on_slice(const BouncerParams& params,
                                          const spacetime::SpacelikeSlice& slice,
                                          const MeasurementRecord& record);

/// Keeps only the points whose E(particle) coordinate matches the observed
/// energy within kMergeTol and renormalizes. Throws ImpossibleOutcomeError
/// when nothing matches.
LiouvilleSupport collapse(const LiouvilleSupport& support, int particle, double observed);

/// Pre-kick trajectory: triangle wave of period 4L/v, v = p/E0, starting at
/// the segment center moving in +x at t = 0. Defined only for t strictly
/// before the particle's kick time in the chi = 0 frame; throws
/// OutOfModelError otherwise.
double bouncer_position(const BouncerParams& params, int particle, double t);

} // namespace openslice::classical

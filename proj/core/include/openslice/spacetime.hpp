#pragma once

#include <string_view>

namespace openslice::spacetime {

/// Absolute tolerance for the "event lies exactly on a slice" tie-break.
inline constexpr double kOnSliceTol = 1e-12;

/// Relative tolerance for null-interval classification, scaled by the
/// squared magnitude of the largest displacement component.
inline constexpr double kLightlikeTol = 1e-12;

/// Spacetime point or displacement in natural units (c = 1),
/// metric signature (+,-,-,-).
struct FourVector {
    double t{};
    double x{};
    double y{};
    double z{};

    friend FourVector operator-(const FourVector& a, const FourVector& b) {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend bool operator==(const FourVector&, const FourVector&) = default;
};

bool is_finite(const FourVector& v);

/// Invariant interval s^2 = t^2 - x^2 - y^2 - z^2. Positive: timelike,
/// negative: spacelike, zero: lightlike.
double interval(const FourVector& v);

/// Pure boost along x with rapidity chi:
///   t' = t cosh(chi) - x sinh(chi)
///   x' = -t sinh(chi) + x cosh(chi)
/// Throws std::invalid_argument on non-finite input.
FourVector boost(const FourVector& v, double chi);

enum class CausalClass { TimelikePast, TimelikeFuture, Lightlike, Spacelike };

std::string_view to_string(CausalClass c);

/// Classifies e2 relative to e1 by the sign of the interval of (e2 - e1) and
/// the sign of the time difference. Displacements whose interval vanishes
/// within kLightlikeTol * max-component^2 are Lightlike.
CausalClass causal_relation(const FourVector& e1, const FourVector& e2);

/// Constant-time hyperplane t' = tau of the frame boosted by rapidity chi
/// along x. Spacelike for every finite chi.
struct SpacelikeSlice {
    double chi{};
    double tau{};

    friend bool operator==(const SpacelikeSlice&, const SpacelikeSlice&) = default;
};

/// Time coordinate t'(e) = t cosh(chi) - x sinh(chi) of the event in the
/// slice's frame.
double slice_time(const SpacelikeSlice& slice, const FourVector& e);

/// True iff the event lies strictly to the past of the slice in the slice's
/// frame. Events with |t'(e) - tau| <= kOnSliceTol count as not yet before.
bool before_slice(const SpacelikeSlice& slice, const FourVector& e);

/// True iff the time ordering of eA and eB seen at rapidity +chi is opposite
/// to the ordering seen at -chi. Requires eA, eB simultaneous with distinct x
/// in the chi = 0 frame; throws std::invalid_argument otherwise.
bool ordering_flips(const FourVector& eA, const FourVector& eB, double chi);

} // namespace openslice::spacetime

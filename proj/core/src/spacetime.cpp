#include "openslice/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace openslice::spacetime {

bool is_finite(const FourVector& v) {
    return std::isfinite(v.t) && std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

double interval(const FourVector& v) {
    return v.t * v.t - v.x * v.x - v.y * v.y - v.z * v.z;
}

FourVector boost(const FourVector& v, double chi) {
    if (!is_finite(v)) {
        throw std::invalid_argument("boost: four-vector has non-finite components");
    }
    if (!std::isfinite(chi)) {
        throw std::invalid_argument("boost: rapidity must be finite");
    }
    const double ch = std::cosh(chi);
    const double sh = std::sinh(chi);
    return {v.t * ch - v.x * sh, -v.t * sh + v.x * ch, v.y, v.z};
}

std::string_view to_string(CausalClass c) {
    switch (c) {
        case CausalClass::TimelikePast: return "timelike-past";
        case CausalClass::TimelikeFuture: return "timelike-future";
        case CausalClass::Lightlike: return "lightlike";
        case CausalClass::Spacelike: return "spacelike";
    }
    return "unknown";
}

CausalClass causal_relation(const FourVector& e1, const FourVector& e2) {
    const FourVector d = e2 - e1;
    const double scale = std::max({std::abs(d.t), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
    const double s2 = interval(d);
    if (std::abs(s2) <= kLightlikeTol * scale * scale) {
        return CausalClass::Lightlike;
    }
    if (s2 < 0.0) {
        return CausalClass::Spacelike;
    }
    return d.t > 0.0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
}

double slice_time(const SpacelikeSlice& slice, const FourVector& e) {
    return e.t * std::cosh(slice.chi) - e.x * std::sinh(slice.chi);
}

bool before_slice(const SpacelikeSlice& slice, const FourVector& e) {
    return slice_time(slice, e) < slice.tau - kOnSliceTol;
}

bool ordering_flips(const FourVector& eA, const FourVector& eB, double chi) {
    if (!is_finite(eA) || !is_finite(eB) || !std::isfinite(chi)) {
        throw std::invalid_argument("ordering_flips: non-finite input");
    }
    if (eA.t != eB.t || eA.x == eB.x) {
        throw std::invalid_argument(
            "ordering_flips: events must be simultaneous with distinct x in the chi = 0 frame");
    }
    const SpacelikeSlice plus{chi, 0.0};
    const SpacelikeSlice minus{-chi, 0.0};
    const double d_plus = slice_time(plus, eA) - slice_time(plus, eB);
    const double d_minus = slice_time(minus, eA) - slice_time(minus, eB);
    return d_plus * d_minus < 0.0;
}

} // namespace openslice::spacetime

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <string_view>

#include "openslice/spacetime.hpp"

namespace openslice::quantum {

using Amplitude = std::complex<double>;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kProductTol = 1e-9;
/// Ray equality tolerance: states with |<a|b>| >= 1 - kRayTol are the same
/// physical description.
inline constexpr double kRayTol = 1e-9;

/// Single spin-1/2 amplitude pair over (|z+>, |z->).
struct SpinKet {
    Amplitude up;
    Amplitude down;
};

SpinKet x_plus();
/// |y+-> = (|z+> +- i |z->)/sqrt(2), sign in {+1, -1}.
SpinKet y_eigenket(int sign);

enum class PauliAxis { X, Y, Z };

/// Normalized two-spin amplitude vector over the sigma_z product basis
/// |z+z+>, |z+z->, |z-z+>, |z-z->. Both scenarios of this library only ever
/// produce product states, so construction additionally enforces a rank-1
/// amplitude matrix ("these particles are not entangled").
class TwoSpinState {
public:
    /// Validates norm within kNormTol of 1 and product structure within
    /// kProductTol; throws std::invalid_argument otherwise.
    static TwoSpinState from_amplitudes(const std::array<Amplitude, 4>& amplitudes);

    static TwoSpinState product(const SpinKet& first, const SpinKet& second);

    const std::array<Amplitude, 4>& amplitudes() const { return amp_; }

private:
    explicit TwoSpinState(const std::array<Amplitude, 4>& amp) : amp_(amp) {}
    std::array<Amplitude, 4> amp_{};
};

/// <a|b>.
Amplitude overlap(const TwoSpinState& a, const TwoSpinState& b);

/// Global-phase-insensitive state equality: |<a|b>| = 1 within tol.
bool ray_equal(const TwoSpinState& a, const TwoSpinState& b, double tol = kRayTol);

/// Concurrence-style product check: |det| of the 2x2 amplitude matrix
/// vanishes within tol.
bool is_product(const std::array<Amplitude, 4>& amplitudes, double tol = kProductTol);

/// |x+> (x) |x+>; all four amplitudes equal 1/2.
TwoSpinState prepare_initial();

struct MeasurementResult {
    int outcome;             ///< +-1
    TwoSpinState post_state; ///< renormalized projected state
    double probability;      ///< Born weight of the sampled outcome
};

/// Projective sigma_y measurement on one subsystem. The outcome is sampled
/// with Born probabilities from the engine; the engine is advanced by
/// exactly one draw.
MeasurementResult measure_sigma_y(const TwoSpinState& state, int subsystem,
                                  std::mt19937_64& engine);

/// Deterministic projection branch: applies (1 + outcome*sigma_y)/2 on the
/// subsystem and renormalizes. Throws std::invalid_argument if the branch
/// has zero Born weight.
MeasurementResult project_sigma_y(const TwoSpinState& state, int subsystem, int outcome);

/// <sigma_axis> on one subsystem, in [-1, 1].
double pauli_expectation(const TwoSpinState& state, int subsystem, PauliAxis axis);

enum class Observer { Alice, Bob, Magician };

std::string_view to_string(Observer o);

/// A named observer's simultaneity slice: coordinate time tau at rapidity chi.
struct ObserverSlice {
    Observer observer{};
    double tau{};
    double chi{};

    spacetime::SpacelikeSlice slice() const { return {chi, tau}; }
};

/// Joint assignment of sigma_y results; empty optional = not yet measured.
struct OutcomeBranch {
    std::optional<int> a; ///< first particle (event A side)
    std::optional<int> b; ///< second particle (event B side)
};

/// The state this observer assigns on their slice: each subsystem is the
/// sigma_y eigenket of its recorded outcome if its measurement event lies
/// before the slice, and |x+> otherwise. The branch must supply outcomes for
/// exactly the events before the slice; otherwise InconsistentBranchError.
TwoSpinState description_on_slice(const ObserverSlice& slice, const OutcomeBranch& branch,
                                  const spacetime::FourVector& event_a,
                                  const spacetime::FourVector& event_b);

} // namespace openslice::quantum

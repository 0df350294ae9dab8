#include "openslice/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "openslice/errors.hpp"
#include "openslice/random.hpp"

namespace openslice::quantum {

namespace {

constexpr Amplitude kI{0.0, 1.0};

double norm_squared(const std::array<Amplitude, 4>& amp) {
    double n = 0.0;
    for (const Amplitude& a : amp) n += std::norm(a);
    return n;
}

void require_subsystem(int subsystem) {
    if (subsystem != 1 && subsystem != 2) {
        throw std::invalid_argument("subsystem must be 1 or 2, got " + std::to_string(subsystem));
    }
}

void require_sign(int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("outcome sign must be +1 or -1, got " + std::to_string(sign));
    }
}

/// sigma_axis acting on one subsystem of the product basis.
std::array<Amplitude, 4> apply_pauli(const std::array<Amplitude, 4>& amp, int subsystem,
                                     PauliAxis axis) {
    // Single-spin action over (up, down) components.
    auto act = [axis](Amplitude up, Amplitude down) -> std::pair<Amplitude, Amplitude> {
        switch (axis) {
            case PauliAxis::X: return {down, up};
            case PauliAxis::Y: return {-kI * down, kI * up};
            case PauliAxis::Z: return {up, -down};
        }
        return {up, down};
    };
    std::array<Amplitude, 4> out{};
    if (subsystem == 1) {
        for (int i2 = 0; i2 < 2; ++i2) {
            auto [up, down] = act(amp[0 * 2 + i2], amp[1 * 2 + i2]);
            out[0 * 2 + i2] = up;
            out[1 * 2 + i2] = down;
        }
    } else {
        for (int i1 = 0; i1 < 2; ++i1) {
            auto [up, down] = act(amp[i1 * 2 + 0], amp[i1 * 2 + 1]);
            out[i1 * 2 + 0] = up;
            out[i1 * 2 + 1] = down;
        }
    }
    return out;
}

} // namespace

SpinKet x_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r};
}

SpinKet y_eigenket(int sign) {
    require_sign(sign);
    const double r = 1.0 / std::sqrt(2.0);
    return {r, static_cast<double>(sign) * kI * r};
}

TwoSpinState TwoSpinState::from_amplitudes(const std::array<Amplitude, 4>& amplitudes) {
    for (const Amplitude& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("two-spin amplitudes must be finite");
        }
    }
    const double n = norm_squared(amplitudes);
    if (std::abs(std::sqrt(n) - 1.0) > kNormTol) {
        throw std::invalid_argument("two-spin state must be normalized, got |psi|^2 = " +
                                    std::to_string(n));
    }
    if (!is_product(amplitudes, kProductTol)) {
        throw std::invalid_argument("two-spin state must be a product state");
    }
    return TwoSpinState(amplitudes);
}

TwoSpinState TwoSpinState::product(const SpinKet& first, const SpinKet& second) {
    return from_amplitudes({first.up * second.up, first.up * second.down,
                            first.down * second.up, first.down * second.down});
}

Amplitude overlap(const TwoSpinState& a, const TwoSpinState& b) {
    Amplitude s{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return s;
}

bool ray_equal(const TwoSpinState& a, const TwoSpinState& b, double tol) {
    return std::abs(overlap(a, b)) >= 1.0 - tol;
}

bool is_product(const std::array<Amplitude, 4>& amplitudes, double tol) {
    const Amplitude det = amplitudes[0] * amplitudes[3] - amplitudes[1] * amplitudes[2];
    return std::abs(det) <= tol;
}

TwoSpinState prepare_initial() {
    return TwoSpinState::product(x_plus(), x_plus());
}

MeasurementResult project_sigma_y(const TwoSpinState& state, int subsystem, int outcome) {
    require_subsystem(subsystem);
    require_sign(outcome);
    const std::array<Amplitude, 4> rotated = apply_pauli(state.amplitudes(), subsystem, PauliAxis::Y);
    std::array<Amplitude, 4> projected{};
    for (int i = 0; i < 4; ++i) {
        projected[i] = 0.5 * (state.amplitudes()[i] + static_cast<double>(outcome) * rotated[i]);
    }
    const double weight = norm_squared(projected);
    if (weight <= 0.0) {
        throw std::invalid_argument("projection branch has zero Born weight");
    }
    const double inv = 1.0 / std::sqrt(weight);
    for (Amplitude& a : projected) a *= inv;
    return {outcome, TwoSpinState::from_amplitudes(projected), weight};
}

MeasurementResult measure_sigma_y(const TwoSpinState& state, int subsystem,
                                  std::mt19937_64& engine) {
    require_subsystem(subsystem);
    const MeasurementResult plus = project_sigma_y(state, subsystem, +1);
    const double u = rng::uniform01(engine);
    if (u < plus.probability) {
        return plus;
    }
    return project_sigma_y(state, subsystem, -1);
}

double pauli_expectation(const TwoSpinState& state, int subsystem, PauliAxis axis) {
    require_subsystem(subsystem);
    const std::array<Amplitude, 4> acted = apply_pauli(state.amplitudes(), subsystem, axis);
    Amplitude s{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        s += std::conj(state.amplitudes()[i]) * acted[i];
    }
    return s.real();
}

std::string_view to_string(Observer o) {
    switch (o) {
        case Observer::Alice: return "alice";
        case Observer::Bob: return "bob";
        case Observer::Magician: return "magician";
    }
    return "unknown";
}

TwoSpinState description_on_slice(const ObserverSlice& slice, const OutcomeBranch& branch,
                                  const spacetime::FourVector& event_a,
                                  const spacetime::FourVector& event_b) {
    const spacetime::SpacelikeSlice plane = slice.slice();
    const bool a_done = spacetime::before_slice(plane, event_a);
    const bool b_done = spacetime::before_slice(plane, event_b);
    auto factor = [&](bool done, const std::optional<int>& outcome,
                      const char* label) -> SpinKet {
        if (done && !outcome) {
            throw InconsistentBranchError(std::string("branch supplies no outcome for event ") +
                                          label + ", which lies before the slice");
        }
        if (!done && outcome) {
            throw InconsistentBranchError(std::string("branch supplies an outcome for event ") +
                                          label + ", which is not before the slice");
        }
        return done ? y_eigenket(*outcome) : x_plus();
    };
    return TwoSpinState::product(factor(a_done, branch.a, "A"), factor(b_done, branch.b, "B"));
}

} // namespace openslice::quantum

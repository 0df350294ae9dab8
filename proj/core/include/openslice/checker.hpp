#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "openslice/classical.hpp"
#include "openslice/quantum.hpp"
#include "openslice/spacetime.hpp"

namespace openslice::checker {

/// Residuals below this are "zero": a linear map reproducing the table
/// exactly exists, so a function certainly exists.
inline constexpr double kResidualZeroTol = 1e-9;

/// One outcome branch with the descriptions the two observers assign on
/// their own slices. The description kind is fixed per table, which realizes
/// the rows-share-one-kind invariant in the type system.
struct QuantumRow {
    quantum::OutcomeBranch branch; ///< full (a, b) assignment of the branch
    quantum::TwoSpinState left;    ///< Alice's slice description
    quantum::TwoSpinState right;   ///< Bob's slice description
};

struct QuantumTable {
    std::vector<QuantumRow> rows;
};

struct SignPair {
    int s1;
    int s2;
};

struct ClassicalRow {
    SignPair branch;
    classical::LiouvilleSupport left;
    classical::LiouvilleSupport right;
};

struct ClassicalTable {
    std::vector<ClassicalRow> rows;
};

/// All four sigma_y branches (a, b) in the row order (+,+), (+,-), (-,+),
/// (-,-); left = Alice's description, right = Bob's. Requires the two
/// measurement events spacelike-separated, Alice's slice after event A and
/// before event B, Bob's slice the reverse, and opposite-sign rapidities;
/// throws InvalidScenarioError naming the violated precondition.
QuantumTable build_quantum_table(const spacetime::FourVector& event_a,
                                 const spacetime::FourVector& event_b,
                                 const quantum::ObserverSlice& alice_slice,
                                 const quantum::ObserverSlice& bob_slice);

/// All four pre-kick sign branches (s1, s2), same row order. Left = support
/// on Alice's slice with particle 1 measured (kick 2 still ahead of the
/// slice), right = support on Bob's slice with particle 2 measured.
ClassicalTable build_classical_table(const classical::BouncerParams& params,
                                     const spacetime::SpacelikeSlice& alice_slice,
                                     const spacetime::SpacelikeSlice& bob_slice);

struct FunctionCheck {
    bool function_exists;
    /// Present iff function_exists is false: the first row pair (in row
    /// order) with equal left descriptions and unequal right descriptions.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Decides whether ANY outcome-independent map (linear or not) could send
/// left descriptions to right descriptions: it cannot iff two rows share the
/// left description but disagree on the right. State comparison is
/// ray-based; support comparison is set-based, both at 1e-9.
FunctionCheck check_function_existence(const QuantumTable& table);
FunctionCheck check_function_existence(const ClassicalTable& table);

struct LinearFit {
    /// sqrt(min_T sum_rows |T*left - right|^2): Frobenius-norm residual of
    /// the best unconstrained linear map.
    double residual;
    /// |T*left_r - right_r| for the optimal T, one entry per row.
    std::vector<double> per_row_errors;
};

/// Least-squares fit of a single linear map sending every left description
/// to its right description. States enter as plain complex 4-vectors;
/// classical supports enter through the probability-vector embedding below.
/// Throws std::invalid_argument on an empty table.
LinearFit fit_best_linear_map(const QuantumTable& table);
LinearFit fit_best_linear_map(const ClassicalTable& table);

/// Basis and coordinates of the probability-vector embedding used by the
/// classical fit: the basis is the union of all support points across rows
/// (both sides), merged within classical::kMergeTol; each description
/// becomes its weight vector over that basis.
struct ClassicalEmbedding {
    std::vector<std::pair<double, double>> basis; ///< (e1, e2) points
    std::vector<std::vector<double>> lefts;       ///< one weight vector per row
    std::vector<std::vector<double>> rights;
};

ClassicalEmbedding embed(const ClassicalTable& table);

/// Existence check plus linear fit, the full machine verdict for one table.
struct CheckVerdict {
    FunctionCheck existence;
    LinearFit fit;
};

CheckVerdict verdict(const QuantumTable& table);
CheckVerdict verdict(const ClassicalTable& table);

} // namespace openslice::checker

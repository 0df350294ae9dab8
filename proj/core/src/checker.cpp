#include "openslice/checker.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "openslice/errors.hpp"

namespace openslice::checker {

namespace {

using spacetime::FourVector;
using spacetime::SpacelikeSlice;

void require_spacelike(const FourVector& a, const FourVector& b, const char* what) {
    if (spacetime::causal_relation(a, b) != spacetime::CausalClass::Spacelike) {
        throw InvalidScenarioError(std::string(what) + " must be spacelike-separated");
    }
}

void require_sandwich(const SpacelikeSlice& slice, const FourVector& own_event,
                      const FourVector& other_event, const char* who) {
    if (!spacetime::before_slice(slice, own_event)) {
        throw InvalidScenarioError(std::string(who) +
                                   "'s slice must lie after that observer's own event");
    }
    if (spacetime::before_slice(slice, other_event)) {
        throw InvalidScenarioError(std::string(who) +
                                   "'s slice must lie before the other observer's event");
    }
}

template <typename Table, typename EqualFn>
FunctionCheck existence_impl(const Table& table, EqualFn equal_left, EqualFn equal_right) {
    const auto& rows = table.rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (equal_left(rows[i], rows[j]) && !equal_right(rows[i], rows[j])) {
                return {false, std::make_pair(i, j)};
            }
        }
    }
    return {true, std::nullopt};
}

/// min_T ||T L - R||_F over unconstrained complex maps; columns of L and R
/// are the embedded descriptions. Solved column-wise through the transposed
/// system; the complete orthogonal decomposition handles the rank-deficient
/// L that repeated left descriptions produce.
LinearFit least_squares(const Eigen::MatrixXcd& lefts, const Eigen::MatrixXcd& rights) {
    const Eigen::MatrixXcd t_transposed =
        lefts.transpose().completeOrthogonalDecomposition().solve(rights.transpose());
    const Eigen::MatrixXcd error = t_transposed.transpose() * lefts - rights;
    LinearFit fit;
    fit.per_row_errors.reserve(static_cast<std::size_t>(error.cols()));
    for (Eigen::Index c = 0; c < error.cols(); ++c) {
        fit.per_row_errors.push_back(error.col(c).norm());
    }
    fit.residual = error.norm();
    return fit;
}

} // namespace

QuantumTable build_quantum_table(const FourVector& event_a, const FourVector& event_b,
                                 const quantum::ObserverSlice& alice_slice,
                                 const quantum::ObserverSlice& bob_slice) {
    require_spacelike(event_a, event_b, "measurement events");
    if (alice_slice.chi * bob_slice.chi >= 0.0) {
        throw InvalidScenarioError("Alice's and Bob's rapidities must have opposite signs");
    }
    require_sandwich(alice_slice.slice(), event_a, event_b, "Alice");
    require_sandwich(bob_slice.slice(), event_b, event_a, "Bob");

    QuantumTable table;
    for (int a : {+1, -1}) {
        for (int b : {+1, -1}) {
            QuantumRow row{
                quantum::OutcomeBranch{a, b},
                quantum::description_on_slice(alice_slice, {a, std::nullopt}, event_a, event_b),
                quantum::description_on_slice(bob_slice, {std::nullopt, b}, event_a, event_b)};
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

ClassicalTable build_classical_table(const classical::BouncerParams& params,
                                     const SpacelikeSlice& alice_slice,
                                     const SpacelikeSlice& bob_slice) {
    classical::validate(params);
    require_spacelike(params.kick_event_1, params.kick_event_2, "kick events");
    require_sandwich(alice_slice, params.kick_event_1, params.kick_event_2, "Alice");
    require_sandwich(bob_slice, params.kick_event_2, params.kick_event_1, "Bob");

    ClassicalTable table;
    for (int s1 : {+1, -1}) {
        for (int s2 : {+1, -1}) {
            ClassicalRow row{
                SignPair{s1, s2},
                classical::support_on_slice(params, alice_slice, {s1, std::nullopt}),
                classical::support_on_slice(params, bob_slice, {std::nullopt, s2})};
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

FunctionCheck check_function_existence(const QuantumTable& table) {
    auto left_eq = [](const QuantumRow& a, const QuantumRow& b) {
        return quantum::ray_equal(a.left, b.left);
    };
    auto right_eq = [](const QuantumRow& a, const QuantumRow& b) {
        return quantum::ray_equal(a.right, b.right);
    };
    return existence_impl(table, +left_eq, +right_eq);
}

FunctionCheck check_function_existence(const ClassicalTable& table) {
    auto left_eq = [](const ClassicalRow& a, const ClassicalRow& b) {
        return classical::supports_equal(a.left, b.left);
    };
    auto right_eq = [](const ClassicalRow& a, const ClassicalRow& b) {
        return classical::supports_equal(a.right, b.right);
    };
    return existence_impl(table, +left_eq, +right_eq);
}

LinearFit fit_best_linear_map(const QuantumTable& table) {
    if (table.rows.empty()) {
        throw std::invalid_argument("fit_best_linear_map: empty table");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    Eigen::MatrixXcd lefts(4, n);
    Eigen::MatrixXcd rights(4, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const QuantumRow& row = table.rows[static_cast<std::size_t>(r)];
        for (Eigen::Index i = 0; i < 4; ++i) {
            lefts(i, r) = row.left.amplitudes()[static_cast<std::size_t>(i)];
            rights(i, r) = row.right.amplitudes()[static_cast<std::size_t>(i)];
        }
    }
    return least_squares(lefts, rights);
}

ClassicalEmbedding embed(const ClassicalTable& table) {
    ClassicalEmbedding embedding;
    auto basis_index = [&](double e1, double e2) {
        for (std::size_t i = 0; i < embedding.basis.size(); ++i) {
            if (std::abs(embedding.basis[i].first - e1) <= classical::kMergeTol &&
                std::abs(embedding.basis[i].second - e2) <= classical::kMergeTol) {
                return i;
            }
        }
        embedding.basis.emplace_back(e1, e2);
        return embedding.basis.size() - 1;
    };
    for (const ClassicalRow& row : table.rows) {
        for (const classical::SupportPoint& p : row.left.points()) basis_index(p.e1, p.e2);
        for (const classical::SupportPoint& p : row.right.points()) basis_index(p.e1, p.e2);
    }
    auto to_vector = [&](const classical::LiouvilleSupport& support) {
        std::vector<double> v(embedding.basis.size(), 0.0);
        for (const classical::SupportPoint& p : support.points()) {
            v[basis_index(p.e1, p.e2)] += p.weight;
        }
        return v;
    };
    for (const ClassicalRow& row : table.rows) {
        embedding.lefts.push_back(to_vector(row.left));
        embedding.rights.push_back(to_vector(row.right));
    }
    return embedding;
}

LinearFit fit_best_linear_map(const ClassicalTable& table) {
    if (table.rows.empty()) {
        throw std::invalid_argument("fit_best_linear_map: empty table");
    }
    const ClassicalEmbedding embedding = embed(table);
    const Eigen::Index dim = static_cast<Eigen::Index>(embedding.basis.size());
    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    Eigen::MatrixXcd lefts(dim, n);
    Eigen::MatrixXcd rights(dim, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            lefts(i, r) = embedding.lefts[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
            rights(i, r) = embedding.rights[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
        }
    }
    return least_squares(lefts, rights);
}

CheckVerdict verdict(const QuantumTable& table) {
    return {check_function_existence(table), fit_best_linear_map(table)};
}

CheckVerdict verdict(const ClassicalTable& table) {
    return {check_function_existence(table), fit_best_linear_map(table)};
}

} // namespace openslice::checker

// Acceptance suite: one line per criterion, nonzero exit iff any fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "openslice/bell.hpp"
#include "openslice/checker.hpp"
#include "openslice/classical.hpp"
#include "openslice/config.hpp"
#include "openslice/quantum.hpp"
#include "openslice/random.hpp"
#include "openslice/spacetime.hpp"

namespace fs = std::filesystem;
using namespace openslice;
using spacetime::FourVector;
using spacetime::SpacelikeSlice;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
    bool pass = false;
    std::string detail;
    try {
        pass = body();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!pass && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

const FourVector kEventA{0.0, -1.0, 0.0, 0.0};
const FourVector kEventB{0.0, 1.0, 0.0, 0.0};

classical::BouncerParams worked_params(double k) {
    return {3.0, 4.0, k, 1.0, -1.0, 1.0, kEventA, kEventB};
}

bool supports_match(const classical::LiouvilleSupport& support,
                    std::vector<classical::SupportPoint> expected_points) {
    return classical::supports_equal(
        support, classical::LiouvilleSupport::from_points(std::move(expected_points)), 1e-12);
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

bool fig1_time_ordering_reverses() {
    for (double chi : {0.1, 0.5, 1.0, 2.0}) {
        const int plus = sign_of(spacetime::slice_time({chi, 0.0}, kEventA) -
                                 spacetime::slice_time({chi, 0.0}, kEventB));
        const int minus = sign_of(spacetime::slice_time({-chi, 0.0}, kEventA) -
                                  spacetime::slice_time({-chi, 0.0}, kEventB));
        if (plus == 0 || minus == 0 || plus != -minus) return false;
        if (!spacetime::ordering_flips(kEventA, kEventB, chi)) return false;
    }
    return true;
}

bool fig2_supports_reproduced() {
    const classical::BouncerParams params = worked_params(4.0);
    const double e_plus = std::sqrt(73.0);
    const auto alice = classical::support_on_slice(params, {-0.5, 0.0}, {});
    const auto bob = classical::support_on_slice(params, {0.5, 0.0}, {});
    return supports_match(alice, {{e_plus, 5.0, 0.5}, {3.0, 5.0, 0.5}}) &&
           supports_match(bob, {{5.0, e_plus, 0.5}, {5.0, 3.0, 0.5}});
}

bool cardinality_rule_across_slices() {
    const classical::BouncerParams params = worked_params(4.0);
    for (int i = 0; i <= 60; ++i) {
        const double chi = -3.0 + 0.1 * static_cast<double>(i);
        const double t1 = spacetime::slice_time({chi, 0.0}, params.kick_event_1);
        const double t2 = spacetime::slice_time({chi, 0.0}, params.kick_event_2);
        const double lo = std::min(t1, t2) - 1.0;
        const double hi = std::max(t1, t2) + 1.0;
        for (int j = 0; j <= 40; ++j) {
            const double tau = lo + (hi - lo) * static_cast<double>(j) / 40.0;
            const SpacelikeSlice slice{chi, tau};
            const int kicked = (spacetime::before_slice(slice, params.kick_event_1) ? 1 : 0) +
                               (spacetime::before_slice(slice, params.kick_event_2) ? 1 : 0);
            const auto support = classical::support_on_slice(params, slice, {});
            if (support.size() != (1u << kicked)) return false;
            const double expected_weight = 1.0 / static_cast<double>(1u << kicked);
            double total = 0.0;
            for (const classical::SupportPoint& p : support.points()) {
                if (std::abs(p.weight - expected_weight) > 1e-12) return false;
                total += p.weight;
            }
            if (std::abs(total - 1.0) > 1e-12) return false;
        }
    }
    return true;
}

bool quantum_no_map_theorem() {
    const quantum::ObserverSlice alice{quantum::Observer::Alice, 0.0, -0.5};
    const quantum::ObserverSlice bob{quantum::Observer::Bob, 0.0, 0.5};
    const checker::QuantumTable table =
        checker::build_quantum_table(kEventA, kEventB, alice, bob);
    const auto existence = checker::check_function_existence(table);
    if (existence.function_exists || !existence.witness) return false;
    const auto& row_i = table.rows[existence.witness->first];
    const auto& row_j = table.rows[existence.witness->second];
    if (!(row_i.branch.a && row_j.branch.a && *row_i.branch.a == +1 && *row_j.branch.a == +1)) {
        return false;
    }
    const auto fit = checker::fit_best_linear_map(table);
    return fit.residual >= 1.0 - 1e-9;
}

bool classical_no_map_theorem() {
    for (double k : {1.0, 2.0, 4.0}) {
        const checker::ClassicalTable table =
            checker::build_classical_table(worked_params(k), {-0.5, 0.0}, {0.5, 0.0});
        if (checker::check_function_existence(table).function_exists) return false;
    }
    const checker::ClassicalTable degenerate =
        checker::build_classical_table(worked_params(0.0), {-0.5, 0.0}, {0.5, 0.0});
    return checker::check_function_existence(degenerate).function_exists;
}

bool born_rule_frequencies() {
    const int n = 100000;
    const double band = 4.0 / std::sqrt(static_cast<double>(n));
    const quantum::TwoSpinState initial = quantum::prepare_initial();
    for (int subsystem : {1, 2}) {
        auto engine = rng::make_engine(1905, "acceptance-born", static_cast<std::uint64_t>(subsystem));
        int plus = 0;
        for (int i = 0; i < n; ++i) {
            if (quantum::measure_sigma_y(initial, subsystem, engine).outcome == +1) ++plus;
        }
        const double frequency = static_cast<double>(plus) / n;
        if (std::abs(frequency - 0.5) > band) return false;
    }
    return true;
}

bool bell_contrast() {
    const bell::AnalyzerSettings settings = bell::standard_quadruple();
    const double quantum_s = std::abs(bell::chsh(settings, bell::CorrelationModel::Quantum));
    if (std::abs(quantum_s - 2.0 * std::sqrt(2.0)) > 1e-12) return false;
    const double classical_s =
        std::abs(bell::chsh(settings, bell::CorrelationModel::ClassicalAnalytic));
    if (std::abs(classical_s - 2.0) > 1e-12) return false;
    return bell::classical_chsh_bound_scan(10000, 1905) <= 2.0 + 1e-9;
}

bool frame_independent_marginals() {
    const classical::BouncerParams params = worked_params(4.0);
    const double e_plus = classical::kicked_energy(params, +1);
    const double e_minus = classical::kicked_energy(params, -1);
    const quantum::TwoSpinState initial = quantum::prepare_initial();
    for (int i = 0; i <= 60; ++i) {
        const double chi = -3.0 + 0.1 * static_cast<double>(i);
        const double t1 = spacetime::slice_time({chi, 0.0}, params.kick_event_1);
        const double t2 = spacetime::slice_time({chi, 0.0}, params.kick_event_2);

        // classical: on any slice after kick 1, the E1 marginal is 1/2 at E-
        // and 1/2 at E+, whatever else the slice contains
        for (double tau : {t1 + 0.4, std::max(t1, t2) + 1.0}) {
            const auto support = classical::support_on_slice(params, {chi, tau}, {});
            const auto marginal = support.marginal(1);
            if (marginal.size() != 2) return false;
            if (std::abs(marginal[0].first - e_minus) > 1e-12 ||
                std::abs(marginal[0].second - 0.5) > 1e-12 ||
                std::abs(marginal[1].first - e_plus) > 1e-12 ||
                std::abs(marginal[1].second - 0.5) > 1e-12) {
                return false;
            }
        }

        // quantum: P(sigma_y = +1) for either particle is exactly 1/2 on
        // every slice, whether predicted (Born weight of the slice
        // description) or already settled (branch prior from the prepared
        // state)
        for (double tau : {std::min(t1, t2) - 1.0, 0.5 * (t1 + t2), std::max(t1, t2) + 1.0}) {
            const SpacelikeSlice slice{chi, tau};
            for (int subsystem : {1, 2}) {
                const FourVector& event = subsystem == 1 ? kEventA : kEventB;
                double probability_plus;
                if (spacetime::before_slice(slice, event)) {
                    probability_plus = quantum::project_sigma_y(initial, subsystem, +1).probability;
                } else {
                    quantum::OutcomeBranch branch;
                    if (spacetime::before_slice(slice, kEventA) && subsystem != 1) branch.a = +1;
                    if (spacetime::before_slice(slice, kEventB) && subsystem != 2) branch.b = +1;
                    const quantum::TwoSpinState description = quantum::description_on_slice(
                        {quantum::Observer::Magician, tau, chi}, branch, kEventA, kEventB);
                    probability_plus =
                        quantum::project_sigma_y(description, subsystem, +1).probability;
                }
                if (std::abs(probability_plus - 0.5) > 1e-12) return false;
            }
        }
    }
    return true;
}

// criterion 9: byte-identical reruns of every CLI subcommand

bool run_cli(const std::string& args) {
    const std::string command = std::string(OPENSLICE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool directories_identical(const fs::path& a, const fs::path& b) {
    std::vector<fs::path> names;
    for (const auto& entry : fs::directory_iterator(a)) {
        names.push_back(entry.path().filename());
    }
    std::size_t b_count = 0;
    for (const auto& entry : fs::directory_iterator(b)) {
        (void)entry;
        ++b_count;
    }
    if (b_count != names.size()) return false;
    for (const fs::path& name : names) {
        if (!fs::exists(b / name)) return false;
        if (slurp(a / name) != slurp(b / name)) return false;
    }
    return !names.empty();
}

bool cli_outputs_deterministic() {
    const fs::path root =
        fs::temp_directory_path() / ("openslice_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    const std::vector<std::string> commands{
        "figures --format csv --boosted-energies",
        "check",
        "chsh",
        "simulate",
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const fs::path first = root / ("run_" + std::to_string(i) + "_a");
        const fs::path second = root / ("run_" + std::to_string(i) + "_b");
        if (!run_cli(commands[i] + " --out " + first.string())) return false;
        if (!run_cli(commands[i] + " --out " + second.string())) return false;
        if (!directories_identical(first, second)) return false;
    }
    fs::remove_all(root);
    return true;
}

} // namespace

int main() {
    std::cout << "openslice acceptance criteria\n";
    criterion(1, "time ordering of A and B reverses between +chi and -chi",
              fig1_time_ordering_reverses);
    criterion(2, "energy-plane supports on the t_A = 0 and t_B = 0 slices",
              fig2_supports_reproduced);
    criterion(3, "support cardinality 1/2/4 with uniform weights across the slice sweep",
              cardinality_rule_across_slices);
    criterion(4, "quantum descriptions admit no map; best linear residual >= 1",
              quantum_no_map_theorem);
    criterion(5, "classical descriptions admit no map for k > 0, and do at k = 0",
              classical_no_map_theorem);
    criterion(6, "sigma_y outcomes are equiprobable over 100000 seeded trials",
              born_rule_frequencies);
    criterion(7, "CHSH: quantum 2*sqrt(2), classical 2, bound scan <= 2",
              bell_contrast);
    criterion(8, "outcome statistics are identical on every observer's slice",
              frame_independent_marginals);
    criterion(9, "CLI reruns with identical config and seed are byte-identical",
              cli_outputs_deterministic);
    if (failures > 0) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run from the repository root so the preset files resolve.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "inls/config.hpp"
#include "inls/verify.hpp"

using namespace inls;

namespace {

int g_failures = 0;

void report(int number, const std::string& title,
            const std::vector<CheckResult>& checks, double wall_s) {
    const bool ok = all_pass(checks);
    if (!ok) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), wall_s);
    for (const auto& c : checks) {
        std::printf("       %-34s %-4s measured=%.6g  (%s)\n", c.name.c_str(),
                    c.pass ? "ok" : "FAIL", c.measured, c.detail.c_str());
    }
    std::fflush(stdout);
}

void run(int number, const std::string& title,
         const std::function<std::vector<CheckResult>()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> checks;
    try {
        checks = fn();
    } catch (const std::exception& e) {
        checks.push_back({"threw exception", false, 0.0, e.what()});
    }
    const auto t1 = std::chrono::steady_clock::now();
    report(number, title, checks, std::chrono::duration<double>(t1 - t0).count());
}

}  // namespace

int main() {
    run(1, "ground-state closed form (1d cubic)", criterion_ground_state_closed_form);
    run(2, "reference-model ground state", criterion_paper_ground_state);

    // criteria 3-4 share one coarse/half evolution pair
    ConservationArtifacts cons;
    run(3, "conservation on the reference run", [&] {
        cons = run_conservation_pair(conservation_reference_config());
        return criterion_conservation(cons);
    });
    run(4, "virial identity convergence", [&] { return criterion_virial_identity(cons); });

    run(5, "virial weight invariants", criterion_weight_invariants);
    run(6, "commutator identity", [] { return criterion_commutator(12345); });
    run(7, "dispersive decay", criterion_dispersive_decay);
    run(8, "integrator cross-validation", criterion_integrator_order);
    run(9, "scaling covariance", criterion_scaling_covariance);

    // criteria 10-12 share the scattering-preset run
    ScatterArtifacts scatter;
    run(10, "scattering/blowup dichotomy", [&] {
        scatter = run_scatter_preset(
            config_from_ini(parse_ini_file(resolve_preset("scatter-0.9Q", "presets"))));
        const auto blow =
            config_from_ini(parse_ini_file(resolve_preset("blowup-neg-energy", "presets")));
        return criterion_dichotomy(scatter, blow);
    });
    run(11, "Morawetz and evacuation averages", [&] { return criterion_evacuation(scatter); });
    run(12, "sub-threshold coercivity margins", [&] { return criterion_coercivity(scatter); });

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}

// Acceptance suite: runs every verification criterion at the shipped
// defaults (n = 256, modes 0..6, seed 42) and prints one line per criterion.

#include "nlh/verification.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    nlh::VerifyConfig cfg;  // defaults: 256 nodes, map scale 1, kmax 6, seed 42
    nlh::VerificationReport rep = nlh::run_verification_suite(cfg);

    // criterion labels for the printed summary
    const std::vector<std::pair<std::string, std::string>> layout = {
        {"newton_identity_grid", " 1a"},
        {"newton_identity_oracle", " 1b"},
        {"pde_identity", " 2 "},
        {"kernel_l0_residual", " 3a"},
        {"l0_omega_identity", " 3b"},
        {"rayleigh_quotient_l0", " 3c"},
        {"kernel_l1_residual", " 4a"},
        {"l1_zero_mode", " 4b"},
        {"no_kernel_k2plus", " 5 "},
        {"monotonicity_gap", " 6 "},
        {"nonnegativity", " 7 "},
        {"kernel_expansion", " 8 "},
        {"addition_dimension", " 9 "},
        {"shooting_appendix", "10 "},
        {"prefix_dense_equivalence", "11a"},
        {"prefix_speedup", "11b"},
    };
    std::map<std::string, const nlh::CheckRecord*> by_name;
    for (const auto& c : rep.checks) by_name[c.name] = &c;

    int failures = 0;
    for (const auto& [name, tag] : layout) {
        auto it = by_name.find(name);
        if (it == by_name.end()) {
            std::printf("[%s] FAIL  %-26s (missing record)\n", tag.c_str(), name.c_str());
            ++failures;
            continue;
        }
        const nlh::CheckRecord& c = *it->second;
        if (!c.pass) ++failures;
        std::printf("[%s] %s  %-26s value=%-13.6g tol=%-10.4g %8.1f ms\n", tag.c_str(),
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance,
                    c.runtime_ms);
    }
    const double total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/%zu criteria passed in %.2f s\n", (int)layout.size() - failures,
                layout.size(), total_s);
    if (total_s >= 60.0) {
        std::printf("FAIL: suite exceeded the 60 s budget\n");
        ++failures;
    }
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lame {

// Central numeric policy. Every tolerance, cap and grid size that the
// library consults lives here so a run can be reproduced from its echo.
struct NumericPolicy {
    // Root finding.
    double root_tol = 1e-10;            // backward error gate per root
    double root_cluster_radius = 1e-7;  // scaled by (1 + |root|)
    int root_max_sweeps = 500;

    // Spectral solves.
    double solver_tol = 1e-10;          // relative ODE residual gate
    int newton_max_iters = 200;
    double newton_damping_floor = 9.5367431640625e-7;  // 2^-20
    double jacobian_condition_max = 1e14;
    double distinct_separation = 1e-6;  // Hausdorff gap between solutions
    int enumeration_cap = 10000;
    int multistart_tries = 64;

    // Certificates.
    double lp_tol = 1e-9;               // transfer certificate feasibility
    double lp_perturbation = 1e-11;     // right-hand-side nudge on stall
    int lp_pivot_budget = 200000;
    double weight_sum_tol = 1e-12;
    double barycenter_tol = 1e-9;
    double hinge_tol = 1e-8;            // slack >= -hinge_tol * scale
    int hinge_angles = 32;
    int hinge_offsets = 32;

    // Measures.
    double atom_merge_radius = 1e-10;
    double potential_cutoff = 1e-14;    // below this distance report -inf
    double moment_tol = 1e-9;
    double potential_tol = 1e-9;
    int moment_max = 6;
    int potential_circle_points = 64;
    double hull_slack = 1e-8;

    // Classical checks.
    int offset_grid_points = 64;        // |z - c| family on [-1, 1]
    double classical_tol = 1e-9;
    int arcsine_nodes = 256;
    int subset_pole_cap = 8;            // elementary-symmetric enumeration

    int jobs = 1;
};

// Named override used by the CLI; unknown names are a configuration error.
void apply_policy_override(NumericPolicy& policy, const std::string& name, double value);

}  // namespace lame

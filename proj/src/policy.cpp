#include "lame/policy.hpp"

#include <cmath>

namespace lame {

void apply_policy_override(NumericPolicy& p, const std::string& name, double value) {
    auto as_int = [&](int& slot) {
        if (value < 1.0 || value != std::floor(value))
            throw std::invalid_argument("policy override '" + name + "' must be a positive integer");
        slot = static_cast<int>(value);
    };
    if (name == "root_tol") p.root_tol = value;
    else if (name == "root_cluster_radius") p.root_cluster_radius = value;
    else if (name == "root_max_sweeps") as_int(p.root_max_sweeps);
    else if (name == "solver_tol") p.solver_tol = value;
    else if (name == "newton_max_iters") as_int(p.newton_max_iters);
    else if (name == "newton_damping_floor") p.newton_damping_floor = value;
    else if (name == "jacobian_condition_max") p.jacobian_condition_max = value;
    else if (name == "distinct_separation") p.distinct_separation = value;
    else if (name == "enumeration_cap") as_int(p.enumeration_cap);
    else if (name == "multistart_tries") as_int(p.multistart_tries);
    else if (name == "lp_tol") p.lp_tol = value;
    else if (name == "lp_perturbation") p.lp_perturbation = value;
    else if (name == "lp_pivot_budget") as_int(p.lp_pivot_budget);
    else if (name == "weight_sum_tol") p.weight_sum_tol = value;
    else if (name == "barycenter_tol") p.barycenter_tol = value;
    else if (name == "hinge_tol") p.hinge_tol = value;
    else if (name == "hinge_angles") as_int(p.hinge_angles);
    else if (name == "hinge_offsets") as_int(p.hinge_offsets);
    else if (name == "atom_merge_radius") p.atom_merge_radius = value;
    else if (name == "potential_cutoff") p.potential_cutoff = value;
    else if (name == "moment_tol") p.moment_tol = value;
    else if (name == "potential_tol") p.potential_tol = value;
    else if (name == "moment_max") as_int(p.moment_max);
    else if (name == "potential_circle_points") as_int(p.potential_circle_points);
    else if (name == "hull_slack") p.hull_slack = value;
    else if (name == "offset_grid_points") as_int(p.offset_grid_points);
    else if (name == "classical_tol") p.classical_tol = value;
    else if (name == "arcsine_nodes") as_int(p.arcsine_nodes);
    else if (name == "subset_pole_cap") as_int(p.subset_pole_cap);
    else if (name == "jobs") as_int(p.jobs);
    else throw std::invalid_argument("unknown policy override '" + name + "'");
}

}  // namespace lame

#include "lame/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"
#include "lame/classical.hpp"
#include "lame/measures.hpp"

namespace lame {

namespace {

using nlohmann::json;

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + " must be a string");
    return v.get<std::string>();
}

std::vector<int> as_int_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of integers");
    std::vector<int> out;
    for (const auto& item : v) out.push_back(as_int(item, where + " entry"));
    return out;
}

std::vector<double> as_number_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& item : v) out.push_back(as_number(item, where + " entry"));
    return out;
}

LameInstance parse_instance(const json& block) {
    if (!block.is_object()) throw ConfigError("instance must be an object");
    expect_keys(block, "instance", {"zeta", "a", "k", "n"});
    for (const char* key : {"zeta", "a", "k", "n"})
        if (!block.contains(key)) throw ConfigError(std::string("instance needs '") + key + "'");
    if (!block["zeta"].is_array()) throw ConfigError("instance.zeta must be an array");
    std::vector<Complex> poles;
    for (const auto& entry : block["zeta"]) {
        if (!entry.is_array() || entry.size() != 2)
            throw ConfigError("each instance.zeta entry must be [re, im]");
        poles.emplace_back(as_number(entry[0], "instance.zeta re"),
                           as_number(entry[1], "instance.zeta im"));
    }
    std::vector<double> residues = as_number_list(block["a"], "instance.a");
    const int k = as_int(block["k"], "instance.k");
    const int n = as_int(block["n"], "instance.n");
    try {
        return LameInstance(std::move(poles), std::move(residues), k, n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid instance: ") + e.what());
    }
}

std::uint64_t parse_seed_text(const std::string& text, const std::string& where) {
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(where + " must be an unsigned 64-bit integer");
    return value;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(values[i]);
    }
    return out;
}

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += format_number(values[i]);
    }
    return out;
}

// Resolved-config echo. The output path is deliberately omitted so the same
// config and seed produce byte-identical reports wherever they are written.
void stamp_provenance(Report& rep, const RunConfig& config) {
    rep.command = config.command;
    rep.provenance.emplace_back("command", config.command);
    rep.provenance.emplace_back("seed", std::to_string(config.seed));
    rep.provenance.emplace_back("format", config.format);
    rep.provenance.emplace_back("jobs", std::to_string(config.policy.jobs));
    for (const auto& [name, value] : config.policy_overrides)
        rep.provenance.emplace_back("policy." + name, format_number(value));
    if (config.instance) {
        const LameInstance& inst = *config.instance;
        std::string zeta;
        for (int l = 0; l < inst.num_poles(); ++l) {
            if (l) zeta += ';';
            zeta += '(' + format_number(inst.poles()[l].real()) + ',' +
                    format_number(inst.poles()[l].imag()) + ')';
        }
        rep.provenance.emplace_back("instance.zeta", zeta);
        rep.provenance.emplace_back("instance.a", join_numbers(inst.residues()));
        rep.provenance.emplace_back("instance.k", std::to_string(inst.order()));
        rep.provenance.emplace_back("instance.n", std::to_string(inst.degree()));
    }
    if (config.command == "verify" && config.corrupt_zero_offset != 0.0)
        rep.provenance.emplace_back("verify.s_zero_offset",
                                    format_number(config.corrupt_zero_offset));
    if (config.command == "asymptotics") {
        rep.provenance.emplace_back("asymptotics.regime", config.asymptotics.regime);
        rep.provenance.emplace_back("asymptotics.degrees", join_ints(config.asymptotics.degrees));
        rep.provenance.emplace_back("asymptotics.pole_counts",
                                    join_ints(config.asymptotics.pole_counts));
        rep.provenance.emplace_back("asymptotics.degree",
                                    std::to_string(config.asymptotics.degree));
    }
    if (config.command == "jacobi") {
        rep.provenance.emplace_back("jacobi.degrees", join_ints(config.jacobi.degrees));
        rep.provenance.emplace_back("jacobi.alphas", join_numbers(config.jacobi.alphas));
        rep.provenance.emplace_back("jacobi.betas", join_numbers(config.jacobi.betas));
        rep.provenance.emplace_back("jacobi.arcsine_offsets",
                                    join_numbers(config.jacobi.arcsine_offsets));
    }
    if (config.command == "classical") {
        rep.provenance.emplace_back("classical.config_count",
                                    std::to_string(config.classical.config_count));
        rep.provenance.emplace_back("classical.max_poles",
                                    std::to_string(config.classical.max_poles));
        rep.provenance.emplace_back("classical.poly_count",
                                    std::to_string(config.classical.poly_count));
        rep.provenance.emplace_back("classical.poly_max_degree",
                                    std::to_string(config.classical.poly_max_degree));
    }
}

// Zeros sorted by (re, im) so report rows never depend on solver ordering.
std::vector<Complex> sorted_zeros(const SpectralPair& pair, const NumericPolicy& policy) {
    std::vector<Complex> zeros =
        pair.eigen_zeros ? *pair.eigen_zeros : find_roots(pair.eigenpoly, policy).expanded();
    std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return zeros;
}

SpectralPair corrupt_pair(const LameInstance& inst, const SpectralPair& pair, double offset,
                          const NumericPolicy& policy) {
    std::vector<Complex> zeros = sorted_zeros(pair, policy);
    for (Complex& z : zeros) z += offset;
    SpectralPair shifted = recover_accessory(inst, ComplexPolynomial::from_roots(zeros));
    shifted.eigen_zeros = std::move(zeros);
    return shifted;
}

RunOutcome finish(const RunConfig& config, Report report, int exit_code) {
    RunOutcome outcome;
    outcome.exit_code = exit_code;
    outcome.rendered = render_report(report, config.format);
    outcome.report = std::move(report);
    return outcome;
}

RunOutcome cmd_solve(const RunConfig& config) {
    Report rep;
    stamp_provenance(rep, config);
    const LameInstance& inst = *config.instance;
    const bool stieltjes = inst.is_stieltjes();
    const double expected =
        stieltjes ? static_cast<double>(sigma_count(inst.degree(), inst.num_poles())) : 1.0;

    std::vector<SpectralPair> pairs;
    try {
        pairs = enumerate_solutions(inst, config.policy, config.seed);
    } catch (const std::exception& e) {
        rep.notes.emplace_back("solver_error", e.what());
        rep.add_verdict("solution_count", false, 0.0, expected);
        return finish(config, std::move(rep), kExitSolver);
    }

    const bool count_ok = stieltjes ? pairs.size() == static_cast<std::size_t>(expected)
                                    : !pairs.empty();
    rep.add_verdict("solution_count", count_ok, static_cast<double>(pairs.size()), expected);
    double worst_residual = 0.0;
    for (const SpectralPair& pair : pairs) worst_residual = std::max(worst_residual, pair.residual);
    rep.add_verdict("max_residual", worst_residual <= config.policy.solver_tol, worst_residual,
                    config.policy.solver_tol);

    const int r = inst.reduced_degree();
    const int n = inst.degree();
    const int gaps = stieltjes ? inst.num_poles() - 1 : 0;
    ConvergenceTable table;
    table.columns = {"branch", "residual"};
    for (int g = 0; g < gaps; ++g) table.columns.push_back("occupancy_" + std::to_string(g));
    for (int i = 0; i <= r; ++i) {
        table.columns.push_back("v_coeff_" + std::to_string(i) + "_re");
        table.columns.push_back("v_coeff_" + std::to_string(i) + "_im");
    }
    for (int i = 0; i <= n; ++i) {
        table.columns.push_back("s_coeff_" + std::to_string(i) + "_re");
        table.columns.push_back("s_coeff_" + std::to_string(i) + "_im");
    }
    for (int i = 0; i < n; ++i) {
        table.columns.push_back("s_zero_" + std::to_string(i) + "_re");
        table.columns.push_back("s_zero_" + std::to_string(i) + "_im");
    }
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        const SpectralPair& pair = pairs[b];
        TableRow row;
        row.values.push_back(static_cast<double>(b));
        row.values.push_back(pair.residual);
        for (int g = 0; g < gaps; ++g)
            row.values.push_back(pair.occupancy && g < static_cast<int>(pair.occupancy->size())
                                     ? static_cast<double>((*pair.occupancy)[g])
                                     : 0.0);
        for (int i = 0; i <= r; ++i) {
            row.values.push_back(pair.accessory.coeff(i).real());
            row.values.push_back(pair.accessory.coeff(i).imag());
        }
        for (int i = 0; i <= n; ++i) {
            row.values.push_back(pair.eigenpoly.coeff(i).real());
            row.values.push_back(pair.eigenpoly.coeff(i).imag());
        }
        try {
            for (Complex z : sorted_zeros(pair, config.policy)) {
                row.values.push_back(z.real());
                row.values.push_back(z.imag());
            }
        } catch (const std::exception& e) {
            row.values.clear();
            row.error = e.what();
        }
        table.rows.push_back(std::move(row));
    }
    rep.tables.push_back({"solutions", std::move(table)});

    const int exit_code = rep.all_pass() ? kExitPass : kExitSolver;
    return finish(config, std::move(rep), exit_code);
}

RunOutcome cmd_verify(const RunConfig& config) {
    Report rep;
    stamp_provenance(rep, config);
    const LameInstance& inst = *config.instance;
    const NumericPolicy& policy = config.policy;

    std::vector<SpectralPair> pairs;
    try {
        pairs = enumerate_solutions(inst, policy, config.seed);
    } catch (const std::exception& e) {
        rep.notes.emplace_back("solver_error", e.what());
        rep.add_verdict("solutions_found", false, 0.0, 1.0);
        return finish(config, std::move(rep), kExitSolver);
    }
    rep.add_verdict("solutions_found", !pairs.empty(), static_cast<double>(pairs.size()), 1.0);
    if (pairs.empty()) return finish(config, std::move(rep), kExitSolver);

    {
        // The block weights come from the order-k normalization identity and
        // are renormalized to unit mass; record how far the raw sums land.
        const WeightTriple w = majorization_weights(inst);
        const double block_defect = std::abs(inst.reduced_degree() * w.accessory_weight +
                                             inst.degree() * w.eigen_weight - 1.0);
        double pole_sum = 0.0;
        for (double c : w.pole_weights) pole_sum += c;
        rep.notes.emplace_back(
            "weight_normalization",
            "zero-side and pole-side weights each renormalized to unit mass; raw defects " +
                format_number(block_defect) + " and " + format_number(pole_sum - 1.0));
    }

    bool solver_trouble = false;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        const std::string prefix = "pair" + std::to_string(b);
        SpectralPair pair = pairs[b];
        try {
            if (config.corrupt_zero_offset != 0.0)
                pair = corrupt_pair(inst, pair, config.corrupt_zero_offset, policy);

            const InequalityReport plain = check_spectral_order(inst, pair, policy);
            const double hinge_floor = policy.hinge_tol * plain.scale;
            rep.add_verdict(prefix + "_lp_feasible", plain.certificate.feasible,
                            plain.certificate.max_violation, policy.lp_tol);
            rep.add_verdict(prefix + "_hinge_slack", plain.min_hinge_slack >= -hinge_floor,
                            plain.min_hinge_slack, hinge_floor);
            rep.add_verdict(prefix + "_barycenter_gap",
                            plain.barycenter_gap <= policy.barycenter_tol * plain.scale,
                            plain.barycenter_gap, policy.barycenter_tol * plain.scale);
            rep.certificates.push_back({prefix + "_transfer", plain.certificate});

            const RefinedInequalityReport refined = check_spectral_order_refined(inst, pair, policy);
            rep.add_verdict(prefix + "_refined_feasible", refined.base.certificate.feasible,
                            refined.base.certificate.max_violation, policy.lp_tol);
            rep.add_verdict(prefix + "_chain_slack", refined.min_chain_slack >= -hinge_floor,
                            refined.min_chain_slack, hinge_floor);
            rep.add_verdict(prefix + "_composition_defect", refined.composition_defect <= 1e-8,
                            refined.composition_defect, 1e-8);
            rep.certificates.push_back({prefix + "_refined_transfer", refined.base.certificate});

            const MeasureComparison cmp = compare_spectral_measures(inst, pair, policy);
            rep.add_verdict(prefix + "_moment_margin", cmp.min_moment_margin >= -policy.moment_tol,
                            cmp.min_moment_margin, policy.moment_tol);
            rep.add_verdict(prefix + "_potential_margin",
                            cmp.min_potential_margin >= -policy.potential_tol,
                            cmp.min_potential_margin, policy.potential_tol);
            rep.certificates.push_back({prefix + "_measure_transfer", cmp.certificate});
        } catch (const NumericalStall& e) {
            rep.notes.emplace_back(prefix + "_error", e.what());
            rep.add_verdict(prefix + "_completed", false, 0.0, 0.0);
            solver_trouble = true;
        } catch (const std::invalid_argument& e) {
            // Residual gate: the pair does not solve the operator equation.
            rep.notes.emplace_back(prefix + "_error", e.what());
            rep.add_verdict(prefix + "_residual_gate", false, 0.0, policy.solver_tol);
        }
    }

    if (rep.all_pass()) return finish(config, std::move(rep), kExitPass);
    return finish(config, std::move(rep), solver_trouble ? kExitSolver : kExitFalsified);
}

RunOutcome cmd_asymptotics(const RunConfig& config) {
    Report rep;
    stamp_provenance(rep, config);
    const NumericPolicy& policy = config.policy;

    ConvergenceTable table;
    if (config.asymptotics.regime == "semiclassical") {
        const LameInstance& inst = *config.instance;
        InstanceFamily family{inst.poles(), inst.residues(), inst.order()};
        table = semiclassical_run(family, config.asymptotics.degrees, balanced_branch, policy,
                                  config.seed);
    } else {
        table = thermodynamic_run([](int p) { return equispaced_family(p); },
                                  config.asymptotics.pole_counts,
                                  [&config](int) { return config.asymptotics.degree; },
                                  balanced_branch, policy, config.seed);
    }

    int failed_rows = 0;
    for (const TableRow& row : table.rows)
        if (!row.error.empty()) ++failed_rows;
    rep.add_verdict("rows_complete", failed_rows == 0, static_cast<double>(failed_rows), 0.0);

    bool bound_ok = true;
    double worst = std::numeric_limits<double>::infinity();
    if (config.asymptotics.regime == "semiclassical") {
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            if (!table.rows[i].error.empty()) continue;
            if (table.value(i, "lp_feasible") != 1.0) bound_ok = false;
            worst = std::min(worst, table.value(i, "hinge_slack"));
        }
        rep.add_verdict("rows_feasible", bound_ok, worst == std::numeric_limits<double>::infinity() ? 0.0 : worst,
                        policy.lp_tol);
    } else {
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            if (!table.rows[i].error.empty()) continue;
            const double margin = table.value(i, "deviation_margin");
            worst = std::min(worst, margin);
            if (margin < -1e-12) bound_ok = false;
        }
        rep.add_verdict("deviation_within_bound", bound_ok,
                        worst == std::numeric_limits<double>::infinity() ? 0.0 : worst, 1e-12);
    }
    rep.tables.push_back({config.asymptotics.regime, std::move(table)});

    if (rep.all_pass()) return finish(config, std::move(rep), kExitPass);
    return finish(config, std::move(rep), failed_rows > 0 ? kExitSolver : kExitFalsified);
}

RunOutcome cmd_jacobi(const RunConfig& config) {
    Report rep;
    stamp_provenance(rep, config);
    const NumericPolicy& policy = config.policy;
    const JacobiRequest& req = config.jacobi;

    ConvergenceTable grid;
    grid.columns = {"n",           "alpha",        "beta",
                    "endpoint_slack", "endpoint_feasible", "refined_slack",
                    "chain_slack", "composition_defect", "refined_feasible"};
    int failed_rows = 0;
    double endpoint_min = std::numeric_limits<double>::infinity();
    double refined_min = std::numeric_limits<double>::infinity();
    double chain_min = std::numeric_limits<double>::infinity();
    double defect_max = 0.0;
    bool all_feasible = true;
    for (double a : req.alphas)
        for (double b : req.betas)
            for (int n : req.degrees) {
                TableRow row;
                try {
                    const JacobiParams params(n, a, b);
                    const SlackReport endpoint = jacobi_endpoint_check(params, policy);
                    const JacobiRefinedReport refined = jacobi_refined_check(params, policy);
                    row.values = {static_cast<double>(n),
                                  a,
                                  b,
                                  endpoint.min_slack,
                                  endpoint.certificate.feasible ? 1.0 : 0.0,
                                  refined.min_slack,
                                  refined.min_chain_slack,
                                  refined.composition_defect,
                                  refined.certificate.feasible ? 1.0 : 0.0};
                    endpoint_min = std::min(endpoint_min, endpoint.min_slack);
                    refined_min = std::min(refined_min, refined.min_slack);
                    chain_min = std::min(chain_min, refined.min_chain_slack);
                    defect_max = std::max(defect_max, refined.composition_defect);
                    all_feasible = all_feasible && endpoint.certificate.feasible &&
                                   refined.certificate.feasible;
                } catch (const std::exception& e) {
                    row.error = e.what();
                    ++failed_rows;
                }
                grid.rows.push_back(std::move(row));
            }

    rep.add_verdict("grid_complete", failed_rows == 0, static_cast<double>(failed_rows), 0.0);
    rep.add_verdict("grid_feasible", all_feasible, all_feasible ? 1.0 : 0.0, policy.lp_tol);
    rep.add_verdict("endpoint_min_slack", endpoint_min >= -policy.classical_tol, endpoint_min,
                    policy.classical_tol);
    rep.add_verdict("refined_min_slack", refined_min >= -policy.classical_tol, refined_min,
                    policy.classical_tol);
    rep.add_verdict("chain_min_slack", chain_min >= -policy.classical_tol, chain_min,
                    policy.classical_tol);
    rep.add_verdict("max_composition_defect", defect_max <= policy.classical_tol, defect_max,
                    policy.classical_tol);

    {
        const std::vector<double> zeros = jacobi_zeros(JacobiParams(2, 0.0, 0.0));
        const double target = 1.0 / std::sqrt(3.0);
        const double err = std::max(std::abs(zeros[0] + target), std::abs(zeros[1] - target));
        rep.add_verdict("legendre_zero_regression", err <= 1e-12, err, 1e-12);
    }

    ConvergenceTable arcs;
    arcs.columns = {"c", "lhs", "bound", "margin"};
    double arc_margin_min = std::numeric_limits<double>::infinity();
    for (double c : req.arcsine_offsets) {
        const ArcsineBound ab = arcsine_bound_check(c, policy);
        arc_margin_min = std::min(arc_margin_min, ab.bound - ab.lhs);
        arcs.rows.push_back({{c, ab.lhs, ab.bound, ab.bound - ab.lhs}, ""});
    }
    rep.add_verdict("arcsine_all_bounded",
                    req.arcsine_offsets.empty() || arc_margin_min >= -1e-10,
                    req.arcsine_offsets.empty() ? 0.0 : arc_margin_min, 1e-10);
    {
        // Quadrature error shrinks like 1/N^2; the verdict tolerance follows
        // the configured resolution with a 1e-8 floor.
        const ArcsineBound center = arcsine_bound_check(0.0, policy);
        const double tol =
            std::max(1e-8, 1.0 / (static_cast<double>(policy.arcsine_nodes) *
                                  static_cast<double>(policy.arcsine_nodes)));
        const double err = std::abs(center.lhs - 2.0 / std::numbers::pi);
        rep.add_verdict("arcsine_center_error", err <= tol, err, tol);
    }

    rep.tables.push_back({"jacobi_grid", std::move(grid)});
    rep.tables.push_back({"arcsine", std::move(arcs)});

    if (rep.all_pass()) return finish(config, std::move(rep), kExitPass);
    return finish(config, std::move(rep), failed_rows > 0 ? kExitSolver : kExitFalsified);
}

SzNagyConfig random_sz_config(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    std::vector<Complex> poles;
    std::vector<double> tau;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        poles.emplace_back(coord(rng), coord(rng));
        tau.push_back(mass(rng));
        total += tau.back();
    }
    for (double& t : tau) t /= total;
    return SzNagyConfig(std::move(poles), std::move(tau));
}

RunOutcome cmd_classical(const RunConfig& config) {
    Report rep;
    stamp_provenance(rep, config);
    const NumericPolicy& policy = config.policy;
    const ClassicalRequest& req = config.classical;
    std::mt19937_64 rng(config.seed);

    const auto slack_floor = [&](const SlackReport& r) {
        return policy.hinge_tol * r.mass * config_scale(r.lhs, r.rhs);
    };

    ConvergenceTable zero_table;
    zero_table.columns = {"index", "poles", "min_slack", "feasible"};
    bool zeros_feasible = true;
    bool zeros_bounded = true;
    double zeros_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < req.config_count; ++i) {
        const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(req.max_poles - 1));
        TableRow row;
        try {
            const SlackReport r = generalized_derivative_check(random_sz_config(rng, m), policy);
            row.values = {static_cast<double>(i), static_cast<double>(m), r.min_slack,
                          r.certificate.feasible ? 1.0 : 0.0};
            zeros_feasible = zeros_feasible && r.certificate.feasible;
            zeros_bounded = zeros_bounded && r.min_slack >= -slack_floor(r);
            zeros_min = std::min(zeros_min, r.min_slack);
        } catch (const std::exception& e) {
            row.error = e.what();
            zeros_feasible = false;
        }
        zero_table.rows.push_back(std::move(row));
    }
    rep.add_verdict("zero_dominance_feasible", zeros_feasible,
                    static_cast<double>(req.config_count), policy.lp_tol);
    rep.add_verdict("zero_dominance_min_slack", zeros_bounded,
                    req.config_count ? zeros_min : 0.0, policy.hinge_tol);

    ConvergenceTable subsets;
    subsets.columns = {"poles", "subset_size", "symmetric_index", "min_slack", "feasible"};
    bool subset_feasible = true;
    bool subset_bounded = true;
    double subset_min = std::numeric_limits<double>::infinity();
    bool subset_ran = false;
    for (int m = 2; m <= std::min(req.max_poles, 5); ++m) {
        const SzNagyConfig cfg = random_sz_config(rng, m);
        for (int d = 1; d <= m - 1; ++d)
            for (int e = 0; e <= d; ++e) {
                TableRow row;
                try {
                    const SlackReport r = symmetric_product_check(cfg, d, e, policy);
                    row.values = {static_cast<double>(m), static_cast<double>(d),
                                  static_cast<double>(e), r.min_slack,
                                  r.certificate.feasible ? 1.0 : 0.0};
                    subset_feasible = subset_feasible && r.certificate.feasible;
                    subset_bounded = subset_bounded && r.min_slack >= -slack_floor(r);
                    subset_min = std::min(subset_min, r.min_slack);
                    subset_ran = true;
                } catch (const std::exception& e2) {
                    row.error = e2.what();
                    subset_feasible = false;
                }
                subsets.rows.push_back(std::move(row));
            }
    }
    rep.add_verdict("subset_dominance_feasible", subset_feasible,
                    static_cast<double>(subsets.rows.size()), policy.lp_tol);
    rep.add_verdict("subset_dominance_min_slack", subset_bounded, subset_ran ? subset_min : 0.0,
                    policy.hinge_tol);

    ConvergenceTable chain;
    chain.columns = {"index", "degree", "level", "min_slack", "feasible"};
    bool chain_feasible = true;
    bool chain_bounded = true;
    double chain_min = std::numeric_limits<double>::infinity();
    bool chain_ran = false;
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int i = 0; i < req.poly_count; ++i) {
        const int d =
            2 + static_cast<int>(rng() % static_cast<std::uint64_t>(req.poly_max_degree - 1));
        std::vector<Complex> roots;
        for (int j = 0; j < d; ++j) roots.emplace_back(coord(rng), coord(rng));
        const ComplexPolynomial p = ComplexPolynomial::from_roots(roots);
        for (int level = 1; level < d; ++level) {
            TableRow row;
            try {
                const SlackReport r = derivative_chain_check(p, level, policy);
                row.values = {static_cast<double>(i), static_cast<double>(d),
                              static_cast<double>(level), r.min_slack,
                              r.certificate.feasible ? 1.0 : 0.0};
                chain_feasible = chain_feasible && r.certificate.feasible;
                chain_bounded = chain_bounded && r.min_slack >= -slack_floor(r);
                chain_min = std::min(chain_min, r.min_slack);
                chain_ran = true;
            } catch (const std::exception& e) {
                row.error = e.what();
                chain_feasible = false;
            }
            chain.rows.push_back(std::move(row));
        }
    }
    rep.add_verdict("chain_dominance_feasible", chain_feasible,
                    static_cast<double>(chain.rows.size()), policy.lp_tol);
    rep.add_verdict("chain_dominance_min_slack", chain_bounded, chain_ran ? chain_min : 0.0,
                    policy.hinge_tol);

    rep.tables.push_back({"zero_dominance", std::move(zero_table)});
    rep.tables.push_back({"subset_dominance", std::move(subsets)});
    rep.tables.push_back({"chain_dominance", std::move(chain)});

    const int exit_code = rep.all_pass() ? kExitPass : kExitFalsified;
    return finish(config, std::move(rep), exit_code);
}

}  // namespace

RunConfig parse_run_config(const std::string& command, const std::string& config_text,
                           const CliOverrides& overrides) {
    RunConfig config;
    config.command = command;
    const bool known =
        command == "solve" || command == "verify" || command == "asymptotics" ||
        command == "jacobi" || command == "classical";
    if (!known) throw ConfigError("unknown command '" + command + "'");

    json root = json::object();
    if (!config_text.empty()) {
        root = parse_json_text(config_text);
        if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    }
    expect_keys(root, "config",
                {"instance", "policy", "seed", "format", "out", "verify", "asymptotics", "jacobi",
                 "classical"});

    if (root.contains("instance")) config.instance = parse_instance(root["instance"]);

    if (root.contains("policy")) {
        const json& block = root["policy"];
        if (!block.is_object()) throw ConfigError("policy must be an object");
        for (const auto& item : block.items()) {
            const double value = as_number(item.value(), "policy." + item.key());
            try {
                apply_policy_override(config.policy, item.key(), value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            config.policy_overrides.emplace_back(item.key(), value);
        }
    }

    if (overrides.seed) {
        config.seed = *overrides.seed;
    } else if (root.contains("seed")) {
        const json& s = root["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            throw ConfigError("seed must be a nonnegative integer");
        config.seed = s.get<std::uint64_t>();
    } else if (const char* env = std::getenv("LAME_CHOQUET_SEED")) {
        config.seed = parse_seed_text(env, "LAME_CHOQUET_SEED");
    }

    if (overrides.format)
        config.format = *overrides.format;
    else if (root.contains("format"))
        config.format = as_string(root["format"], "format");
    if (config.format != "json" && config.format != "csv")
        throw ConfigError("format must be 'json' or 'csv'");

    if (overrides.out_path)
        config.out_path = *overrides.out_path;
    else if (root.contains("out"))
        config.out_path = as_string(root["out"], "out");

    if (overrides.jobs) {
        if (*overrides.jobs < 1) throw ConfigError("jobs must be positive");
        config.policy.jobs = *overrides.jobs;
    }

    if (root.contains("verify")) {
        const json& block = root["verify"];
        if (!block.is_object()) throw ConfigError("verify must be an object");
        expect_keys(block, "verify", {"s_zero_offset"});
        if (block.contains("s_zero_offset"))
            config.corrupt_zero_offset = as_number(block["s_zero_offset"], "verify.s_zero_offset");
    }

    if (root.contains("asymptotics")) {
        const json& block = root["asymptotics"];
        if (!block.is_object()) throw ConfigError("asymptotics must be an object");
        expect_keys(block, "asymptotics", {"regime", "degrees", "pole_counts", "degree"});
        if (block.contains("regime"))
            config.asymptotics.regime = as_string(block["regime"], "asymptotics.regime");
        if (config.asymptotics.regime != "semiclassical" &&
            config.asymptotics.regime != "thermodynamic")
            throw ConfigError("asymptotics.regime must be 'semiclassical' or 'thermodynamic'");
        if (block.contains("degrees"))
            config.asymptotics.degrees = as_int_list(block["degrees"], "asymptotics.degrees");
        for (int n : config.asymptotics.degrees)
            if (n < 1) throw ConfigError("asymptotics.degrees entries must be positive");
        if (block.contains("pole_counts"))
            config.asymptotics.pole_counts =
                as_int_list(block["pole_counts"], "asymptotics.pole_counts");
        for (int p : config.asymptotics.pole_counts)
            if (p < 2) throw ConfigError("asymptotics.pole_counts entries must be at least 2");
        if (block.contains("degree")) {
            config.asymptotics.degree = as_int(block["degree"], "asymptotics.degree");
            if (config.asymptotics.degree < 1)
                throw ConfigError("asymptotics.degree must be positive");
        }
    }

    config.jacobi.alphas = {-0.5, 0.0, 0.5, 1.0, 2.0};
    config.jacobi.betas = config.jacobi.alphas;
    for (int n = 2; n <= 50; ++n) config.jacobi.degrees.push_back(n);
    config.jacobi.arcsine_offsets = {0.0, 0.5, -0.5, 1.0, -1.0, 5.0, -5.0};
    if (root.contains("jacobi")) {
        const json& block = root["jacobi"];
        if (!block.is_object()) throw ConfigError("jacobi must be an object");
        expect_keys(block, "jacobi", {"degrees", "alphas", "betas", "arcsine_offsets"});
        if (block.contains("degrees"))
            config.jacobi.degrees = as_int_list(block["degrees"], "jacobi.degrees");
        for (int n : config.jacobi.degrees)
            if (n < 2) throw ConfigError("jacobi.degrees entries must be at least 2");
        if (block.contains("alphas"))
            config.jacobi.alphas = as_number_list(block["alphas"], "jacobi.alphas");
        if (block.contains("betas"))
            config.jacobi.betas = as_number_list(block["betas"], "jacobi.betas");
        for (double v : config.jacobi.alphas)
            if (!(v > -1.0)) throw ConfigError("jacobi.alphas entries must exceed -1");
        for (double v : config.jacobi.betas)
            if (!(v > -1.0)) throw ConfigError("jacobi.betas entries must exceed -1");
        if (block.contains("arcsine_offsets"))
            config.jacobi.arcsine_offsets =
                as_number_list(block["arcsine_offsets"], "jacobi.arcsine_offsets");
        for (double c : config.jacobi.arcsine_offsets)
            if (!std::isfinite(c)) throw ConfigError("jacobi.arcsine_offsets must be finite");
    }

    if (root.contains("classical")) {
        const json& block = root["classical"];
        if (!block.is_object()) throw ConfigError("classical must be an object");
        expect_keys(block, "classical",
                    {"config_count", "max_poles", "poly_count", "poly_max_degree"});
        if (block.contains("config_count"))
            config.classical.config_count = as_int(block["config_count"], "classical.config_count");
        if (block.contains("max_poles"))
            config.classical.max_poles = as_int(block["max_poles"], "classical.max_poles");
        if (block.contains("poly_count"))
            config.classical.poly_count = as_int(block["poly_count"], "classical.poly_count");
        if (block.contains("poly_max_degree"))
            config.classical.poly_max_degree =
                as_int(block["poly_max_degree"], "classical.poly_max_degree");
        if (config.classical.config_count < 0 || config.classical.poly_count < 0)
            throw ConfigError("classical counts must be nonnegative");
        if (config.classical.max_poles < 2 || config.classical.max_poles > 8)
            throw ConfigError("classical.max_poles must lie in [2, 8]");
        if (config.classical.poly_max_degree < 2 || config.classical.poly_max_degree > 12)
            throw ConfigError("classical.poly_max_degree must lie in [2, 12]");
    }

    const bool needs_instance =
        command == "solve" || command == "verify" ||
        (command == "asymptotics" && config.asymptotics.regime == "semiclassical");
    if (needs_instance && !config.instance)
        throw ConfigError("command '" + command + "' needs an instance block");

    return config;
}

RunOutcome run_command(const RunConfig& config) {
    if (config.command == "solve") return cmd_solve(config);
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "asymptotics") return cmd_asymptotics(config);
    if (config.command == "jacobi") return cmd_jacobi(config);
    if (config.command == "classical") return cmd_classical(config);
    throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace lame

#include "lame/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lame/geometry.hpp"
#include "lame/parallel.hpp"

namespace lame {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sample circle for potential comparisons: centered at the pole centroid
// with twice the farthest-pole radius.
void potential_circle(const std::vector<Complex>& poles, Complex& center, double& radius) {
    center = Complex(0.0, 0.0);
    for (Complex z : poles) center += z;
    center /= static_cast<double>(poles.size());
    radius = 0.0;
    for (Complex z : poles) radius = std::max(radius, std::abs(z - center));
    radius *= 2.0;
}

// Convexity certificate for w -> -log|z - w| along a segment of support
// points. The kernel is convex at w in direction u exactly when z - w makes
// an angle of at most 45 degrees with u, so a collinear support yields the
// interval condition below; a genuinely planar support certifies nothing.
struct SupportLine {
    bool collinear = false;
    Complex base;
    Complex dir;  // unit
    double t_min = 0.0, t_max = 0.0;
};

SupportLine fit_support_line(const std::vector<Complex>& pts) {
    SupportLine line;
    double best = 0.0;
    Complex a = pts.front(), b = pts.front();
    for (Complex z : pts)
        for (Complex w : pts)
            if (std::abs(z - w) > best) {
                best = std::abs(z - w);
                a = z;
                b = w;
            }
    if (best == 0.0) return line;
    line.base = a;
    line.dir = (b - a) / best;
    line.t_min = std::numeric_limits<double>::infinity();
    line.t_max = -line.t_min;
    double scale = 1.0;
    for (Complex z : pts) scale = std::max(scale, std::abs(z));
    for (Complex z : pts) {
        const Complex q = std::conj(line.dir) * (z - line.base);
        if (std::abs(q.imag()) > 1e-9 * scale) return line;
        line.t_min = std::min(line.t_min, q.real());
        line.t_max = std::max(line.t_max, q.real());
    }
    line.collinear = true;
    return line;
}

bool kernel_convex_at(const SupportLine& line, Complex z) {
    const Complex q = std::conj(line.dir) * (z - line.base);
    const double c = std::abs(q.imag());
    return q.real() - line.t_max >= c || q.real() - line.t_min <= -c;
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Complex> support, std::vector<double> mass,
                             const NumericPolicy& policy) {
    if (support.empty() || support.size() != mass.size())
        throw std::invalid_argument("measure needs matching nonempty atoms and masses");
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double m = mass[i];
        if (!(m >= 0.0) || !std::isfinite(m))
            throw std::invalid_argument("masses must be nonnegative and finite");
        total += m;
        std::size_t hit = atoms.size();
        for (std::size_t j = 0; j < atoms.size(); ++j)
            if (std::abs(support[i] - atoms[j]) < policy.atom_merge_radius) {
                hit = j;
                break;
            }
        if (hit == atoms.size()) {
            atoms.push_back(support[i]);
            masses.push_back(m);
        } else {
            masses[hit] += m;
        }
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("masses must sum to one");
}

Complex AtomicMeasure::barycenter() const {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < atoms.size(); ++i) acc += masses[i] * atoms[i];
    return acc;
}

WeightedPointConfig AtomicMeasure::config() const { return WeightedPointConfig(atoms, masses); }

AtomicMeasure root_counting_measure(const ComplexPolynomial& p, const NumericPolicy& policy) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("root-counting measure needs degree at least 1");
    RootSet rs = find_roots(p, policy);
    std::vector<double> mass(rs.roots.size());
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
        mass[i] = static_cast<double>(rs.multiplicities[i]) / d;
    return AtomicMeasure(rs.roots, mass, policy);
}

double moment(const AtomicMeasure& mu, int m) {
    if (m < 0) throw std::invalid_argument("moment order must be nonnegative");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i)
        acc += mu.masses[i] * std::pow(std::abs(mu.atoms[i]), m);
    return acc;
}

double log_potential(const AtomicMeasure& mu, Complex z, const NumericPolicy& policy) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
        const double d = std::abs(z - mu.atoms[i]);
        if (d < policy.potential_cutoff) return -std::numeric_limits<double>::infinity();
        acc += mu.masses[i] * std::log(d);
    }
    return acc;
}

AtomicMeasure tilde_q2_measure(const LameInstance& inst) {
    const WeightTriple w = majorization_weights(inst);
    return AtomicMeasure(inst.poles(), w.pole_weights);
}

AtomicMeasure spectral_mixture(const LameInstance& inst, const SpectralPair& pair,
                               const NumericPolicy& policy) {
    const WeightTriple w = majorization_weights(inst);
    std::vector<Complex> atoms;
    std::vector<double> mass;
    if (inst.reduced_degree() >= 1) {
        for (Complex z : find_roots(pair.accessory, policy).expanded()) {
            atoms.push_back(z);
            mass.push_back(w.accessory_weight);
        }
    }
    const std::vector<Complex> eigen_zeros =
        pair.eigen_zeros ? *pair.eigen_zeros : find_roots(pair.eigenpoly, policy).expanded();
    for (Complex z : eigen_zeros) {
        atoms.push_back(z);
        mass.push_back(w.eigen_weight);
    }
    return AtomicMeasure(std::move(atoms), std::move(mass), policy);
}

TransferCertificate choquet_compare(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                    const NumericPolicy& policy) {
    TransferCertificate cert = check_majorization(mu.config(), nu.config(), policy);
    if (cert.feasible) {
        double scale = 1.0;
        for (Complex z : nu.atoms) scale = std::max(scale, std::abs(z));
        for (Complex z : mu.atoms)
            if (hull_distance(z, nu.atoms) > policy.hull_slack * scale)
                throw std::logic_error("feasible transfer with support outside the target hull");
    }
    return cert;
}

MeasureComparison compare_spectral_measures(const LameInstance& inst, const SpectralPair& pair,
                                            const NumericPolicy& policy) {
    MeasureComparison cmp;
    cmp.lhs = spectral_mixture(inst, pair, policy);
    cmp.rhs = tilde_q2_measure(inst);
    cmp.certificate = choquet_compare(cmp.lhs, cmp.rhs, policy);
    cmp.hinge_slack = hinge_gap(cmp.lhs.config(), cmp.rhs.config(), policy);
    cmp.barycenter_gap = std::abs(cmp.lhs.barycenter() - cmp.rhs.barycenter());

    cmp.min_moment_margin = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= policy.moment_max; ++m)
        cmp.min_moment_margin =
            std::min(cmp.min_moment_margin, moment(cmp.rhs, m) - moment(cmp.lhs, m));

    Complex center;
    double radius;
    potential_circle(inst.poles(), center, radius);
    const SupportLine line = fit_support_line(inst.poles());
    cmp.min_potential_margin_all = std::numeric_limits<double>::infinity();
    double certified = std::numeric_limits<double>::infinity();
    for (int t = 0; t < policy.potential_circle_points; ++t) {
        const Complex z = center + std::polar(radius, 2.0 * kPi * t / policy.potential_circle_points);
        const double gap = log_potential(cmp.lhs, z, policy) - log_potential(cmp.rhs, z, policy);
        cmp.min_potential_margin_all = std::min(cmp.min_potential_margin_all, gap);
        if (line.collinear && kernel_convex_at(line, z)) {
            certified = std::min(certified, gap);
            ++cmp.potential_points;
        }
    }
    cmp.min_potential_margin = cmp.potential_points > 0 ? certified : 0.0;
    return cmp;
}

int ConvergenceTable::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (columns[j] == name) return static_cast<int>(j);
    throw std::out_of_range("no table column named " + name);
}

double ConvergenceTable::value(std::size_t row, const std::string& name) const {
    const TableRow& r = rows.at(row);
    if (!r.error.empty()) throw std::runtime_error("table row failed: " + r.error);
    return r.values.at(column_index(name));
}

LameInstance InstanceFamily::make(int degree) const {
    return LameInstance(poles, residues, order, degree);
}

InstanceFamily equispaced_family(int num_poles) {
    if (num_poles < 2) throw std::invalid_argument("a family needs at least two poles");
    InstanceFamily fam;
    for (int l = 0; l < num_poles; ++l)
        fam.poles.push_back({-1.0 + 2.0 * l / (num_poles - 1), 0.0});
    fam.residues.assign(num_poles, 1.0);
    fam.order = 2;
    return fam;
}

std::size_t balanced_branch(const std::vector<SpectralPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("no solution branches to select from");
    std::size_t best = 0;
    bool found = false;
    long long best_ss = 0;
    const std::vector<int>* best_occ = nullptr;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!pairs[i].occupancy) continue;
        const std::vector<int>& occ = *pairs[i].occupancy;
        long long ss = 0;
        for (int c : occ) ss += static_cast<long long>(c) * c;
        const bool better =
            !found || ss < best_ss ||
            (ss == best_ss && std::lexicographical_compare(best_occ->begin(), best_occ->end(),
                                                           occ.begin(), occ.end()));
        if (better) {
            best = i;
            best_ss = ss;
            best_occ = &occ;
            found = true;
        }
    }
    return best;
}

ConvergenceTable semiclassical_run(const InstanceFamily& family, const std::vector<int>& degrees,
                                   const BranchRule& rule, const NumericPolicy& policy,
                                   std::uint64_t seed) {
    ConvergenceTable table;
    table.columns = {"n",           "coeff_accessory", "coeff_eigen",       "dev_accessory",
                     "dev_eigen",   "lp_feasible",     "hinge_slack",       "barycenter_gap",
                     "moment_margin", "potential_margin"};
    for (int m = 0; m <= 6; ++m) table.columns.push_back("mix_moment_" + std::to_string(m));
    for (int m = 0; m <= 6; ++m) table.columns.push_back("tilde_moment_" + std::to_string(m));

    NumericPolicy row_policy = policy;
    row_policy.jobs = 1;
    const int p = static_cast<int>(family.poles.size());
    const int k = family.order;
    table.rows = indexed_map<TableRow>(
        static_cast<int>(degrees.size()), policy.jobs, [&](int idx) {
            TableRow row;
            try {
                const int n = degrees[idx];
                LameInstance inst = family.make(n);
                auto pairs = enumerate_solutions(inst, row_policy, seed);
                if (pairs.empty()) throw NoConvergence("no solution branch converged");
                const SpectralPair& pr = pairs[rule(pairs)];
                const WeightTriple w = majorization_weights(inst);
                MeasureComparison cmp = compare_spectral_measures(inst, pr, row_policy);

                const double coeff_v = inst.reduced_degree() * w.accessory_weight;
                const double coeff_s = n * w.eigen_weight;
                row.values = {static_cast<double>(n),
                              coeff_v,
                              coeff_s,
                              std::abs(coeff_v - static_cast<double>(p - k) / p),
                              std::abs(coeff_s - static_cast<double>(k) / p),
                              cmp.certificate.feasible ? 1.0 : 0.0,
                              cmp.hinge_slack,
                              cmp.barycenter_gap,
                              cmp.min_moment_margin,
                              cmp.min_potential_margin};
                for (int m = 0; m <= 6; ++m) row.values.push_back(moment(cmp.lhs, m));
                for (int m = 0; m <= 6; ++m) row.values.push_back(moment(cmp.rhs, m));
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            return row;
        });
    return table;
}

ConvergenceTable thermodynamic_run(const std::function<InstanceFamily(int)>& family_rule,
                                   const std::vector<int>& pole_counts,
                                   const std::function<int(int)>& degree_rule,
                                   const BranchRule& rule, const NumericPolicy& policy,
                                   std::uint64_t seed) {
    ConvergenceTable table;
    table.columns = {"p",
                     "n",
                     "deviation_max",
                     "deviation_margin",
                     "moment_proxy_margin",
                     "potential_gap_min"};
    for (int m = 0; m <= 6; ++m) table.columns.push_back("accessory_moment_" + std::to_string(m));
    for (int m = 0; m <= 6; ++m) table.columns.push_back("pole_moment_" + std::to_string(m));

    NumericPolicy row_policy = policy;
    row_policy.jobs = 1;
    table.rows = indexed_map<TableRow>(
        static_cast<int>(pole_counts.size()), policy.jobs, [&](int idx) {
            TableRow row;
            try {
                const int p = pole_counts[idx];
                const int n = degree_rule(p);
                InstanceFamily fam = family_rule(p);
                LameInstance inst = fam.make(n);
                auto pairs = enumerate_solutions(inst, row_policy, seed);
                if (pairs.empty()) throw NoConvergence("no solution branch converged");
                const SpectralPair& pr = pairs[rule(pairs)];

                AtomicMeasure mu_v = root_counting_measure(pr.accessory, row_policy);
                AtomicMeasure mu_q2 = root_counting_measure(inst.leading_poly(), row_policy);
                AtomicMeasure tilde = tilde_q2_measure(inst);

                // Hinge-family deviation between the tilde and uniform pole
                // measures against the 2/(p-1) bound.
                const double bound_coeff = 2.0 / (p - 1);
                double dev_max = 0.0;
                double margin_min = std::numeric_limits<double>::infinity();
                for (int t = 0; t < row_policy.hinge_angles; ++t) {
                    const double theta = 2.0 * kPi * t / row_policy.hinge_angles;
                    const Complex dir = std::polar(1.0, -theta);
                    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                    for (Complex z : inst.poles()) {
                        const double v = (dir * z).real();
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                    const int count = hi > lo ? row_policy.hinge_offsets : 1;
                    for (int s = 0; s < count; ++s) {
                        const double c = count == 1 ? lo : lo + (hi - lo) * s / (count - 1);
                        double dtilde = 0.0, duni = 0.0, fmax = 0.0;
                        for (std::size_t l = 0; l < inst.poles().size(); ++l) {
                            const double f =
                                std::max(0.0, (dir * inst.poles()[l]).real() - c);
                            fmax = std::max(fmax, f);
                            dtilde += tilde.masses[l] * f;
                            duni += f / p;
                        }
                        const double dev = std::abs(dtilde - duni);
                        dev_max = std::max(dev_max, dev);
                        margin_min = std::min(margin_min, bound_coeff * fmax - dev);
                    }
                }

                // Moment proxy: accessory moments against tilde moments plus
                // the deviation allowance.
                double proxy_min = std::numeric_limits<double>::infinity();
                for (int m = 0; m <= 6; ++m) {
                    double peak = 0.0;
                    for (Complex z : mu_v.atoms) peak = std::max(peak, std::pow(std::abs(z), m));
                    for (Complex z : inst.poles()) peak = std::max(peak, std::pow(std::abs(z), m));
                    proxy_min = std::min(
                        proxy_min, moment(tilde, m) + bound_coeff * peak - moment(mu_v, m));
                }

                Complex center;
                double radius;
                potential_circle(inst.poles(), center, radius);
                double pot_min = std::numeric_limits<double>::infinity();
                for (int t = 0; t < row_policy.potential_circle_points; ++t) {
                    const Complex z =
                        center + std::polar(radius, 2.0 * kPi * t / row_policy.potential_circle_points);
                    pot_min = std::min(pot_min, log_potential(mu_v, z, row_policy) -
                                                    log_potential(mu_q2, z, row_policy));
                }

                row.values = {static_cast<double>(p), static_cast<double>(n), dev_max,
                              margin_min,             proxy_min,              pot_min};
                for (int m = 0; m <= 6; ++m) row.values.push_back(moment(mu_v, m));
                for (int m = 0; m <= 6; ++m) row.values.push_back(moment(mu_q2, m));
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            return row;
        });
    return table;
}

}  // namespace lame

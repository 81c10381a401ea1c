#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lame/majorization.hpp"
#include "lame/policy.hpp"
#include "lame/spectral.hpp"

namespace lame {

// Atomic probability measure. Atoms closer than the merge radius are fused
// on construction, with masses adding.
struct AtomicMeasure {
    std::vector<Complex> atoms;
    std::vector<double> masses;

    AtomicMeasure() = default;
    AtomicMeasure(std::vector<Complex> support, std::vector<double> mass,
                  const NumericPolicy& policy = {});

    Complex barycenter() const;
    WeightedPointConfig config() const;
};

// Uniform mass 1/deg per zero, multiplicities respected.
AtomicMeasure root_counting_measure(const ComplexPolynomial& p, const NumericPolicy& policy = {});

// m-th absolute moment: sum of mass * |atom|^m.
double moment(const AtomicMeasure& mu, int m);

// Sum of mass * log|z - atom|. Returns -infinity when z sits on an atom
// (distance below the potential cutoff).
double log_potential(const AtomicMeasure& mu, Complex z, const NumericPolicy& policy = {});

// Measure on the leading-polynomial zeros with the pole block weights.
AtomicMeasure tilde_q2_measure(const LameInstance& inst);

// Accessory and eigenpolynomial zero blocks assembled as one measure, each
// zero carrying its block weight.
AtomicMeasure spectral_mixture(const LameInstance& inst, const SpectralPair& pair,
                               const NumericPolicy& policy = {});

// Transfer feasibility on the atoms. When feasible, the support of mu is
// additionally required to sit inside the convex hull of nu's support.
TransferCertificate choquet_compare(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                    const NumericPolicy& policy = {});

struct MeasureComparison {
    TransferCertificate certificate;
    double hinge_slack = 0.0;
    double barycenter_gap = 0.0;
    // min over m = 0..moment_max of moment(rhs, m) - moment(lhs, m)
    double min_moment_margin = 0.0;
    // min of U^lhs(z) - U^rhs(z) over the sample-circle points where
    // -log|z - w| is certifiably convex along the support line; only there
    // does the transfer relation force the sign. 0 when no point qualifies.
    double min_potential_margin = 0.0;
    int potential_points = 0;
    // Same minimum over the whole circle, recorded as a diagnostic. The sign
    // flips where the kernel turns concave (points beyond 45 degrees off the
    // support line), so this value may legitimately be negative.
    double min_potential_margin_all = 0.0;
    AtomicMeasure lhs;
    AtomicMeasure rhs;
};

// Mixture against the tilde measure for one solved pair: certificate, hinge
// slack, moment margins, and potential margins on the circle of twice the
// pole hull radius.
MeasureComparison compare_spectral_measures(const LameInstance& inst, const SpectralPair& pair,
                                            const NumericPolicy& policy = {});

struct TableRow {
    std::vector<double> values;  // aligned with the table columns; empty on error
    std::string error;           // nonempty when the row failed
};

struct ConvergenceTable {
    std::vector<std::string> columns;
    std::vector<TableRow> rows;

    int column_index(const std::string& name) const;
    double value(std::size_t row, const std::string& name) const;
};

// Fixed poles, residues and order; the degree varies along a table.
struct InstanceFamily {
    std::vector<Complex> poles;
    std::vector<double> residues;
    int order = 2;

    LameInstance make(int degree) const;
};

// p equispaced real poles in [-1, 1], unit residues, second order.
InstanceFamily equispaced_family(int num_poles);

// Selects one solution branch from an enumeration.
using BranchRule = std::function<std::size_t(const std::vector<SpectralPair>&)>;

// Occupancy with the smallest sum of squares, ties broken by picking the
// lexicographically largest vector; falls back to the first branch when no
// occupancy data is present.
std::size_t balanced_branch(const std::vector<SpectralPair>& pairs);

// One row per degree: mixture coefficients with their distance to the
// large-degree limits, transfer feasibility, hinge slack, and moments of
// both sides. Row failures are recorded, not thrown.
ConvergenceTable semiclassical_run(const InstanceFamily& family, const std::vector<int>& degrees,
                                   const BranchRule& rule = balanced_branch,
                                   const NumericPolicy& policy = {}, std::uint64_t seed = 0);

// One row per pole count: moments of the accessory and leading-polynomial
// measures, the tilde-vs-uniform deviation against its 2/(p-1) bound, the
// moment proxy margin, and potential gaps outside the pole hull.
ConvergenceTable thermodynamic_run(const std::function<InstanceFamily(int)>& family_rule,
                                   const std::vector<int>& pole_counts,
                                   const std::function<int(int)>& degree_rule,
                                   const BranchRule& rule = balanced_branch,
                                   const NumericPolicy& policy = {}, std::uint64_t seed = 0);

}  // namespace lame

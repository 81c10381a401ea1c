#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "lame/policy.hpp"
#include "lame/poly.hpp"
#include "lame/spectral.hpp"

namespace lame {

struct NumericalStall : std::runtime_error {
    explicit NumericalStall(const std::string& what) : std::runtime_error(what) {}
};

// Finitely supported unit mass: points with nonnegative weights summing to 1.
struct WeightedPointConfig {
    std::vector<Complex> points;
    std::vector<double> weights;

    WeightedPointConfig() = default;
    WeightedPointConfig(std::vector<Complex> pts, std::vector<double> wts,
                        double sum_tol = 1e-12);
    Complex barycenter() const;
};

// Block weights attached to an instance: one value per accessory zero, one
// per eigenpoly zero, and one per pole. The blocks have total mass one.
struct WeightTriple {
    double accessory_weight = 0.0;        // r copies
    double eigen_weight = 0.0;            // n copies
    std::vector<double> pole_weights;     // p entries, instance order
    double alpha = 0.0;
    double denominator = 0.0;
};

WeightTriple majorization_weights(const LameInstance& inst);

// Row-stochastic matrix R with lhs points = R * rhs points and
// rhs weights = lhs weights * R.
struct TransferCertificate {
    bool feasible = false;
    // Verified constraint defect when feasible; otherwise the phase-1
    // objective, i.e. the total residual infeasibility.
    double max_violation = 0.0;
    int rows = 0;
    int cols = 0;
    std::vector<double> matrix;    // row-major, filled when feasible
    std::vector<double> row_sums;  // one per lhs point, filled when feasible

    double entry(int i, int j) const { return matrix[static_cast<std::size_t>(i) * cols + j]; }
};

// Phase-1 simplex feasibility for the transfer constraints. A stalled solve
// is retried once with a deterministically perturbed right-hand side before
// NumericalStall propagates.
TransferCertificate check_majorization(const WeightedPointConfig& lhs,
                                       const WeightedPointConfig& rhs,
                                       const NumericPolicy& policy = {});

// Slack of one convex test function: rhs average minus lhs average.
double convex_gap(const WeightedPointConfig& lhs, const WeightedPointConfig& rhs,
                  const std::function<double(Complex)>& f);

// Minimum slack over the ramp family f(z) = max(0, Re(e^{-i theta} z) - c),
// directions uniform on the circle, offsets spanning the rhs support.
double hinge_gap(const WeightedPointConfig& lhs, const WeightedPointConfig& rhs,
                 const NumericPolicy& policy = {});

// Reference magnitude for slack tolerances: 1 or the largest point modulus.
double config_scale(const WeightedPointConfig& lhs, const WeightedPointConfig& rhs);

struct InequalityReport {
    TransferCertificate certificate;
    double min_hinge_slack = 0.0;
    double barycenter_gap = 0.0;
    double scale = 1.0;
    WeightedPointConfig lhs;
    WeightedPointConfig rhs;
};

// Zeros of the pair (accessory then eigenpoly, block weights) against the
// poles. The pair must pass the residual gate.
InequalityReport check_spectral_order(const LameInstance& inst, const SpectralPair& pair,
                                      const NumericPolicy& policy = {});

struct RefinedInequalityReport {
    InequalityReport base;
    // Slack of the composed derivative chain, minimized over the ramp grid.
    double min_chain_slack = 0.0;
    // Largest defect of (plain slack) - (refined slack) - (chain slack),
    // an algebraic identity up to roundoff.
    double composition_defect = 0.0;
};

// Refinement with the (k-1)-st derivative zeros of the eigenpoly joining
// the poles on the right-hand side, all weights uniform on the left.
RefinedInequalityReport check_spectral_order_refined(const LameInstance& inst,
                                                     const SpectralPair& pair,
                                                     const NumericPolicy& policy = {});

// The configs used by check_spectral_order, exposed for measure-level reuse.
void spectral_order_configs(const LameInstance& inst, const SpectralPair& pair,
                            const NumericPolicy& policy, WeightedPointConfig& lhs,
                            WeightedPointConfig& rhs);

}  // namespace lame

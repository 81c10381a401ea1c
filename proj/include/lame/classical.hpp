#pragma once

#include <stdexcept>
#include <vector>

#include "lame/majorization.hpp"
#include "lame/policy.hpp"
#include "lame/poly.hpp"

namespace lame {

struct CombinatorialCap : std::runtime_error {
    explicit CombinatorialCap(const std::string& what) : std::runtime_error(what) {}
};

struct EigenFailure : std::runtime_error {
    explicit EigenFailure(const std::string& what) : std::runtime_error(what) {}
};

// Rational sum tau_i / (z - z_i): at least two poles carrying positive
// masses that sum to one. Coincident poles are allowed; they shift mass
// into the numerator zeros.
struct SzNagyConfig {
    std::vector<Complex> poles;
    std::vector<double> tau;

    SzNagyConfig(std::vector<Complex> poles_in, std::vector<double> tau_in,
                 double sum_tol = 1e-12);

    // Monic numerator sum_i tau_i prod_{j != i} (z - z_j), degree m - 1.
    ComplexPolynomial numerator() const;
};

// The m - 1 numerator zeros; a pole of multiplicity q contributes q - 1.
RootSet sz_nagy_zeros(const SzNagyConfig& config, const NumericPolicy& policy = {});

// Minimum slack of a dominance inequality over a convex test family plus
// the transfer certificate for the mass-normalized configurations.
struct SlackReport {
    double min_slack = 0.0;  // raw scale of the inequality as stated
    double mass = 1.0;       // transported mass; min_slack = mass * normalized gap
    TransferCertificate certificate;
    WeightedPointConfig lhs;
    WeightedPointConfig rhs;
};

// Numerator zeros against poles: sum_j f(w_j) <= sum_i (1 - tau_i) f(z_i)
// for convex f, minimized over the ramp grid.
SlackReport generalized_derivative_check(const SzNagyConfig& config,
                                         const NumericPolicy& policy = {});

// Elementary-symmetric dominance: the e-th symmetric function over d-subsets
// of numerator zeros against the (1 - sum tau) weighted d-subsets of poles.
// Throws CombinatorialCap when the pole count exceeds policy.subset_pole_cap.
SlackReport symmetric_product_check(const SzNagyConfig& config, int subset_size,
                                    int symmetric_index, const NumericPolicy& policy = {});

// One derivative step at level i of P (degree d):
// (d - i + 1) sum_{zeros of P^(i)} f <= (d - i) sum_{zeros of P^(i-1)} f.
SlackReport derivative_chain_check(const ComplexPolynomial& P, int level,
                                   const NumericPolicy& policy = {});

struct JacobiParams {
    int degree;    // n >= 1
    double alpha;  // > -1
    double beta;   // > -1

    JacobiParams(int n, double a, double b);
};

// Degree-n polynomial in the standard normalization (value binom(n+alpha, n)
// at z = 1), built by the three-term recurrence.
ComplexPolynomial jacobi_poly(const JacobiParams& params);

// The n zeros, ascending, strictly inside (-1, 1); eigenvalues of the
// symmetric tridiagonal recurrence matrix. Throws EigenFailure when the
// eigensolver does not converge.
std::vector<double> jacobi_zeros(const JacobiParams& params);

// Endpoint dominance for the zero set:
// (1/n) sum f(zeros) <= [(n+beta) f(1) + (n+alpha) f(-1)] / (2n+alpha+beta),
// minimized over |x - c| on a grid in [-1, 1] plus x^2.
SlackReport jacobi_endpoint_check(const JacobiParams& params,
                                  const NumericPolicy& policy = {});

struct JacobiRefinedReport {
    double min_slack = 0.0;        // raw refined inequality
    double min_chain_slack = 0.0;  // raw derivative-step slack for the zero set
    // Largest defect of (endpoint slack) - (refined slack) - (scaled chain
    // slack), an algebraic identity up to roundoff.
    double composition_defect = 0.0;
    double mass = 1.0;
    TransferCertificate certificate;
    WeightedPointConfig lhs;
    WeightedPointConfig rhs;
};

// Sharper endpoint dominance through the derivative zeros, degree >= 2:
// (n+a+b+1) sum f(zeros) <= (n+a+b) sum f(deriv zeros) + (n+b) f(1) + (n+a) f(-1).
JacobiRefinedReport jacobi_refined_check(const JacobiParams& params,
                                         const NumericPolicy& policy = {});

struct ArcsineBound {
    double lhs = 0.0;    // arcsine average of |x - c|
    double bound = 0.0;  // max(1, |c|)
};

// Gauss-Chebyshev estimate of the arcsine average of |x - c| against the
// max(1, |c|) envelope; the estimate never exceeds the envelope.
ArcsineBound arcsine_bound_check(double c, const NumericPolicy& policy = {});

}  // namespace lame

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lame/poly.hpp"
#include "lame/policy.hpp"

namespace lame {

struct BadOccupancy : std::runtime_error {
    explicit BadOccupancy(const std::string& what) : std::runtime_error(what) {}
};
struct IntervalEscape : std::runtime_error {
    explicit IntervalEscape(const std::string& what) : std::runtime_error(what) {}
};
struct SingularJacobian : std::runtime_error {
    explicit SingularJacobian(const std::string& what) : std::runtime_error(what) {}
};
struct Overflow : std::runtime_error {
    explicit Overflow(const std::string& what) : std::runtime_error(what) {}
};

// Operator data: distinct simple poles zeta_l with positive residues a_l,
// differential order k >= 2 and eigenpolynomial degree n >= 1. The leading
// coefficient polynomial is monic with the poles as roots; the subleading
// one is fixed by the residues. Requires p >= k so the reduced degree
// r = p - k is nonnegative.
class LameInstance {
public:
    LameInstance(std::vector<Complex> poles, std::vector<double> residues, int order_k,
                 int degree_n);

    int num_poles() const { return static_cast<int>(poles_.size()); }
    int order() const { return k_; }
    int degree() const { return n_; }
    int reduced_degree() const { return num_poles() - k_; }

    const std::vector<Complex>& poles() const { return poles_; }
    const std::vector<double>& residues() const { return residues_; }
    double residue_sum() const;

    const ComplexPolynomial& leading_poly() const { return q2_; }     // monic, degree p
    const ComplexPolynomial& subleading_poly() const { return q1_; }  // degree p-1

    // True when the poles are real and the order is 2: the regime with a
    // complete interval-occupancy indexing of the spectrum.
    bool is_stieltjes() const;
    // Poles sorted ascending; requires real poles.
    std::vector<double> sorted_real_poles() const;

    // alpha = n - k + 1 + sum of residues; always > 1 here.
    double alpha() const;
    // Exact leading coefficient of the accessory polynomial:
    // -(n (n-1) ... (n-k+2)) * alpha.
    double accessory_leading() const;

private:
    std::vector<Complex> poles_;
    std::vector<double> residues_;
    int k_;
    int n_;
    ComplexPolynomial q2_;
    ComplexPolynomial q1_;
};

// A solved eigenpair: accessory polynomial V of degree r (natural
// normalization, leading coefficient pinned by the instance) and monic
// eigenpolynomial S of degree n.
struct SpectralPair {
    ComplexPolynomial accessory;   // V
    ComplexPolynomial eigenpoly;   // S, monic
    double residual = 0.0;
    std::optional<std::vector<int>> occupancy;
    // Zeros of S as the solver produced them. Crowded zeros are badly
    // conditioned as polynomial coefficients, so consumers that need point
    // locations should prefer these over re-extracting roots from eigenpoly.
    std::optional<std::vector<Complex>> eigen_zeros;

    ComplexPolynomial monic_accessory() const;
};

// Number of eigenpairs for degree n with p poles: C(n+p-2, n).
// Throws Overflow beyond the 63-bit range.
std::uint64_t sigma_count(int degree_n, int num_poles);

// Relative coefficient norm of Q2 S^(k) + Q1 S^(k-1) + V S against the sum
// of the three term norms.
double spectral_residual(const LameInstance& inst, const ComplexPolynomial& accessory,
                         const ComplexPolynomial& eigenpoly);

// Exact-division recovery of V from S: quotient of -(Q2 S^(k) + Q1 S^(k-1))
// by S. The pair residual reports how far S is from an actual eigenpoly.
SpectralPair recover_accessory(const LameInstance& inst, const ComplexPolynomial& eigenpoly);

// Occupancy handling (Stieltjes regime, k = 2). An occupancy assigns a
// number of eigenpoly zeros to each open pole gap; entries are nonnegative
// and sum to n.
std::vector<std::vector<int>> all_occupancies(int degree_n, int gaps);
std::vector<int> balanced_occupancy(int degree_n, int gaps);

// Chebyshev-spaced starting zeros inside each assigned gap, ascending.
std::vector<double> bethe_initial(const LameInstance& inst, const std::vector<int>& occupancy);

// Damped Newton on the zero-location equations
//   sum_{j != i} 2/(s_i - s_j) + Q1(s_i)/Q2(s_i) = 0,
// with iterates confined to their assigned gaps.
SpectralPair solve_bethe(const LameInstance& inst, const std::vector<int>& occupancy,
                         const NumericPolicy& policy = {});

// Damped Newton in coefficient space with the leading V coefficient pinned;
// start holds the n free S coefficients then the r free V coefficients.
SpectralPair solve_newton_coeffs(const LameInstance& inst, std::vector<Complex> start,
                                 const NumericPolicy& policy = {});

// Seeded multistart around Chebyshev-placed zeros; first pair that passes
// the residual gate wins.
SpectralPair solve_multistart(const LameInstance& inst, std::uint64_t seed,
                              const NumericPolicy& policy = {});

// All sigma_count pairs in the Stieltjes regime (one per occupancy, listed
// in lexicographic occupancy order); best-effort seeded multistart
// collection otherwise.
std::vector<SpectralPair> enumerate_solutions(const LameInstance& inst,
                                              const NumericPolicy& policy = {},
                                              std::uint64_t seed = 0);

// Max-min matching distance between two point multisets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace lame

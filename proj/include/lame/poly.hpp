#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "lame/policy.hpp"

namespace lame {

using Complex = std::complex<double>;

struct ZeroDivisor : std::runtime_error {
    ZeroDivisor() : std::runtime_error("division by the zero polynomial") {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Dense univariate polynomial over the complex numbers, coefficients stored
// ascending by power. The empty coefficient vector is the zero polynomial.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<Complex> coeffs);

    // Monic polynomial with the given roots; an empty list gives the constant 1.
    static ComplexPolynomial from_roots(const std::vector<Complex>& roots);
    static ComplexPolynomial constant(Complex value);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    // Coefficient of z^k, zero beyond the degree.
    Complex coeff(int k) const;
    Complex leading() const;

    Complex operator()(Complex z) const;
    ComplexPolynomial derivative(int order = 1) const;

    // Largest coefficient modulus; zero for the zero polynomial.
    double max_coeff_norm() const;

    friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& a);

private:
    std::vector<Complex> coeffs_;
    void trim();
};

struct DivisionResult {
    ComplexPolynomial quotient;
    ComplexPolynomial remainder;
    // max-norm of the remainder over (max-norm of the numerator + 1)
    double relative_remainder = 0.0;
};

// Euclidean division; throws ZeroDivisor when the divisor is zero.
DivisionResult divide_with_remainder(const ComplexPolynomial& numerator,
                                     const ComplexPolynomial& divisor);

// Distinct roots with multiplicities recovered by cluster radius.
struct RootSet {
    std::vector<Complex> roots;        // sorted by (re, im)
    std::vector<int> multiplicities;   // parallel to roots, sums to the degree
    std::vector<double> backward_errors;

    // Roots repeated according to multiplicity, in stored order.
    std::vector<Complex> expanded() const;
};

// Simultaneous (Aberth-Ehrlich) iteration from Cauchy-bound initial guesses.
// Every returned root satisfies |p(root)| <= root_tol * scale(root) where
// scale(z) = sum_k |c_k| |z|^k; otherwise NoConvergence is thrown.
RootSet find_roots(const ComplexPolynomial& p, const NumericPolicy& policy = {});

}  // namespace lame

#include "lame/classical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace lame {

namespace {

constexpr double kPi = 3.14159265358979323846;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

// e-th elementary symmetric function of the values.
Complex elementary_symmetric(const std::vector<Complex>& values, int e) {
    std::vector<Complex> es(static_cast<std::size_t>(e) + 1, Complex(0.0, 0.0));
    es[0] = Complex(1.0, 0.0);
    int seen = 0;
    for (const Complex& v : values) {
        ++seen;
        for (int j = std::min(e, seen); j >= 1; --j) es[j] += v * es[j - 1];
    }
    return es[static_cast<std::size_t>(e)];
}

// k-subsets of {0..m-1} in lexicographic order.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    if (k == 0) {
        fn(idx);
        return;
    }
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

SlackReport dominance_report(WeightedPointConfig lhs, WeightedPointConfig rhs, double mass,
                             const NumericPolicy& policy) {
    SlackReport report;
    report.mass = mass;
    report.min_slack = mass * hinge_gap(lhs, rhs, policy);
    report.certificate = check_majorization(lhs, rhs, policy);
    report.lhs = std::move(lhs);
    report.rhs = std::move(rhs);
    return report;
}

// |x - c| hinges on a [-1, 1] grid plus x^2: the 1-D convex test family.
std::vector<std::function<double(double)>> interval_convex_family(const NumericPolicy& policy) {
    const int grid = std::max(2, policy.offset_grid_points);
    std::vector<std::function<double(double)>> family;
    family.reserve(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i < grid; ++i) {
        const double c = -1.0 + 2.0 * i / (grid - 1);
        family.emplace_back([c](double x) { return std::abs(x - c); });
    }
    family.emplace_back([](double x) { return x * x; });
    return family;
}

}  // namespace

SzNagyConfig::SzNagyConfig(std::vector<Complex> poles_in, std::vector<double> tau_in,
                           double sum_tol)
    : poles(std::move(poles_in)), tau(std::move(tau_in)) {
    if (poles.size() < 2 || poles.size() != tau.size())
        throw std::invalid_argument("need at least two poles with matching masses");
    double total = 0.0;
    for (double t : tau) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw std::invalid_argument("pole masses must be positive and finite");
        total += t;
    }
    if (std::abs(total - 1.0) > sum_tol)
        throw std::invalid_argument("pole masses must sum to one");
    for (const Complex& z : poles)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("poles must be finite");
}

ComplexPolynomial SzNagyConfig::numerator() const {
    ComplexPolynomial acc;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        std::vector<Complex> others;
        others.reserve(poles.size() - 1);
        for (std::size_t j = 0; j < poles.size(); ++j)
            if (j != i) others.push_back(poles[j]);
        acc = acc + Complex(tau[i], 0.0) * ComplexPolynomial::from_roots(others);
    }
    return acc;
}

RootSet sz_nagy_zeros(const SzNagyConfig& config, const NumericPolicy& policy) {
    return find_roots(config.numerator(), policy);
}

SlackReport generalized_derivative_check(const SzNagyConfig& config,
                                         const NumericPolicy& policy) {
    const std::vector<Complex> zeros = sz_nagy_zeros(config, policy).expanded();
    const double m1 = static_cast<double>(zeros.size());
    WeightedPointConfig lhs(zeros, std::vector<double>(zeros.size(), 1.0 / m1));
    std::vector<double> rhs_weights(config.tau.size());
    for (std::size_t i = 0; i < config.tau.size(); ++i)
        rhs_weights[i] = (1.0 - config.tau[i]) / m1;
    WeightedPointConfig rhs(config.poles, std::move(rhs_weights));
    return dominance_report(std::move(lhs), std::move(rhs), m1, policy);
}

SlackReport symmetric_product_check(const SzNagyConfig& config, int subset_size,
                                    int symmetric_index, const NumericPolicy& policy) {
    const int m = static_cast<int>(config.poles.size());
    if (m > policy.subset_pole_cap)
        throw CombinatorialCap("pole count exceeds the subset enumeration cap");
    if (subset_size < 1 || subset_size > m - 1)
        throw std::invalid_argument("subset size must lie in [1, m-1]");
    if (symmetric_index < 0 || symmetric_index > subset_size)
        throw std::invalid_argument("symmetric index must lie in [0, subset size]");

    const std::vector<Complex> zeros = sz_nagy_zeros(config, policy).expanded();
    const double norm = binomial(m - 1, subset_size);

    std::vector<Complex> lhs_points;
    for_each_subset(m - 1, subset_size, [&](const std::vector<int>& idx) {
        std::vector<Complex> chosen;
        chosen.reserve(idx.size());
        for (int i : idx) chosen.push_back(zeros[static_cast<std::size_t>(i)]);
        lhs_points.push_back(elementary_symmetric(chosen, symmetric_index));
    });
    const std::size_t lhs_count = lhs_points.size();
    WeightedPointConfig lhs(std::move(lhs_points),
                            std::vector<double>(lhs_count, 1.0 / norm));

    std::vector<Complex> rhs_points;
    std::vector<double> rhs_weights;
    for_each_subset(m, subset_size, [&](const std::vector<int>& idx) {
        std::vector<Complex> chosen;
        chosen.reserve(idx.size());
        double tau_sum = 0.0;
        for (int i : idx) {
            chosen.push_back(config.poles[static_cast<std::size_t>(i)]);
            tau_sum += config.tau[static_cast<std::size_t>(i)];
        }
        rhs_points.push_back(elementary_symmetric(chosen, symmetric_index));
        rhs_weights.push_back((1.0 - tau_sum) / norm);
    });
    WeightedPointConfig rhs(std::move(rhs_points), std::move(rhs_weights), 1e-9);

    return dominance_report(std::move(lhs), std::move(rhs), norm, policy);
}

SlackReport derivative_chain_check(const ComplexPolynomial& P, int level,
                                   const NumericPolicy& policy) {
    const int d = P.degree();
    if (d < 2) throw std::invalid_argument("need degree at least two");
    if (level < 1 || level > d - 1)
        throw std::invalid_argument("derivative level must lie in [1, degree-1]");

    const std::vector<Complex> upper = find_roots(P.derivative(level - 1), policy).expanded();
    const std::vector<Complex> lower = find_roots(P.derivative(level), policy).expanded();
    const double nu = static_cast<double>(lower.size());   // d - level
    const double nup = static_cast<double>(upper.size());  // d - level + 1
    WeightedPointConfig lhs(lower, std::vector<double>(lower.size(), 1.0 / nu));
    WeightedPointConfig rhs(upper, std::vector<double>(upper.size(), 1.0 / nup));
    return dominance_report(std::move(lhs), std::move(rhs), nu * nup, policy);
}

JacobiParams::JacobiParams(int n, double a, double b) : degree(n), alpha(a), beta(b) {
    if (n < 1) throw std::invalid_argument("degree must be at least one");
    if (!(a > -1.0) || !(b > -1.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("both exponents must be finite and exceed -1");
}

ComplexPolynomial jacobi_poly(const JacobiParams& params) {
    const double a = params.alpha;
    const double b = params.beta;
    const double ab = a + b;
    ComplexPolynomial prev = ComplexPolynomial::constant(1.0);
    ComplexPolynomial cur({Complex((a - b) / 2.0, 0.0), Complex((ab + 2.0) / 2.0, 0.0)});
    double val_prev = 1.0;       // value at z = 1, tracked through the recurrence
    double val_cur = a + 1.0;
    const ComplexPolynomial z({Complex(0.0, 0.0), Complex(1.0, 0.0)});
    for (int n = 2; n <= params.degree; ++n) {
        const double c1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0);
        const double c2 = (2.0 * n + ab - 1.0) * (2.0 * n + ab) * (2.0 * n + ab - 2.0);
        const double c3 = (2.0 * n + ab - 1.0) * (a * a - b * b);
        const double c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + ab);
        ComplexPolynomial next = Complex(c2 / c1, 0.0) * (z * cur) +
                                 Complex(c3 / c1, 0.0) * cur +
                                 Complex(-c4 / c1, 0.0) * prev;
        prev = std::move(cur);
        cur = std::move(next);
        const double val_next = ((c2 + c3) * val_cur - c4 * val_prev) / c1;
        val_prev = val_cur;
        val_cur = val_next;
    }
    double expected = 1.0;  // binom(n + alpha, n) via the rising product
    for (int i = 1; i <= params.degree; ++i) expected = expected * (a + i) / i;
    if (std::abs(val_cur - expected) > 1e-9 * (1.0 + std::abs(expected)))
        throw std::logic_error("recurrence lost the standard normalization");
    return cur;
}

std::vector<double> jacobi_zeros(const JacobiParams& params) {
    const int n = params.degree;
    const double a = params.alpha;
    const double b = params.beta;
    const double ab = a + b;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    diag(0) = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k)
        diag(k) = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    if (n > 1) {
        const double b1 = 4.0 * (1.0 + a) * (1.0 + b) /
                          ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        sub(0) = std::sqrt(b1);
    }
    for (int k = 2; k < n; ++k) {
        const double t = 2.0 * k + ab;
        const double bk = 4.0 * k * (k + a) * (k + b) * (k + ab) /
                          (t * t * (t + 1.0) * (t - 1.0));
        sub(k - 1) = std::sqrt(bk);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigenFailure("tridiagonal eigensolve did not converge");
    std::vector<double> zeros(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) zeros[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

SlackReport jacobi_endpoint_check(const JacobiParams& params, const NumericPolicy& policy) {
    const double n = params.degree;
    const double denom = 2.0 * n + params.alpha + params.beta;
    const double w_plus = (n + params.beta) / denom;
    const double w_minus = (n + params.alpha) / denom;
    const std::vector<double> zeros = jacobi_zeros(params);

    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& f : interval_convex_family(policy)) {
        double sum = 0.0;
        for (double x : zeros) sum += f(x);
        min_slack = std::min(min_slack, w_plus * f(1.0) + w_minus * f(-1.0) - sum / n);
    }

    std::vector<Complex> lhs_points(zeros.begin(), zeros.end());
    WeightedPointConfig lhs(std::move(lhs_points), std::vector<double>(zeros.size(), 1.0 / n));
    WeightedPointConfig rhs({Complex(1.0, 0.0), Complex(-1.0, 0.0)}, {w_plus, w_minus});

    SlackReport report;
    report.mass = 1.0;
    report.min_slack = min_slack;
    report.certificate = check_majorization(lhs, rhs, policy);
    report.lhs = std::move(lhs);
    report.rhs = std::move(rhs);
    return report;
}

JacobiRefinedReport jacobi_refined_check(const JacobiParams& params,
                                         const NumericPolicy& policy) {
    if (params.degree < 2) throw std::invalid_argument("refinement needs degree at least two");
    const double n = params.degree;
    const double a = params.alpha;
    const double b = params.beta;
    const double ab1 = n + a + b + 1.0;
    const std::vector<double> zeros = jacobi_zeros(params);
    // The derivative is a scalar multiple of the (alpha+1, beta+1) polynomial
    // one degree down, so its zeros come from the same stable eigensolve.
    const std::vector<double> dzeros =
        jacobi_zeros(JacobiParams(params.degree - 1, a + 1.0, b + 1.0));

    JacobiRefinedReport report;
    report.mass = n * ab1;
    report.min_slack = std::numeric_limits<double>::infinity();
    report.min_chain_slack = std::numeric_limits<double>::infinity();
    for (const auto& f : interval_convex_family(policy)) {
        double s0 = 0.0;
        for (double x : zeros) s0 += f(x);
        double s1 = 0.0;
        for (double x : dzeros) s1 += f(x);
        const double ends = (n + b) * f(1.0) + (n + a) * f(-1.0);
        const double refined = (n + a + b) * s1 + ends - ab1 * s0;
        const double chain = (n - 1.0) * s0 - n * s1;
        const double endpoint = ends - (2.0 * n + a + b) / n * s0;
        report.min_slack = std::min(report.min_slack, refined);
        report.min_chain_slack = std::min(report.min_chain_slack, chain);
        report.composition_defect =
            std::max(report.composition_defect,
                     std::abs(endpoint - refined - (n + a + b) / n * chain));
    }
    if (report.composition_defect > policy.classical_tol)
        throw std::logic_error("derivative-step composition identity violated");

    std::vector<Complex> lhs_points(zeros.begin(), zeros.end());
    WeightedPointConfig lhs(std::move(lhs_points), std::vector<double>(zeros.size(), 1.0 / n));
    std::vector<Complex> rhs_points(dzeros.begin(), dzeros.end());
    rhs_points.emplace_back(1.0, 0.0);
    rhs_points.emplace_back(-1.0, 0.0);
    std::vector<double> rhs_weights(dzeros.size(), (n + a + b) / (n * ab1));
    rhs_weights.push_back((n + b) / (n * ab1));
    rhs_weights.push_back((n + a) / (n * ab1));
    WeightedPointConfig rhs(std::move(rhs_points), std::move(rhs_weights), 1e-9);
    report.certificate = check_majorization(lhs, rhs, policy);
    report.lhs = std::move(lhs);
    report.rhs = std::move(rhs);
    return report;
}

ArcsineBound arcsine_bound_check(double c, const NumericPolicy& policy) {
    if (!std::isfinite(c)) throw std::invalid_argument("offset must be finite");
    const int nodes = std::max(1, policy.arcsine_nodes);
    double acc = 0.0;
    for (int i = 1; i <= nodes; ++i)
        acc += std::abs(std::cos((2.0 * i - 1.0) * kPi / (2.0 * nodes)) - c);
    ArcsineBound out;
    out.lhs = acc / nodes;
    out.bound = std::max(1.0, std::abs(c));
    if (out.lhs > out.bound + 1e-10)
        throw std::logic_error("arcsine average exceeded its envelope");
    return out;
}

}  // namespace lame

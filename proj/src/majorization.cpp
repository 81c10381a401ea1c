#include "lame/majorization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace lame {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Phase1Result {
    double objective = 0.0;
    std::vector<double> x;
    bool stalled = false;
};

// Phase-1 revised simplex. Minimizes the sum of artificial variables for
// Ax = b, x >= 0, keeping an explicit basis inverse; transfer columns carry
// only a few nonzeros, so pricing stays cheap. Enters on the most negative
// reduced cost until the objective stops improving, then falls back to
// Bland's rule, which cannot cycle. Artificials never re-enter.
Phase1Result phase1_simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int pivot_budget) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());

    // Flip rows so the right-hand side is nonnegative, then store columns
    // sparsely.
    std::vector<std::vector<std::pair<int, double>>> cols(static_cast<std::size_t>(n));
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        const double sign = b(i) < 0.0 ? -1.0 : 1.0;
        rhs(i) = sign * b(i);
        for (int j = 0; j < n; ++j) {
            const double v = sign * A(i, j);
            if (v != 0.0) cols[static_cast<std::size_t>(j)].emplace_back(i, v);
        }
    }

    // Row-major: pivots rewrite whole rows of the inverse.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Binv =
        Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd xB = rhs;
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;  // artificial start
    std::vector<char> in_basis(static_cast<std::size_t>(n), 0);

    // Rebuild the inverse from the basis columns; incremental updates drift.
    const auto refactor = [&]() {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
        for (int t = 0; t < m; ++t) {
            if (basis[t] < n)
                for (const auto& [row, v] : cols[static_cast<std::size_t>(basis[t])])
                    B(row, t) = v;
            else
                B(basis[t] - n, t) = 1.0;
        }
        Binv = Eigen::PartialPivLU<Eigen::MatrixXd>(B).inverse();
        xB = (Binv * rhs).cwiseMax(0.0);
    };

    const double enter_tol = 1e-11;
    const double pivot_tol = 1e-11;
    const int refactor_period = 64;
    int pivots = 0;
    int since_refactor = 0;
    bool fresh = true;
    bool bland = false;
    int flat_pivots = 0;
    double last_obj = std::numeric_limits<double>::infinity();
    Eigen::VectorXd y(m);
    Eigen::VectorXd u(m);
    for (;;) {
        // Dual prices of the artificial cost vector: sum the inverse rows
        // that still carry an artificial.
        y.setZero();
        double obj = 0.0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n) {
                y += Binv.row(i);
                obj += xB(i);
            }

        int enter = -1;
        if (bland) {
            for (int j = 0; j < n && enter < 0; ++j) {
                if (in_basis[static_cast<std::size_t>(j)]) continue;
                double d = 0.0;
                for (const auto& [row, v] : cols[static_cast<std::size_t>(j)]) d -= y(row) * v;
                if (d < -enter_tol) enter = j;
            }
        } else {
            double most = -enter_tol;
            for (int j = 0; j < n; ++j) {
                if (in_basis[static_cast<std::size_t>(j)]) continue;
                double d = 0.0;
                for (const auto& [row, v] : cols[static_cast<std::size_t>(j)]) d -= y(row) * v;
                if (d < most) {
                    most = d;
                    enter = j;
                }
            }
            flat_pivots = obj < last_obj - 1e-13 ? 0 : flat_pivots + 1;
            last_obj = std::min(last_obj, obj);
            if (flat_pivots > m + 3) bland = true;  // degenerate run: switch to anti-cycling rule
        }
        if (enter < 0) {
            if (fresh) break;
            refactor();  // confirm optimality against an unflawed inverse
            fresh = true;
            continue;
        }

        u.setZero();
        for (const auto& [row, v] : cols[static_cast<std::size_t>(enter)]) u += v * Binv.col(row);

        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (u(i) <= pivot_tol) continue;
            const double ratio = xB(i) / u(i);
            if (ratio < best - 1e-12) {
                best = ratio;
                leave = i;
            } else if (ratio < best + 1e-12 && leave >= 0 && basis[i] < basis[leave]) {
                leave = i;
            }
        }
        if (leave < 0) {
            if (fresh) break;  // cannot happen for a bounded phase-1 objective
            refactor();
            fresh = true;
            continue;
        }
        if (++pivots > pivot_budget) {
            Phase1Result res;
            res.stalled = true;
            return res;
        }

        const double step = xB(leave) / u(leave);
        xB -= step * u;
        xB(leave) = step;
        Binv.row(leave) /= u(leave);
        for (int r = 0; r < m; ++r) {
            if (r == leave) continue;
            const double factor = u(r);
            if (factor != 0.0) Binv.row(r) -= factor * Binv.row(leave);
        }
        if (basis[leave] < n) in_basis[static_cast<std::size_t>(basis[leave])] = 0;
        basis[leave] = enter;
        in_basis[static_cast<std::size_t>(enter)] = 1;
        fresh = false;
        if (++since_refactor >= refactor_period) {
            refactor();
            since_refactor = 0;
            fresh = true;
        }
    }

    Phase1Result res;
    res.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n)
            res.x[static_cast<std::size_t>(basis[i])] = xB(i);
        else
            res.objective += std::max(xB(i), 0.0);
    }
    return res;
}

}  // namespace

WeightedPointConfig::WeightedPointConfig(std::vector<Complex> pts, std::vector<double> wts,
                                         double sum_tol)
    : points(std::move(pts)), weights(std::move(wts)) {
    if (points.empty() || points.size() != weights.size())
        throw std::invalid_argument("configuration needs matching nonempty points and weights");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("weights must be nonnegative and finite");
        total += w;
    }
    if (std::abs(total - 1.0) > sum_tol)
        throw std::invalid_argument("weights must sum to one");
}

Complex WeightedPointConfig::barycenter() const {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) acc += weights[i] * points[i];
    return acc;
}

WeightTriple majorization_weights(const LameInstance& inst) {
    const int n = inst.degree();
    const int k = inst.order();
    const int p = inst.num_poles();
    const int r = inst.reduced_degree();
    WeightTriple w;
    w.alpha = inst.alpha();
    w.denominator = (p - 1) * w.alpha + (n - k + 1);
    w.accessory_weight = w.alpha / w.denominator;
    w.eigen_weight = ((k - 1) * w.alpha + (n - k + 1)) / (n * w.denominator);
    w.pole_weights.resize(p);
    for (int l = 0; l < p; ++l) w.pole_weights[l] = (w.alpha - inst.residues()[l]) / w.denominator;

    double mass = r * w.accessory_weight + n * w.eigen_weight;
    double pole_mass = 0.0;
    for (double c : w.pole_weights) {
        if (!(c > 0.0)) throw std::invalid_argument("pole weight must be positive");
        pole_mass += c;
    }
    if (std::abs(mass - 1.0) > 1e-12 || std::abs(pole_mass - 1.0) > 1e-12)
        throw std::invalid_argument("weight blocks fail to normalize");
    return w;
}

TransferCertificate check_majorization(const WeightedPointConfig& lhs,
                                       const WeightedPointConfig& rhs,
                                       const NumericPolicy& policy) {
    const int m = static_cast<int>(lhs.points.size());
    const int q = static_cast<int>(rhs.points.size());
    const int nvars = m * q;

    bool any_imag = false;
    for (Complex z : lhs.points) any_imag = any_imag || z.imag() != 0.0;
    for (Complex z : rhs.points) any_imag = any_imag || z.imag() != 0.0;

    const int raw_rows = m + q + (any_imag ? 2 * m : m);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(raw_rows, nvars);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(raw_rows);
    int row = 0;
    for (int i = 0; i < m; ++i, ++row) {
        for (int j = 0; j < q; ++j) A(row, i * q + j) = 1.0;
        b(row) = 1.0;
    }
    for (int j = 0; j < q; ++j, ++row) {
        for (int i = 0; i < m; ++i) A(row, i * q + j) = lhs.weights[i];
        b(row) = rhs.weights[j];
    }
    for (int i = 0; i < m; ++i, ++row) {
        for (int j = 0; j < q; ++j) A(row, i * q + j) = rhs.points[j].real();
        b(row) = lhs.points[i].real();
    }
    if (any_imag) {
        for (int i = 0; i < m; ++i, ++row) {
            for (int j = 0; j < q; ++j) A(row, i * q + j) = rhs.points[j].imag();
            b(row) = lhs.points[i].imag();
        }
    }

    Phase1Result res = phase1_simplex(A, b, policy.lp_pivot_budget);
    if (res.stalled) {
        Eigen::VectorXd bp = b;
        for (int i = 0; i < raw_rows; ++i)
            bp(i) += policy.lp_perturbation * static_cast<double>((i % 7) + 1) / 7.0;
        res = phase1_simplex(A, bp, policy.lp_pivot_budget);
        if (res.stalled)
            throw NumericalStall("transfer feasibility pivoting exceeded its budget twice");
    }

    TransferCertificate cert;
    cert.rows = m;
    cert.cols = q;
    if (res.objective > policy.lp_tol) {
        cert.feasible = false;
        cert.max_violation = res.objective;
        return cert;
    }

    // Verify the candidate matrix against the original constraints.
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        double rs = 0.0;
        for (int j = 0; j < q; ++j) rs += res.x[i * q + j];
        worst = std::max(worst, std::abs(rs - 1.0));
    }
    for (int j = 0; j < q; ++j) {
        double ws = 0.0;
        for (int i = 0; i < m; ++i) ws += lhs.weights[i] * res.x[i * q + j];
        worst = std::max(worst, std::abs(ws - rhs.weights[j]));
    }
    for (int i = 0; i < m; ++i) {
        Complex pt(0.0, 0.0);
        for (int j = 0; j < q; ++j) pt += res.x[i * q + j] * rhs.points[j];
        worst = std::max(worst, std::abs(pt - lhs.points[i]));
    }
    cert.max_violation = worst;
    cert.feasible = worst <= policy.lp_tol;
    if (cert.feasible) {
        cert.matrix.resize(nvars);
        for (int t = 0; t < nvars; ++t) cert.matrix[t] = std::max(0.0, res.x[t]);
        cert.row_sums.resize(m);
        for (int i = 0; i < m; ++i) {
            double rs = 0.0;
            for (int j = 0; j < q; ++j) rs += cert.matrix[i * q + j];
            cert.row_sums[i] = rs;
        }
    }
    return cert;
}

double convex_gap(const WeightedPointConfig& lhs, const WeightedPointConfig& rhs,
                  const std::function<double(Complex)>& f) {
    double acc = 0.0;
    for (std::size_t j = 0; j < rhs.points.size(); ++j) acc += rhs.weights[j] * f(rhs.points[j]);
    for (std::size_t i = 0; i < lhs.points.size(); ++i) acc -= lhs.weights[i] * f(lhs.points[i]);
    return acc;
}

double hinge_gap(const WeightedPointConfig& lhs, const WeightedPointConfig& rhs,
                 const NumericPolicy& policy) {
    double min_slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < policy.hinge_angles; ++t) {
        const double theta = 2.0 * kPi * t / policy.hinge_angles;
        const Complex dir = std::polar(1.0, -theta);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (Complex y : rhs.points) {
            const double v = (dir * y).real();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const int count = hi > lo ? policy.hinge_offsets : 1;
        for (int s = 0; s < count; ++s) {
            const double c = count == 1 ? lo : lo + (hi - lo) * s / (count - 1);
            double slack = 0.0;
            for (std::size_t j = 0; j < rhs.points.size(); ++j)
                slack += rhs.weights[j] * std::max(0.0, (dir * rhs.points[j]).real() - c);
            for (std::size_t i = 0; i < lhs.points.size(); ++i)
                slack -= lhs.weights[i] * std::max(0.0, (dir * lhs.points[i]).real() - c);
            min_slack = std::min(min_slack, slack);
        }
    }
    return min_slack;
}

double config_scale(const WeightedPointConfig& lhs, const WeightedPointConfig& rhs) {
    double scale = 1.0;
    for (Complex z : lhs.points) scale = std::max(scale, std::abs(z));
    for (Complex z : rhs.points) scale = std::max(scale, std::abs(z));
    return scale;
}

namespace {

std::vector<Complex> eigen_zero_set(const SpectralPair& pair, const NumericPolicy& policy) {
    if (pair.eigen_zeros) return *pair.eigen_zeros;
    return find_roots(pair.eigenpoly, policy).expanded();
}

}  // namespace

void spectral_order_configs(const LameInstance& inst, const SpectralPair& pair,
                            const NumericPolicy& policy, WeightedPointConfig& lhs,
                            WeightedPointConfig& rhs) {
    const WeightTriple w = majorization_weights(inst);
    std::vector<Complex> lhs_pts;
    std::vector<double> lhs_wts;
    if (inst.reduced_degree() >= 1) {
        for (Complex z : find_roots(pair.accessory, policy).expanded()) {
            lhs_pts.push_back(z);
            lhs_wts.push_back(w.accessory_weight);
        }
    }
    for (Complex z : eigen_zero_set(pair, policy)) {
        lhs_pts.push_back(z);
        lhs_wts.push_back(w.eigen_weight);
    }
    lhs = WeightedPointConfig(std::move(lhs_pts), std::move(lhs_wts));
    rhs = WeightedPointConfig(inst.poles(), w.pole_weights);
}

InequalityReport check_spectral_order(const LameInstance& inst, const SpectralPair& pair,
                                      const NumericPolicy& policy) {
    if (pair.residual > policy.solver_tol)
        throw std::invalid_argument("pair fails the residual gate");
    InequalityReport rep;
    spectral_order_configs(inst, pair, policy, rep.lhs, rep.rhs);
    rep.certificate = check_majorization(rep.lhs, rep.rhs, policy);
    rep.min_hinge_slack = hinge_gap(rep.lhs, rep.rhs, policy);
    rep.barycenter_gap = std::abs(rep.lhs.barycenter() - rep.rhs.barycenter());
    rep.scale = config_scale(rep.lhs, rep.rhs);
    return rep;
}

RefinedInequalityReport check_spectral_order_refined(const LameInstance& inst,
                                                     const SpectralPair& pair,
                                                     const NumericPolicy& policy) {
    if (pair.residual > policy.solver_tol)
        throw std::invalid_argument("pair fails the residual gate");
    const int n = inst.degree();
    const int k = inst.order();
    const int r = inst.reduced_degree();
    if (n < k - 1) throw std::invalid_argument("degree too small for the refined inequality");
    const double alpha = inst.alpha();
    const int total = n + r;

    std::vector<Complex> accessory_zeros;
    if (r >= 1) accessory_zeros = find_roots(pair.accessory, policy).expanded();
    const std::vector<Complex> eigen_zeros = eigen_zero_set(pair, policy);
    std::vector<Complex> deriv_zeros;
    if (n - k + 1 >= 1)
        deriv_zeros = find_roots(pair.eigenpoly.derivative(k - 1), policy).expanded();

    std::vector<Complex> lhs_pts = accessory_zeros;
    lhs_pts.insert(lhs_pts.end(), eigen_zeros.begin(), eigen_zeros.end());
    std::vector<double> lhs_wts(lhs_pts.size(), 1.0 / total);

    std::vector<Complex> rhs_pts = deriv_zeros;
    std::vector<double> rhs_wts(deriv_zeros.size(), (1.0 - 1.0 / alpha) / total);
    for (int l = 0; l < inst.num_poles(); ++l) {
        rhs_pts.push_back(inst.poles()[l]);
        rhs_wts.push_back((1.0 - inst.residues()[l] / alpha) / total);
    }

    RefinedInequalityReport rep;
    rep.base.lhs = WeightedPointConfig(std::move(lhs_pts), std::move(lhs_wts));
    rep.base.rhs = WeightedPointConfig(std::move(rhs_pts), std::move(rhs_wts));
    rep.base.certificate = check_majorization(rep.base.lhs, rep.base.rhs, policy);
    rep.base.min_hinge_slack = hinge_gap(rep.base.lhs, rep.base.rhs, policy);
    rep.base.barycenter_gap = std::abs(rep.base.lhs.barycenter() - rep.base.rhs.barycenter());
    rep.base.scale = config_scale(rep.base.lhs, rep.base.rhs);

    // Composing the refined inequality with the derivative chain
    //   n * sum f(S^(k-1) zeros) <= (n-k+1) * sum f(S zeros)
    // recovers the plain inequality; the difference of raw slacks equals the
    // chain term exactly, so the defect only measures roundoff.
    const double t_coeff = 1.0 - (1.0 - static_cast<double>(k - 1) / n) * (1.0 - 1.0 / alpha);
    double min_chain = std::numeric_limits<double>::infinity();
    double worst_defect = 0.0;
    for (int t = 0; t < policy.hinge_angles; ++t) {
        const double theta = 2.0 * kPi * t / policy.hinge_angles;
        const Complex dir = std::polar(1.0, -theta);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (Complex y : inst.poles()) {
            const double v = (dir * y).real();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const int count = hi > lo ? policy.hinge_offsets : 1;
        for (int s = 0; s < count; ++s) {
            const double c = count == 1 ? lo : lo + (hi - lo) * s / (count - 1);
            auto f = [&](Complex z) { return std::max(0.0, (dir * z).real() - c); };
            double sum_v = 0.0, sum_s = 0.0, sum_d = 0.0, sum_pole = 0.0;
            for (Complex z : accessory_zeros) sum_v += f(z);
            for (Complex z : eigen_zeros) sum_s += f(z);
            for (Complex z : deriv_zeros) sum_d += f(z);
            for (int l = 0; l < inst.num_poles(); ++l)
                sum_pole += (1.0 - inst.residues()[l] / alpha) * f(inst.poles()[l]);
            const double raw_plain = sum_pole - sum_v - t_coeff * sum_s;
            const double raw_refined = (1.0 - 1.0 / alpha) * sum_d + sum_pole - sum_v - sum_s;
            const double chain =
                (1.0 - 1.0 / alpha) *
                (static_cast<double>(n - k + 1) / n * sum_s - sum_d);
            min_chain = std::min(min_chain, chain);
            worst_defect = std::max(worst_defect, std::abs(raw_plain - raw_refined - chain));
        }
    }
    rep.min_chain_slack = min_chain;
    rep.composition_defect = worst_defect;
    return rep;
}

}  // namespace lame

#include "lame/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lame/parallel.hpp"

namespace lame {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kPi = 3.14159265358979323846;

ComplexPolynomial monomial(int j) {
    std::vector<Complex> c(j + 1, Complex(0.0, 0.0));
    c[j] = Complex(1.0, 0.0);
    return ComplexPolynomial(std::move(c));
}

// Poles and residues jointly sorted by the real part of the pole.
void sorted_pole_data(const LameInstance& inst, std::vector<double>& poles,
                      std::vector<double>& residues) {
    const int p = inst.num_poles();
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.poles()[a].real() < inst.poles()[b].real();
    });
    poles.resize(p);
    residues.resize(p);
    for (int i = 0; i < p; ++i) {
        poles[i] = inst.poles()[order[i]].real();
        residues[i] = inst.residues()[order[i]];
    }
}

}  // namespace

LameInstance::LameInstance(std::vector<Complex> poles, std::vector<double> residues, int order_k,
                           int degree_n)
    : poles_(std::move(poles)), residues_(std::move(residues)), k_(order_k), n_(degree_n) {
    const int p = static_cast<int>(poles_.size());
    if (p < 2) throw std::invalid_argument("at least two poles required");
    if (residues_.size() != poles_.size())
        throw std::invalid_argument("pole and residue counts differ");
    if (k_ < 2) throw std::invalid_argument("operator order must be at least 2");
    if (p < k_) throw std::invalid_argument("reduced degree p - k must be nonnegative");
    if (n_ < 1) throw std::invalid_argument("eigenpolynomial degree must be at least 1");
    for (double a : residues_)
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("residues must be positive and finite");
    for (Complex z : poles_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("poles must be finite");
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (poles_[i] == poles_[j]) throw std::invalid_argument("poles must be distinct");

    q2_ = ComplexPolynomial::from_roots(poles_);
    ComplexPolynomial q1;
    for (int l = 0; l < p; ++l) {
        std::vector<Complex> others;
        others.reserve(p - 1);
        for (int j = 0; j < p; ++j)
            if (j != l) others.push_back(poles_[j]);
        q1 = q1 + Complex(residues_[l], 0.0) * ComplexPolynomial::from_roots(others);
    }
    q1_ = q1;
}

double LameInstance::residue_sum() const {
    return std::accumulate(residues_.begin(), residues_.end(), 0.0);
}

bool LameInstance::is_stieltjes() const {
    if (k_ != 2) return false;
    for (Complex z : poles_)
        if (z.imag() != 0.0) return false;
    return true;
}

std::vector<double> LameInstance::sorted_real_poles() const {
    for (Complex z : poles_)
        if (z.imag() != 0.0) throw std::invalid_argument("poles are not real");
    std::vector<double> out(poles_.size());
    for (std::size_t i = 0; i < poles_.size(); ++i) out[i] = poles_[i].real();
    std::sort(out.begin(), out.end());
    return out;
}

double LameInstance::alpha() const { return n_ - k_ + 1 + residue_sum(); }

double LameInstance::accessory_leading() const {
    double falling = 1.0;
    for (int j = 0; j <= k_ - 2; ++j) falling *= static_cast<double>(n_ - j);
    return -falling * alpha();
}

ComplexPolynomial SpectralPair::monic_accessory() const {
    if (accessory.is_zero() || accessory.degree() == 0) return accessory;
    return (Complex(1.0, 0.0) / accessory.leading()) * accessory;
}

std::uint64_t sigma_count(int degree_n, int num_poles) {
    if (degree_n < 1 || num_poles < 2) throw std::invalid_argument("bad sigma arguments");
    const std::uint64_t top = static_cast<std::uint64_t>(degree_n) + num_poles - 2;
    const std::uint64_t m =
        std::min<std::uint64_t>(degree_n, static_cast<std::uint64_t>(num_poles) - 2);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= m; ++i) {
        acc = acc * (top - m + i) / i;
        if (acc > static_cast<unsigned __int128>(INT64_MAX))
            throw Overflow("eigenpair count exceeds the 63-bit range");
    }
    return static_cast<std::uint64_t>(acc);
}

double spectral_residual(const LameInstance& inst, const ComplexPolynomial& accessory,
                         const ComplexPolynomial& eigenpoly) {
    const ComplexPolynomial t2 = inst.leading_poly() * eigenpoly.derivative(inst.order());
    const ComplexPolynomial t1 = inst.subleading_poly() * eigenpoly.derivative(inst.order() - 1);
    const ComplexPolynomial t0 = accessory * eigenpoly;
    const ComplexPolynomial defect = t2 + t1 + t0;
    const double scale =
        t2.max_coeff_norm() + t1.max_coeff_norm() + t0.max_coeff_norm() + kTiny;
    return defect.max_coeff_norm() / scale;
}

SpectralPair recover_accessory(const LameInstance& inst, const ComplexPolynomial& eigenpoly) {
    if (eigenpoly.degree() != inst.degree())
        throw std::invalid_argument("eigenpolynomial degree does not match the instance");
    const ComplexPolynomial numerator =
        Complex(-1.0, 0.0) * (inst.leading_poly() * eigenpoly.derivative(inst.order()) +
                              inst.subleading_poly() * eigenpoly.derivative(inst.order() - 1));
    const DivisionResult dr = divide_with_remainder(numerator, eigenpoly);
    SpectralPair pair;
    pair.accessory = dr.quotient;
    pair.eigenpoly = eigenpoly;
    pair.residual = spectral_residual(inst, pair.accessory, eigenpoly);
    return pair;
}

std::vector<std::vector<int>> all_occupancies(int degree_n, int gaps) {
    if (gaps < 1) throw std::invalid_argument("need at least one gap");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(gaps, 0);
    // Lexicographically increasing emission order.
    auto rec = [&](auto&& self, int remaining, int idx) -> void {
        if (idx == gaps - 1) {
            cur[idx] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[idx] = v;
            self(self, remaining - v, idx + 1);
        }
    };
    rec(rec, degree_n, 0);
    return out;
}

std::vector<int> balanced_occupancy(int degree_n, int gaps) {
    if (gaps < 1) throw std::invalid_argument("need at least one gap");
    std::vector<int> occ(gaps, degree_n / gaps);
    for (int i = 0; i < degree_n % gaps; ++i) occ[i] += 1;
    return occ;
}

std::vector<double> bethe_initial(const LameInstance& inst, const std::vector<int>& occupancy) {
    if (!inst.is_stieltjes())
        throw std::invalid_argument("occupancy starts need order 2 and real poles");
    const int gaps = inst.num_poles() - 1;
    if (static_cast<int>(occupancy.size()) != gaps)
        throw BadOccupancy("occupancy must have one entry per pole gap");
    int total = 0;
    for (int v : occupancy) {
        if (v < 0) throw BadOccupancy("occupancy entries must be nonnegative");
        total += v;
    }
    if (total != inst.degree()) throw BadOccupancy("occupancy entries must sum to the degree");

    const std::vector<double> poles = inst.sorted_real_poles();
    std::vector<double> start;
    start.reserve(inst.degree());
    for (int g = 0; g < gaps; ++g) {
        const int count = occupancy[g];
        if (count == 0) continue;
        const double mid = 0.5 * (poles[g] + poles[g + 1]);
        const double half = 0.5 * (poles[g + 1] - poles[g]);
        for (int j = count; j >= 1; --j)
            start.push_back(mid + half * std::cos((2.0 * j - 1.0) * kPi / (2.0 * count)));
    }
    return start;
}

SpectralPair solve_bethe(const LameInstance& inst, const std::vector<int>& occupancy,
                         const NumericPolicy& policy) {
    std::vector<double> poles, residues;
    sorted_pole_data(inst, poles, residues);
    const int n = inst.degree();
    const int p = inst.num_poles();

    std::vector<double> s = bethe_initial(inst, occupancy);
    std::vector<double> lo(n), hi(n);
    {
        int idx = 0;
        for (int g = 0; g < p - 1; ++g)
            for (int j = 0; j < occupancy[g]; ++j, ++idx) {
                lo[idx] = poles[g];
                hi[idx] = poles[g + 1];
            }
    }

    auto in_gaps = [&](const std::vector<double>& x) {
        for (int i = 0; i < n; ++i)
            if (!(x[i] > lo[i] && x[i] < hi[i])) return false;
        return true;
    };
    auto fill_f = [&](const std::vector<double>& x, Eigen::VectorXd& f) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) acc += 2.0 / (x[i] - x[j]);
            for (int l = 0; l < p; ++l) acc += residues[l] / (x[i] - poles[l]);
            f(i) = acc;
        }
    };
    auto f_scale = [&](const std::vector<double>& x, int i) {
        double acc = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != i) acc += std::abs(2.0 / (x[i] - x[j]));
        for (int l = 0; l < p; ++l) acc += std::abs(residues[l] / (x[i] - poles[l]));
        return acc;
    };

    Eigen::VectorXd f(n), fc(n);
    Eigen::MatrixXd jac(n, n);
    const double ftol = policy.solver_tol * 1e-3;
    bool converged = false;
    for (int iter = 0; iter < policy.newton_max_iters; ++iter) {
        fill_f(s, f);
        bool small = true;
        for (int i = 0; i < n; ++i)
            if (std::abs(f(i)) > ftol * f_scale(s, i)) small = false;
        if (small) {
            converged = true;
            break;
        }

        for (int i = 0; i < n; ++i) {
            double diag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double inv2 = 2.0 / ((s[i] - s[j]) * (s[i] - s[j]));
                jac(i, j) = inv2;
                diag -= inv2;
            }
            for (int l = 0; l < p; ++l)
                diag -= residues[l] / ((s[i] - poles[l]) * (s[i] - poles[l]));
            jac(i, i) = diag;
        }
        const Eigen::VectorXd step = jac.partialPivLu().solve(-f);

        const double merit0 = f.squaredNorm();
        double lambda = 1.0;
        bool accepted = false;
        bool last_escape = false;
        std::vector<double> cand(n);
        while (lambda >= policy.newton_damping_floor) {
            for (int i = 0; i < n; ++i) cand[i] = s[i] + lambda * step(i);
            if (!in_gaps(cand)) {
                last_escape = true;
                lambda *= 0.5;
                continue;
            }
            last_escape = false;
            fill_f(cand, fc);
            if (fc.squaredNorm() < merit0) {
                s = cand;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            if (last_escape) throw IntervalEscape("zero left its assigned pole gap");
            double smax = 0.0, dmax = 0.0;
            for (int i = 0; i < n; ++i) {
                smax = std::max(smax, std::abs(s[i]));
                dmax = std::max(dmax, std::abs(step(i)));
            }
            // Stagnation at machine precision: fall through to the gate.
            if (dmax <= 1e-13 * (1.0 + smax)) {
                converged = true;
                break;
            }
            throw NoConvergence("zero-location iteration stalled");
        }
    }
    if (!converged) {
        fill_f(s, f);
        for (int i = 0; i < n; ++i)
            if (std::abs(f(i)) > ftol * f_scale(s, i))
                throw NoConvergence("zero-location iteration exhausted its budget");
    }

    // Extended-precision polish. Gap-crowded configurations push the Jacobian
    // condition number toward 1e8, which leaves ~1e-8 forward error in zeros
    // whose residual has already stagnated at double precision. Two plain
    // Newton passes in long double bring the zeros to the wider-format floor.
    {
        using LVec = Eigen::Vector<long double, Eigen::Dynamic>;
        using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        std::vector<long double> sl(s.begin(), s.end());
        LVec fl(n);
        LMat jl(n, n);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < n; ++i) {
                long double acc = 0.0L;
                for (int j = 0; j < n; ++j)
                    if (j != i) acc += 2.0L / (sl[i] - sl[j]);
                for (int l = 0; l < p; ++l)
                    acc += static_cast<long double>(residues[l]) /
                           (sl[i] - static_cast<long double>(poles[l]));
                fl(i) = acc;
            }
            for (int i = 0; i < n; ++i) {
                long double diag = 0.0L;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const long double d = sl[i] - sl[j];
                    const long double inv2 = 2.0L / (d * d);
                    jl(i, j) = inv2;
                    diag -= inv2;
                }
                for (int l = 0; l < p; ++l) {
                    const long double d = sl[i] - static_cast<long double>(poles[l]);
                    diag -= static_cast<long double>(residues[l]) / (d * d);
                }
                jl(i, i) = diag;
            }
            const LVec step = jl.partialPivLu().solve(-fl);
            bool inside = true;
            for (int i = 0; i < n; ++i) {
                const long double cand = sl[i] + step(i);
                if (!(cand > static_cast<long double>(lo[i]) &&
                      cand < static_cast<long double>(hi[i]))) {
                    inside = false;
                    break;
                }
            }
            if (!inside) break;
            for (int i = 0; i < n; ++i) sl[i] += step(i);
        }
        for (int i = 0; i < n; ++i) s[i] = static_cast<double>(sl[i]);
        std::sort(s.begin(), s.end());
    }

    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = Complex(s[i], 0.0);
    SpectralPair pair = recover_accessory(inst, ComplexPolynomial::from_roots(roots));
    if (pair.residual > policy.solver_tol)
        throw NoConvergence("converged zeros fail the residual gate");
    pair.occupancy = occupancy;
    pair.eigen_zeros = roots;
    return pair;
}

SpectralPair solve_newton_coeffs(const LameInstance& inst, std::vector<Complex> start,
                                 const NumericPolicy& policy) {
    const int n = inst.degree();
    const int r = inst.reduced_degree();
    const int k = inst.order();
    const int m = n + r;
    if (static_cast<int>(start.size()) != m)
        throw std::invalid_argument("start must hold n + r coefficients");

    const ComplexPolynomial& q2 = inst.leading_poly();
    const ComplexPolynomial& q1 = inst.subleading_poly();
    const Complex pinned(inst.accessory_leading(), 0.0);

    // Linear part of the defect in the S coefficients.
    std::vector<ComplexPolynomial> basis(n + 1);
    for (int j = 0; j <= n; ++j)
        basis[j] = q2 * monomial(j).derivative(k) + q1 * monomial(j).derivative(k - 1);

    auto build = [&](const std::vector<Complex>& x, ComplexPolynomial& S, ComplexPolynomial& V) {
        std::vector<Complex> sc(n + 1);
        for (int j = 0; j < n; ++j) sc[j] = x[j];
        sc[n] = Complex(1.0, 0.0);
        S = ComplexPolynomial(std::move(sc));
        std::vector<Complex> vc(r + 1);
        for (int i = 0; i < r; ++i) vc[i] = x[n + i];
        vc[r] = pinned;
        V = ComplexPolynomial(std::move(vc));
    };
    auto defect_vec = [&](const ComplexPolynomial& S, const ComplexPolynomial& V,
                          Eigen::VectorXcd& f, double& scale) {
        const ComplexPolynomial t2 = q2 * S.derivative(k);
        const ComplexPolynomial t1 = q1 * S.derivative(k - 1);
        const ComplexPolynomial t0 = V * S;
        const ComplexPolynomial L = t2 + t1 + t0;
        for (int i = 0; i < m; ++i) f(i) = L.coeff(i);
        scale = t2.max_coeff_norm() + t1.max_coeff_norm() + t0.max_coeff_norm() + 1.0;
    };

    std::vector<Complex> x = std::move(start);
    ComplexPolynomial S, V;
    Eigen::VectorXcd f(m), fc(m);
    Eigen::MatrixXcd jac(m, m);
    const double ftol = policy.solver_tol * 1e-3;
    bool converged = false;

    for (int iter = 0; iter < policy.newton_max_iters; ++iter) {
        build(x, S, V);
        double scale = 0.0;
        defect_vec(S, V, f, scale);
        if (f.lpNorm<Eigen::Infinity>() <= ftol * scale) {
            converged = true;
            break;
        }

        for (int j = 0; j < n; ++j) {
            const ComplexPolynomial col = basis[j] + V * monomial(j);
            for (int i = 0; i < m; ++i) jac(i, j) = col.coeff(i);
        }
        for (int i2 = 0; i2 < r; ++i2) {
            const ComplexPolynomial col = monomial(i2) * S;
            for (int i = 0; i < m; ++i) jac(i, n + i2) = col.coeff(i);
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
        const auto& sv = svd.singularValues();
        if (sv(m - 1) <= 0.0 || sv(0) / sv(m - 1) > policy.jacobian_condition_max)
            throw SingularJacobian("coefficient Jacobian is numerically singular");

        const Eigen::VectorXcd step = jac.partialPivLu().solve(-f);
        const double merit0 = f.squaredNorm();
        double lambda = 1.0;
        bool accepted = false;
        std::vector<Complex> cand(m);
        while (lambda >= policy.newton_damping_floor) {
            for (int i = 0; i < m; ++i) cand[i] = x[i] + lambda * step(i);
            ComplexPolynomial Sc, Vc;
            build(cand, Sc, Vc);
            double cscale = 0.0;
            defect_vec(Sc, Vc, fc, cscale);
            if (fc.squaredNorm() < merit0) {
                x = cand;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            double xmax = 0.0;
            for (int i = 0; i < m; ++i) xmax = std::max(xmax, std::abs(x[i]));
            if (step.lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + xmax)) {
                converged = true;
                break;
            }
            throw NoConvergence("coefficient iteration stalled");
        }
    }

    build(x, S, V);
    (void)converged;
    SpectralPair pair;
    pair.accessory = V;
    pair.eigenpoly = S;
    pair.residual = spectral_residual(inst, V, S);
    if (pair.residual > policy.solver_tol)
        throw NoConvergence("coefficient iteration fails the residual gate");
    return pair;
}

namespace {

// Chebyshev-placed zeros over the real span of the poles; attempt 0 is the
// plain template, later attempts add seeded jitter.
std::vector<Complex> multistart_start(const LameInstance& inst, std::uint64_t seed, int attempt) {
    const int n = inst.degree();
    const int r = inst.reduced_degree();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Complex z : inst.poles()) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
    }
    const double mid = 0.5 * (lo + hi);
    const double half = std::max(0.5 * (hi - lo), 0.5);
    const double vscale = std::abs(inst.accessory_leading());

    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (attempt + 1)));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) {
        const double cheb = std::cos((2.0 * i + 1.0) * kPi / (2.0 * n));
        const double jitter = (attempt == 0) ? 0.0 : 0.35 * u(rng);
        const double imag = (attempt == 0) ? 0.0 : 0.15 * u(rng);
        roots[i] = Complex(mid + half * (cheb + jitter), half * imag);
    }
    const ComplexPolynomial s0 = ComplexPolynomial::from_roots(roots);
    std::vector<Complex> start(n + r);
    for (int j = 0; j < n; ++j) start[j] = s0.coeff(j);
    for (int i = 0; i < r; ++i) {
        const double re = (attempt == 0) ? 0.0 : 0.1 * vscale * u(rng);
        const double im = (attempt == 0) ? 0.0 : 0.1 * vscale * u(rng);
        start[n + i] = Complex(re, im);
    }
    return start;
}

}  // namespace

SpectralPair solve_multistart(const LameInstance& inst, std::uint64_t seed,
                              const NumericPolicy& policy) {
    for (int attempt = 0; attempt < policy.multistart_tries; ++attempt) {
        try {
            return solve_newton_coeffs(inst, multistart_start(inst, seed, attempt), policy);
        } catch (const NoConvergence&) {
        } catch (const SingularJacobian&) {
        }
    }
    throw NoConvergence("multistart budget exhausted without an eigenpair");
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const std::vector<Complex>& from = pass == 0 ? a : b;
        const std::vector<Complex>& to = pass == 0 ? b : a;
        for (Complex x : from) {
            double best = std::numeric_limits<double>::infinity();
            for (Complex y : to) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

std::vector<SpectralPair> enumerate_solutions(const LameInstance& inst,
                                              const NumericPolicy& policy, std::uint64_t seed) {
    const std::uint64_t expected = sigma_count(inst.degree(), inst.num_poles());
    if (expected > static_cast<std::uint64_t>(policy.enumeration_cap))
        throw Overflow("eigenpair count exceeds the enumeration cap");

    if (inst.is_stieltjes()) {
        const auto occupancies = all_occupancies(inst.degree(), inst.num_poles() - 1);
        auto pairs = indexed_map<SpectralPair>(
            static_cast<int>(occupancies.size()), policy.jobs,
            [&](int i) { return solve_bethe(inst, occupancies[i], policy); });
        std::vector<std::vector<Complex>> zero_sets(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) zero_sets[i] = *pairs[i].eigen_zeros;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j)
                if (hausdorff_distance(zero_sets[i], zero_sets[j]) <= policy.distinct_separation)
                    throw NoConvergence("two occupancy branches collapsed onto one pair");
        return pairs;
    }

    // Best-effort multistart collection outside the interval regime.
    std::vector<SpectralPair> found;
    std::vector<std::vector<Complex>> zero_sets;
    const std::uint64_t budget = expected * static_cast<std::uint64_t>(policy.multistart_tries);
    for (std::uint64_t t = 0; t < budget && found.size() < expected; ++t) {
        SpectralPair pair;
        try {
            pair = solve_newton_coeffs(inst, multistart_start(inst, seed, static_cast<int>(t)),
                                       policy);
        } catch (const NoConvergence&) {
            continue;
        } catch (const SingularJacobian&) {
            continue;
        }
        std::vector<Complex> zeros;
        try {
            zeros = find_roots(pair.eigenpoly, policy).expanded();
        } catch (const NoConvergence&) {
            continue;  // candidate defeats root post-processing, skip it
        }
        bool fresh = true;
        for (const auto& zs : zero_sets)
            if (hausdorff_distance(zeros, zs) <= policy.distinct_separation) fresh = false;
        if (!fresh) continue;
        pair.eigen_zeros = zeros;
        zero_sets.push_back(std::move(zeros));
        found.push_back(std::move(pair));
    }
    std::sort(found.begin(), found.end(), [](const SpectralPair& a, const SpectralPair& b) {
        const auto& ca = a.eigenpoly.coeffs();
        const auto& cb = b.eigenpoly.coeffs();
        for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i) {
            if (ca[i].real() != cb[i].real()) return ca[i].real() < cb[i].real();
            if (ca[i].imag() != cb[i].imag()) return ca[i].imag() < cb[i].imag();
        }
        return ca.size() < cb.size();
    });
    return found;
}

}  // namespace lame

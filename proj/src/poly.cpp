#include "lame/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lame {

namespace {

constexpr double kTiny = 1e-300;

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

void ComplexPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

ComplexPolynomial ComplexPolynomial::from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1.0, 0.0)};
    for (Complex r : roots) {
        c.push_back(Complex(0.0, 0.0));
        for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::constant(Complex value) {
    return ComplexPolynomial(std::vector<Complex>{value});
}

Complex ComplexPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0, 0.0);
    return coeffs_[k];
}

Complex ComplexPolynomial::leading() const {
    if (coeffs_.empty()) return Complex(0.0, 0.0);
    return coeffs_.back();
}

Complex ComplexPolynomial::operator()(Complex z) const {
    Complex acc(0.0, 0.0);
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
}

ComplexPolynomial ComplexPolynomial::derivative(int order) const {
    if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
    if (order == 0) return *this;
    if (degree() < order) return ComplexPolynomial();
    std::vector<Complex> out(coeffs_.size() - order);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double factor = 1.0;
        for (int j = 0; j < order; ++j) factor *= static_cast<double>(k + order - j);
        out[k] = coeffs_[k + order] * factor;
    }
    return ComplexPolynomial(std::move(out));
}

double ComplexPolynomial::max_coeff_norm() const {
    double m = 0.0;
    for (Complex c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<Complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
    return ComplexPolynomial(std::move(out));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<Complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] -= b.coeffs_[k];
    return ComplexPolynomial(std::move(out));
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return ComplexPolynomial();
    std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPolynomial(std::move(out));
}

ComplexPolynomial operator*(Complex s, const ComplexPolynomial& a) {
    std::vector<Complex> out = a.coeffs_;
    for (Complex& c : out) c *= s;
    return ComplexPolynomial(std::move(out));
}

DivisionResult divide_with_remainder(const ComplexPolynomial& numerator,
                                     const ComplexPolynomial& divisor) {
    if (divisor.is_zero()) throw ZeroDivisor();
    DivisionResult result;
    if (numerator.degree() < divisor.degree()) {
        result.remainder = numerator;
    } else {
        std::vector<Complex> rem = numerator.coeffs();
        const int dn = numerator.degree();
        const int dd = divisor.degree();
        const Complex lead = divisor.leading();
        std::vector<Complex> quot(dn - dd + 1, Complex(0.0, 0.0));
        for (int k = dn - dd; k >= 0; --k) {
            Complex q = rem[k + dd] / lead;
            quot[k] = q;
            for (int j = 0; j <= dd; ++j) rem[k + j] -= q * divisor.coeff(j);
        }
        rem.resize(dd);
        result.quotient = ComplexPolynomial(std::move(quot));
        result.remainder = ComplexPolynomial(std::move(rem));
    }
    result.relative_remainder =
        result.remainder.max_coeff_norm() / (numerator.max_coeff_norm() + 1.0);
    return result;
}

std::vector<Complex> RootSet::expanded() const {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < roots.size(); ++i)
        out.insert(out.end(), multiplicities[i], roots[i]);
    return out;
}

namespace {

// p(z), p'(z) and scale(z) = sum_k |c_k| |z|^k in one pass.
struct EvalResult {
    Complex value;
    Complex deriv;
    double scale;
};

EvalResult eval_with_scale(const std::vector<Complex>& c, Complex z) {
    Complex p(0.0, 0.0), dp(0.0, 0.0);
    double s = 0.0;
    const double az = std::abs(z);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + c[k];
        s = s * az + std::abs(c[k]);
    }
    return {p, dp, s};
}

}  // namespace

RootSet find_roots(const ComplexPolynomial& p, const NumericPolicy& policy) {
    const int full_degree = p.degree();
    if (full_degree < 1) throw std::invalid_argument("find_roots requires degree >= 1");

    // Exact zero roots deflate before iterating: near the origin the
    // componentwise backward error |p(z)| / sum |c_k||z|^k tends to 1 when
    // the constant term vanishes, so approximants of the root 0 would never
    // pass the acceptance gate.
    int origin_mult = 0;
    while (origin_mult < full_degree && p.coeff(origin_mult) == Complex(0.0, 0.0)) ++origin_mult;
    const std::vector<Complex> c(p.coeffs().begin() + origin_mult, p.coeffs().end());
    const int d = full_degree - origin_mult;

    std::vector<Complex> z(d);
    std::vector<double> berr(d, std::numeric_limits<double>::infinity());
    if (d == 0) {
    } else if (d == 1) {
        z[0] = -c[0] / c[1];
        const EvalResult e = eval_with_scale(c, z[0]);
        berr[0] = std::abs(e.value) / std::max(e.scale, kTiny);
    } else {
        double amax = 0.0;
        for (int i = 0; i < d; ++i) amax = std::max(amax, std::abs(c[i]));
        const double radius = 1.0 + amax / std::abs(c[d]);
        const double tau = 6.283185307179586476925287 / d;
        for (int i = 0; i < d; ++i) z[i] = std::polar(radius, tau * i + 0.4);

        // Iterate to step stagnation rather than the backward-error gate:
        // approximants of a multiple root must tighten well inside the
        // cluster radius before multiplicities can be recovered.
        for (int sweep = 0; sweep < policy.root_max_sweeps; ++sweep) {
            double max_rel_step = 0.0;
            for (int i = 0; i < d; ++i) {
                EvalResult e = eval_with_scale(c, z[i]);
                berr[i] = std::abs(e.value) / std::max(e.scale, kTiny);
                if (std::abs(e.deriv) < kTiny) {
                    // Landed on a critical point; nudge off it.
                    z[i] += Complex(1e-3, 7e-4) * (1.0 + std::abs(z[i]));
                    max_rel_step = 1.0;
                    continue;
                }
                const Complex w = e.value / e.deriv;
                Complex repulsion(0.0, 0.0);
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    Complex gap = z[i] - z[j];
                    if (std::abs(gap) < kTiny) gap = Complex(1e-12, 1e-12);
                    repulsion += 1.0 / gap;
                }
                const Complex denom = 1.0 - w * repulsion;
                const Complex step = (std::abs(denom) < kTiny) ? w : w / denom;
                z[i] -= step;
                max_rel_step = std::max(max_rel_step, std::abs(step) / (1.0 + std::abs(z[i])));
            }
            if (max_rel_step <= 1e-12) break;
        }
        for (int i = 0; i < d; ++i) {
            EvalResult e = eval_with_scale(c, z[i]);
            berr[i] = std::abs(e.value) / std::max(e.scale, kTiny);
            if (berr[i] > policy.root_tol)
                throw NoConvergence("root iteration exhausted its sweep budget");
        }
    }

    for (int i = 0; i < origin_mult; ++i) {
        z.push_back(Complex(0.0, 0.0));
        berr.push_back(0.0);
    }

    // Cluster nearby approximations into multiple roots.
    std::vector<int> order(full_degree);
    for (int i = 0; i < full_degree; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(z[a], z[b]); });

    struct Cluster {
        Complex sum{0.0, 0.0};
        int count = 0;
        double err = 0.0;
    };
    std::vector<Cluster> clusters;
    for (int idx : order) {
        const Complex zi = z[idx];
        bool placed = false;
        for (Cluster& cl : clusters) {
            const Complex centroid = cl.sum / static_cast<double>(cl.count);
            if (std::abs(zi - centroid) <= policy.root_cluster_radius * (1.0 + std::abs(zi))) {
                cl.sum += zi;
                cl.count += 1;
                cl.err = std::max(cl.err, berr[idx]);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({zi, 1, berr[idx]});
    }

    RootSet out;
    for (const Cluster& cl : clusters) {
        out.roots.push_back(cl.sum / static_cast<double>(cl.count));
        out.multiplicities.push_back(cl.count);
        out.backward_errors.push_back(cl.err);
    }
    std::vector<int> perm(out.roots.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return lex_less(out.roots[a], out.roots[b]); });
    RootSet sorted;
    for (int i : perm) {
        sorted.roots.push_back(out.roots[i]);
        sorted.multiplicities.push_back(out.multiplicities[i]);
        sorted.backward_errors.push_back(out.backward_errors[i]);
    }
    return sorted;
}

}  // namespace lame

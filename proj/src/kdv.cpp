#include "coflat/kdv.hpp"

#include "coflat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coflat::kdv {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Exact Gram-Schmidt; input vectors are assumed independent.
std::vector<QVector> orthogonalize(std::vector<QVector> vs) {
    std::vector<QVector> out;
    for (QVector v : vs) {
        for (const QVector& w : out) {
            Rational num(0), den(0);
            for (std::size_t i = 0; i < v.size(); ++i) {
                num += v[i] * w[i];
                den += w[i] * w[i];
            }
            Rational c = num / den;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * w[i];
        }
        bool zero = true;
        for (const auto& e : v)
            if (!e.is_zero()) zero = false;
        if (!zero) out.push_back(std::move(v));
    }
    return out;
}

// Dense double solve with partial pivoting; the systems here are the
// kernel-augmented normal equations, symmetric positive definite.
std::vector<double> d_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            if (f == 0) continue;
            for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < n; ++j) s -= a[r][j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(r)] = s / a[r][r];
    }
    return x;
}

std::vector<double> sample_profile(int n, double length, double freq, bool use_sin) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = length * i / n;
        v[static_cast<std::size_t>(i)] = use_sin ? std::sin(freq * x) : std::cos(freq * x);
    }
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

ExactSystem build_exact(int n, const Rational& h) {
    if (n < 5) throw StructureError("grid too small for the five-point stencils");
    if (h <= Rational(0)) throw StructureError("grid spacing must be positive");
    ExactSystem sys;
    sys.n = n;
    sys.h = h;
    sys.uspace = VarSpace::numbered("u", n);
    Rational inv2h = Rational(1) / (Rational(2) * h);
    Rational inv2h3 = Rational(1) / (Rational(2) * h.pow(3));
    sys.d1 = q_zero(n, n);
    sys.d3 = q_zero(n, n);
    for (int i = 0; i < n; ++i) {
        sys.d1[i][static_cast<std::size_t>(wrap(i + 1, n))] += inv2h;
        sys.d1[i][static_cast<std::size_t>(wrap(i - 1, n))] -= inv2h;
        sys.d3[i][static_cast<std::size_t>(wrap(i + 2, n))] += inv2h3;
        sys.d3[i][static_cast<std::size_t>(wrap(i + 1, n))] -= Rational(2) * inv2h3;
        sys.d3[i][static_cast<std::size_t>(wrap(i - 1, n))] += Rational(2) * inv2h3;
        sys.d3[i][static_cast<std::size_t>(wrap(i - 2, n))] -= inv2h3;
    }
    return sys;
}

PartialAnchor first_anchor(const ExactSystem& sys) {
    std::vector<std::vector<Polynomial>> m(
        static_cast<std::size_t>(sys.n),
        std::vector<Polynomial>(static_cast<std::size_t>(sys.n), Polynomial::zero(sys.uspace)));
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j)
            if (!sys.d1[i][static_cast<std::size_t>(j)].is_zero())
                m[i][static_cast<std::size_t>(j)] =
                    Polynomial::constant(sys.uspace, sys.d1[i][static_cast<std::size_t>(j)]);
    return PartialAnchor::from_bivector(Bivector(sys.uspace, m));
}

PartialAnchor second_anchor(const ExactSystem& sys) {
    std::vector<std::vector<Polynomial>> m(
        static_cast<std::size_t>(sys.n),
        std::vector<Polynomial>(static_cast<std::size_t>(sys.n), Polynomial::zero(sys.uspace)));
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j) {
            Polynomial e = Polynomial::constant(sys.uspace, sys.d3[i][static_cast<std::size_t>(j)]);
            const Rational& d = sys.d1[i][static_cast<std::size_t>(j)];
            if (!d.is_zero()) {
                e += Polynomial::variable(sys.uspace, i).scaled(Rational(2) * d);
                e += Polynomial::variable(sys.uspace, j).scaled(Rational(2) * d);
            }
            m[i][static_cast<std::size_t>(j)] = e;
        }
    return PartialAnchor::from_bivector(Bivector(sys.uspace, m));
}

std::vector<QVector> d1_kernel(const ExactSystem& sys) { return q_kernel(sys.d1); }

Polynomial mass_casimir(const ExactSystem& sys) {
    Polynomial c = Polynomial::zero(sys.uspace);
    for (int i = 0; i < sys.n; ++i) c += Polynomial::variable(sys.uspace, i).scaled(sys.h);
    return c;
}

QVector apply_second_at(const ExactSystem& sys, const QVector& u, const QVector& g) {
    const int n = sys.n;
    QVector d1g = q_mul_vec(sys.d1, g);
    QVector ug(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ug[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
    QVector d1ug = q_mul_vec(sys.d1, ug);
    QVector out = q_mul_vec(sys.d3, g);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] +=
            Rational(2) * (u[static_cast<std::size_t>(i)] * d1g[static_cast<std::size_t>(i)] +
                           d1ug[static_cast<std::size_t>(i)]);
    return out;
}

LenardResult lenard_step(const ExactSystem& sys, const QVector& u, const QVector& g) {
    const int n = sys.n;
    LenardResult out;
    QVector rhs = apply_second_at(sys, u, g);
    Rational total(0);
    for (const auto& e : rhs) total += e;
    out.mean = total / Rational(n);

    // Kernel-augmented normal equations; the kernel is computed exactly and
    // never assumed one-dimensional (even grids carry the checkerboard mode).
    std::vector<QVector> ker = orthogonalize(q_kernel(sys.d1));
    QMatrix m = q_mul(q_transpose(sys.d1), sys.d1);
    for (const QVector& k : ker) {
        Rational norm2(0);
        for (const auto& e : k) norm2 += e * e;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[i][static_cast<std::size_t>(j)] +=
                    k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(j)] / norm2;
    }
    QVector b = q_mul_vec(q_transpose(sys.d1), rhs);
    out.g = *q_solve(m, b);
    QVector d1g = q_mul_vec(sys.d1, out.g);
    out.residual.resize(static_cast<std::size_t>(n));
    bool consistent = true;
    for (int i = 0; i < n; ++i) {
        out.residual[static_cast<std::size_t>(i)] =
            d1g[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)];
        if (!out.residual[static_cast<std::size_t>(i)].is_zero()) consistent = false;
    }
    out.ok = consistent;
    return out;
}

FloatSystem build_float(int n, double length) {
    if (n < 5) throw StructureError("grid too small for the five-point stencils");
    if (!(length > 0)) throw StructureError("grid length must be positive");
    return FloatSystem{n, length, length / n};
}

std::vector<double> apply_d1(const FloatSystem& sys, const std::vector<double>& v) {
    const int n = sys.n;
    std::vector<double> out(static_cast<std::size_t>(n));
    const double f = 1.0 / (2.0 * sys.h);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            f * (v[static_cast<std::size_t>(wrap(i + 1, n))] - v[static_cast<std::size_t>(wrap(i - 1, n))]);
    return out;
}

std::vector<double> apply_d3(const FloatSystem& sys, const std::vector<double>& v) {
    const int n = sys.n;
    std::vector<double> out(static_cast<std::size_t>(n));
    const double f = 1.0 / (2.0 * sys.h * sys.h * sys.h);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            f * (v[static_cast<std::size_t>(wrap(i + 2, n))] - 2 * v[static_cast<std::size_t>(wrap(i + 1, n))] +
                 2 * v[static_cast<std::size_t>(wrap(i - 1, n))] - v[static_cast<std::size_t>(wrap(i - 2, n))]);
    return out;
}

std::vector<double> apply_second_at(const FloatSystem& sys, const std::vector<double>& u,
                                    const std::vector<double>& g) {
    std::vector<double> d1g = apply_d1(sys, g);
    std::vector<double> ug(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) ug[i] = u[i] * g[i];
    std::vector<double> d1ug = apply_d1(sys, ug);
    std::vector<double> out = apply_d3(sys, g);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += 2 * (u[i] * d1g[i] + d1ug[i]);
    return out;
}

LenardResultF lenard_step(const FloatSystem& sys, const std::vector<double>& u,
                          const std::vector<double>& g) {
    const int n = sys.n;
    LenardResultF out;
    std::vector<double> rhs = apply_second_at(sys, u, g);
    double total = 0;
    for (double e : rhs) total += e;
    out.mean = total / n;

    // Same kernel-augmented normal equations as the exact path; the kernel
    // of the central stencil is the constant vector plus, on even grids, the
    // checkerboard vector.
    std::vector<std::vector<double>> kernel;
    kernel.emplace_back(static_cast<std::size_t>(n), 1.0);
    if (n % 2 == 0) {
        std::vector<double> cb(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cb[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
        kernel.push_back(std::move(cb));
    }
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    // D1^T D1 assembled through the stencil: column j of D1 has +-1/(2h).
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        std::vector<double> d1e = apply_d1(sys, e);
        for (int j = 0; j <= i; ++j) {
            std::vector<double> ej(static_cast<std::size_t>(n), 0.0);
            ej[static_cast<std::size_t>(j)] = 1.0;
            std::vector<double> d1ej = apply_d1(sys, ej);
            double v = dot(d1e, d1ej);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    }
    for (const auto& k : kernel) {
        double norm2 = dot(k, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(j)] / norm2;
    }
    // b = D1^T rhs = -D1 rhs.
    std::vector<double> b = apply_d1(sys, rhs);
    for (double& e : b) e = -e;
    out.g = d_solve(std::move(m), std::move(b));
    std::vector<double> resid = apply_d1(sys, out.g);
    double rn = 0;
    for (std::size_t i = 0; i < resid.size(); ++i) rn = std::max(rn, std::fabs(resid[i] - rhs[i]));
    out.residual_norm = rn;
    out.ok = true;
    return out;
}

double functional_value(const FloatSystem& sys, Functional f, const std::vector<double>& u) {
    double s = 0;
    switch (f) {
    case Functional::mass:
        for (double e : u) s += e;
        return sys.h * s;
    case Functional::momentum:
        for (double e : u) s += e * e / 2;
        return sys.h * s;
    case Functional::energy: {
        std::vector<double> du = apply_d1(sys, u);
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * u[i] * u[i] - du[i] * du[i] / 2;
        return sys.h * s;
    }
    case Functional::airy: {
        std::vector<double> du = apply_d1(sys, u);
        for (double e : du) s += -e * e / 2;
        return sys.h * s;
    }
    }
    return 0;
}

std::vector<double> variational_gradient(const FloatSystem& sys, Functional f,
                                         const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<double> g(n, 0.0);
    switch (f) {
    case Functional::mass:
        std::fill(g.begin(), g.end(), 1.0);
        return g;
    case Functional::momentum:
        return u;
    case Functional::energy: {
        std::vector<double> d2 = apply_d1(sys, apply_d1(sys, u));
        for (std::size_t i = 0; i < n; ++i) g[i] = 3 * u[i] * u[i] + d2[i];
        return g;
    }
    case Functional::airy:
        return apply_d1(sys, apply_d1(sys, u));
    }
    return g;
}

double max_stable_dt(const FloatSystem& sys, double umax) {
    const double h = sys.h;
    return 2.8 / (2.6 / (h * h * h) + 6.0 * umax / h);
}

IntegrateResult integrate(const FloatSystem& sys, Functional f, double dt, int steps,
                          std::vector<double> u0) {
    if (!(dt > 0)) throw StructureError("time step must be positive");
    if (steps < 0) throw StructureError("step count must be nonnegative");
    double umax = 0;
    for (double e : u0) umax = std::max(umax, std::fabs(e));
    double guard = max_stable_dt(sys, umax);
    if (dt > guard)
        throw StructureError("time step " + std::to_string(dt) +
                             " violates the stability guard dt <= " + std::to_string(guard));

    IntegrateResult out;
    out.mass.initial = functional_value(sys, Functional::mass, u0);
    out.momentum.initial = functional_value(sys, Functional::momentum, u0);
    out.energy.initial = functional_value(sys, Functional::energy, u0);

    const double blowup = 1e6 * (1.0 + umax);
    auto rhs = [&](const std::vector<double>& u) {
        return apply_d1(sys, variational_gradient(sys, f, u));
    };
    std::vector<double> u = std::move(u0);
    for (int s = 0; s < steps; ++s) {
        std::vector<double> k1 = rhs(u);
        std::vector<double> tmp(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + dt / 2 * k1[i];
        std::vector<double> k2 = rhs(tmp);
        for (std::size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + dt / 2 * k2[i];
        std::vector<double> k3 = rhs(tmp);
        for (std::size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + dt * k3[i];
        std::vector<double> k4 = rhs(tmp);
        bool bad = false;
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (!std::isfinite(u[i]) || std::fabs(u[i]) > blowup) bad = true;
        }
        if (bad) {
            out.aborted = true;
            out.abort_step = s;
            break;
        }
    }
    out.u = std::move(u);
    out.mass.final_value = functional_value(sys, Functional::mass, out.u);
    out.momentum.final_value = functional_value(sys, Functional::momentum, out.u);
    out.energy.final_value = functional_value(sys, Functional::energy, out.u);
    out.mass.drift = std::fabs(out.mass.final_value - out.mass.initial);
    out.momentum.drift = std::fabs(out.momentum.final_value - out.momentum.initial);
    out.energy.drift = std::fabs(out.energy.final_value - out.energy.initial);
    return out;
}

std::vector<RefinementRow> jacobiator_refinement(const std::vector<int>& ns, ExecMode mode) {
    std::vector<RefinementRow> rows(ns.size());
    for_each_index(ns.size(), mode, [&](std::size_t t) {
        const int n = ns[t];
        FloatSystem sys = build_float(n, 2 * std::numbers::pi);
        std::vector<double> u = sample_profile(n, sys.length, 1, false);     // cos x
        std::vector<double> alpha = sample_profile(n, sys.length, 1, true);  // sin x
        std::vector<double> beta = sample_profile(n, sys.length, 2, false);  // cos 2x
        std::vector<double> gamma = sample_profile(n, sys.length, 3, true);  // sin 3x

        // J(alpha,beta,gamma) = sum_cyc 2 [<beta .* A, D1 gamma> - <gamma .* A, D1 beta>]
        // with A_j = sum_i alpha_i P2(u)^{ij} = -(P2(u) alpha)_j; the closed
        // form comes from d_l P2^{jk} = 2 (delta_{jl} + delta_{kl}) D1_{jk}.
        auto a_of = [&](const std::vector<double>& cov) {
            std::vector<double> pa = apply_second_at(sys, u, cov);
            for (double& e : pa) e = -e;
            return pa;
        };
        auto term = [&](const std::vector<double>& a, const std::vector<double>& x,
                        const std::vector<double>& y) {
            std::vector<double> aa = a_of(a);
            std::vector<double> xa(aa.size()), ya(aa.size());
            for (std::size_t i = 0; i < aa.size(); ++i) {
                xa[i] = x[i] * aa[i];
                ya[i] = y[i] * aa[i];
            }
            return 2 * (dot(xa, apply_d1(sys, y)) - dot(ya, apply_d1(sys, x)));
        };
        double j = term(alpha, beta, gamma) + term(beta, gamma, alpha) + term(gamma, alpha, beta);
        // The first structure is constant, so every derivative term in its
        // Jacobiator vanishes identically; no arithmetic is needed.
        rows[t] = RefinementRow{n, 0.0, std::fabs(j)};
    });
    return rows;
}

std::vector<double> refinement_orders(const std::vector<RefinementRow>& rows) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        out.push_back(std::log2(rows[i].second_magnitude / rows[i + 1].second_magnitude));
    return out;
}

} // namespace coflat::kdv

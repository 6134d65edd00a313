#include "coflat/liepoisson.hpp"

#include "coflat/errors.hpp"

#include <algorithm>
#include <sstream>

namespace coflat {

namespace {

std::string triple_str(int i, int j, int k) {
    std::ostringstream os;
    os << "(" << i + 1 << ", " << j + 1 << ", " << k + 1 << ")";
    return os.str();
}

} // namespace

LieAlgebraSpec::LieAlgebraSpec(int dim,
                               const std::vector<std::tuple<int, int, int, Rational>>& entries)
    : n_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, Rational(0)) {
    if (dim <= 0) throw StructureError("Lie algebra dimension must be positive");
    std::vector<bool> seen(c_.size(), false);
    auto slot = [&](int i, int j, int k) -> std::size_t {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    };
    for (const auto& [i, j, k, v] : entries) {
        if (i < 0 || i >= n_ || j < 0 || j >= n_ || k < 0 || k >= n_)
            throw StructureError("structure constant index out of range at " + triple_str(i, j, k));
        if (i == j) {
            if (!v.is_zero())
                throw StructureError("nonzero bracket [e_i, e_i] at " + triple_str(i, j, k));
            continue;
        }
        if (seen[slot(i, j, k)] && c_[slot(i, j, k)] != v)
            throw StructureError("conflicting structure constants at " + triple_str(i, j, k));
        seen[slot(i, j, k)] = true;
        seen[slot(j, i, k)] = true;
        c_[slot(i, j, k)] = v;
        c_[slot(j, i, k)] = -v;
    }
    // Jacobi: sum_m c_{ij}^m c_{mk}^l + c_{jk}^m c_{mi}^l + c_{ki}^m c_{mj}^l = 0.
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            for (int k = j + 1; k < n_; ++k)
                for (int l = 0; l < n_; ++l) {
                    Rational s(0);
                    for (int m = 0; m < n_; ++m) {
                        s += c(i, j, m) * c(m, k, l);
                        s += c(j, k, m) * c(m, i, l);
                        s += c(k, i, m) * c(m, j, l);
                    }
                    if (!s.is_zero())
                        throw StructureError("Jacobi identity fails on basis triple " +
                                             triple_str(i, j, k) + " in component " +
                                             std::to_string(l + 1));
                }
}

const Rational& LieAlgebraSpec::c(int i, int j, int k) const {
    return c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
}

QMatrix LieAlgebraSpec::ad(int i) const {
    QMatrix m = q_zero(n_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) m[k][j] = c(i, j, k);
    return m;
}

LieAlgebraSpec LieAlgebraSpec::so3() {
    // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2.
    return LieAlgebraSpec(3, {{0, 1, 2, Rational(1)},
                              {1, 2, 0, Rational(1)},
                              {2, 0, 1, Rational(1)}});
}

LieAlgebraSpec LieAlgebraSpec::sl2() {
    // Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    return LieAlgebraSpec(3, {{0, 1, 1, Rational(2)},
                              {0, 2, 2, Rational(-2)},
                              {1, 2, 0, Rational(1)}});
}

LieAlgebraSpec LieAlgebraSpec::heisenberg() {
    // [e1,e2] = e3 central.
    return LieAlgebraSpec(3, {{0, 1, 2, Rational(1)}});
}

LieAlgebraSpec LieAlgebraSpec::abelian(int dim) {
    return LieAlgebraSpec(dim, {});
}

PartialAnchor lp_anchor(const LieAlgebraSpec& g, const VarSpacePtr& space) {
    const int n = g.dim();
    if (space->dim() != n) throw DimensionError("space dimension does not match the Lie algebra");
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!g.c(i, j, k).is_zero())
                    m[i][j] += Polynomial::variable(space, k).scaled(g.c(i, j, k));
    return PartialAnchor::from_bivector(Bivector(space, m));
}

PartialAnchor frozen_anchor(const LieAlgebraSpec& g, const QVector& m0, const VarSpacePtr& space) {
    const int n = g.dim();
    if (space->dim() != n) throw DimensionError("space dimension does not match the Lie algebra");
    if (static_cast<int>(m0.size()) != n)
        throw DimensionError("freeze point dimension does not match the Lie algebra");
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v(0);
            for (int k = 0; k < n; ++k) v += g.c(i, j, k) * m0[k];
            m[i][j] = Polynomial::constant(space, v);
        }
    return PartialAnchor::from_bivector(Bivector(space, m));
}

CheckResult cocycle_check(const LieAlgebraSpec& g, const QMatrix& omega) {
    const int n = g.dim();
    if (static_cast<int>(omega.size()) != n)
        throw DimensionError("cocycle matrix dimension does not match the Lie algebra");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(omega[i].size()) != n)
            throw DimensionError("cocycle matrix is not square");
        for (int j = 0; j < n; ++j)
            if (omega[i][j] != -omega[j][i])
                return check_fail("cocycle", "omega is not antisymmetric at entry (" +
                                                 std::to_string(i + 1) + ", " +
                                                 std::to_string(j + 1) + ")");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Rational s(0);
                for (int m = 0; m < n; ++m) {
                    s += g.c(i, j, m) * omega[m][k];
                    s += g.c(j, k, m) * omega[m][i];
                    s += g.c(k, i, m) * omega[m][j];
                }
                if (!s.is_zero())
                    return check_fail("cocycle", "cyclic sum on basis triple " + triple_str(i, j, k) +
                                                     " equals " + s.str());
            }
    return check_pass("cocycle");
}

std::optional<QVector> coboundary_solve(const LieAlgebraSpec& g, const QMatrix& omega) {
    const int n = g.dim();
    // Unknown beta in R^n; one equation per pair i<j: sum_k c_{ij}^k beta_k = omega_ij.
    QMatrix a;
    QVector rhs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            QVector row(n, Rational(0));
            for (int k = 0; k < n; ++k) row[k] = g.c(i, j, k);
            a.push_back(row);
            rhs.push_back(omega[i][j]);
        }
    return q_solve(a, rhs);
}

PartialAnchor modified_anchor(const LieAlgebraSpec& g, const QMatrix& omega,
                              const VarSpacePtr& space) {
    CheckResult cc = cocycle_check(g, omega);
    if (cc.status != Status::pass)
        throw StructureError("modified bracket needs a 2-cocycle: " + cc.witness);
    const int n = g.dim();
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Polynomial e = Polynomial::constant(space, omega[i][j]);
            for (int k = 0; k < n; ++k)
                if (!g.c(i, j, k).is_zero())
                    e += Polynomial::variable(space, k).scaled(g.c(i, j, k));
            m[i][j] = e;
        }
    return PartialAnchor::from_bivector(Bivector(space, m));
}

QMatrix killing_form(const LieAlgebraSpec& g) {
    const int n = g.dim();
    QMatrix k = q_zero(n, n);
    for (int i = 0; i < n; ++i) {
        QMatrix adi = g.ad(i);
        for (int j = i; j < n; ++j) {
            QMatrix adj = g.ad(j);
            Rational tr(0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) tr += adi[a][b] * adj[b][a];
            k[i][j] = tr;
            k[j][i] = tr;
        }
    }
    return k;
}

KillingCasimir killing_casimir(const LieAlgebraSpec& g, const VarSpacePtr& space) {
    KillingCasimir out;
    QMatrix k = killing_form(g);
    out.rank = q_rank(k);
    if (out.rank < g.dim()) return out;
    QMatrix kinv = *q_inverse(k);
    Polynomial c = Polynomial::zero(space);
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
            if (kinv[i][j].is_zero()) continue;
            Monomial mono(space->dim(), 0);
            mono[i] += 1;
            mono[j] += 1;
            c += Polynomial::term(space, mono, kinv[i][j] / Rational(2));
        }
    CheckResult verify = casimir_check(c, lp_anchor(g, space));
    if (verify.status != Status::pass)
        throw StructureError("Killing Casimir failed verification: " + verify.witness);
    out.ok = true;
    out.casimir = c;
    return out;
}

CheckResult casimir_check(const Polynomial& c, const PartialAnchor& p) {
    Admissibility adm = is_admissible(c, p.basis());
    if (!adm.ok)
        return check_fail("casimir", "candidate is not admissible (fails at derivative order " +
                                         std::to_string(adm.failing_order) + ")");
    VecField x = hamiltonian_field(c, p);
    if (x.is_zero()) return check_pass("casimir");
    return check_fail("casimir", "Hamiltonian field is " + x.str());
}

MagriChain argument_translation_chain(const LieAlgebraSpec& g, const QVector& m0,
                                      const Polynomial& casimir, int depth) {
    MagriChain out;
    const int n = g.dim();
    VarSpacePtr space = casimir.space();
    if (space->dim() != n)
        throw DimensionError("Casimir lives on a space of the wrong dimension");
    if (static_cast<int>(m0.size()) != n)
        throw DimensionError("translation point dimension does not match the Lie algebra");
    if (depth < 0) throw StructureError("chain depth must be nonnegative");

    PartialAnchor lp = lp_anchor(g, space);
    PartialAnchor frz = frozen_anchor(g, m0, space);

    CheckResult cas = casimir_check(casimir, lp);
    out.report.add(CheckResult{"chain_seed_casimir", cas.status, cas.witness, cas.detail});
    if (cas.status != Status::pass) return out;

    const int dmax = casimir.degree() < 0 ? 0 : casimir.degree();
    int d = depth;
    if (d > dmax) {
        out.notices.push_back("chain depth capped at the Casimir degree " + std::to_string(dmax) +
                              "; higher terms vanish identically");
        d = dmax;
    }

    // H_lam(x) = C(m0 + lam x) on the extended space (x..., lam).
    VarSpacePtr ext = space->extended({"lam"});
    const int lam = n;
    std::vector<Polynomial> args;
    args.reserve(n);
    for (int i = 0; i < n; ++i) {
        Monomial mono(ext->dim(), 0);
        mono[i] = 1;
        mono[lam] = 1;
        Polynomial a = Polynomial::term(ext, mono, Rational(1));
        a += Polynomial::constant(ext, m0[i]);
        args.push_back(a);
    }
    Polynomial h_ext = casimir.subst(args);

    // Pencil Casimir identity: (P + lam Q) d_x H_lam = 0 identically.
    {
        PartialAnchor pe = adjoin_parameters(frz, {"lam"});
        PartialAnchor qe = adjoin_parameters(lp, {"lam"});
        Polynomial lam_poly = Polynomial::variable(pe.space(), lam);
        PartialAnchor pencil = pe + qe.scaled_by(lam_poly);
        OneForm dh = OneForm::zero(ext); // name-equal to the pencil's space
        for (int i = 0; i < n; ++i) dh.comp[static_cast<std::size_t>(i)] = h_ext.diff(i);
        VecField x = *pencil.apply(dh);
        if (x.is_zero())
            out.report.add(check_pass("pencil_casimir"));
        else
            out.report.add(check_fail("pencil_casimir",
                                      "(P + lam*LP) dH_lam = " + x.str()));
    }

    // Coefficient extraction: H_k = [lam^k] H_ext, pushed back down to x-space.
    std::vector<Polynomial> hams(static_cast<std::size_t>(dmax) + 1, Polynomial::zero(space));
    for (const auto& [mono, coef] : h_ext.terms()) {
        int k = static_cast<int>(mono[lam]);
        Monomial base(mono.begin(), mono.end() - 1);
        hams[k] += Polynomial::term(space, base, coef);
    }
    out.hamiltonians.assign(hams.begin(), hams.begin() + d + 1);

    if (!hams[0].is_constant())
        out.report.add(check_fail("H0_constant", "H_0 = " + hams[0].str()));
    else
        out.report.add(check_pass("H0_constant"));

    // Link identities: P dH_k + LP dH_{k-1} = 0 for k = 1..dmax, and the top
    // closes with LP dH_dmax = 0.
    for (int k = 1; k <= d; ++k) {
        VecField lhs = *frz.apply(differential(hams[k])) + *lp.apply(differential(hams[k - 1]));
        std::string name = "link(" + std::to_string(k) + ")";
        if (lhs.is_zero())
            out.report.add(check_pass(name));
        else
            out.report.add(check_fail(name, "P dH_" + std::to_string(k) + " + LP dH_" +
                                                std::to_string(k - 1) + " = " + lhs.str()));
    }
    if (d == dmax) {
        VecField top = *lp.apply(differential(hams[dmax]));
        if (top.is_zero())
            out.report.add(check_pass("link_top"));
        else
            out.report.add(check_fail("link_top",
                                      "LP dH_" + std::to_string(dmax) + " = " + top.str()));
    }

    // Involutivity and commuting flows for all pairs, both anchors.
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            std::string suffix = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            Polynomial bf = partial_bracket(out.hamiltonians[i], out.hamiltonians[j], frz);
            out.report.add(bf.is_zero()
                               ? check_pass("involution_frozen" + suffix)
                               : check_fail("involution_frozen" + suffix, "{H_i, H_j} = " + bf.str()));
            Polynomial bl = partial_bracket(out.hamiltonians[i], out.hamiltonians[j], lp);
            out.report.add(bl.is_zero()
                               ? check_pass("involution_linear" + suffix)
                               : check_fail("involution_linear" + suffix, "{H_i, H_j} = " + bl.str()));
            VecField xi = *frz.apply(differential(out.hamiltonians[i]));
            VecField xj = *frz.apply(differential(out.hamiltonians[j]));
            VecField comm = lie_bracket(xi, xj);
            out.report.add(comm.is_zero()
                               ? check_pass("commuting_fields_frozen" + suffix)
                               : check_fail("commuting_fields_frozen" + suffix,
                                            "[X_i, X_j] = " + comm.str()));
            VecField yi = *lp.apply(differential(out.hamiltonians[i]));
            VecField yj = *lp.apply(differential(out.hamiltonians[j]));
            VecField comm2 = lie_bracket(yi, yj);
            out.report.add(comm2.is_zero()
                               ? check_pass("commuting_fields_linear" + suffix)
                               : check_fail("commuting_fields_linear" + suffix,
                                            "[X_i, X_j] = " + comm2.str()));
        }

    return out;
}

} // namespace coflat

#include "coflat/bistructures.hpp"

#include "coflat/errors.hpp"

#include <sstream>

namespace coflat {

std::size_t TorsionTensor::index(int n, int i, int j) {
    // rank of (i,j), i<j, in lexicographic pair order
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2
         + static_cast<std::size_t>(j - i - 1);
}

const VecField& TorsionTensor::entry(int i, int j) const {
    return entries.at(index(n, i, j));
}

bool TorsionTensor::is_zero() const {
    for (const auto& e : entries)
        if (!e.is_zero()) return false;
    return true;
}

std::optional<std::tuple<int, int, VecField>> TorsionTensor::first_nonzero() const {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!entries[idx].is_zero()) return std::make_tuple(i, j, entries[idx]);
            ++idx;
        }
    return std::nullopt;
}

TorsionTensor torsion(const OneOneTensor& n, ExecMode mode) {
    const int dim = n.dim();
    TorsionTensor out{n.space, dim, {}};
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
    out.entries.assign(pairs.size(), VecField::zero(n.space));
    for_each_index(pairs.size(), mode, [&](std::size_t t) {
        auto [i, j] = pairs[t];
        VecField ni = n.column(i), nj = n.column(j);
        VecField ei = VecField::basis(n.space, i), ej = VecField::basis(n.space, j);
        // [d_i, d_j] = 0 on coordinate fields
        VecField inner = lie_bracket(ni, ej) + lie_bracket(ei, nj);
        out.entries[t] = lie_bracket(ni, nj) - apply_oneone(n, inner);
    });
    return out;
}

VecField torsion_via_lie(const OneOneTensor& n, int i, int j) {
    VecField ei = VecField::basis(n.space, i), ej = VecField::basis(n.space, j);
    VecField ni = n.column(i);
    OneOneTensor l1 = lie_derivative(ni, n);
    OneOneTensor l2 = lie_derivative(ei, n);
    return apply_oneone(l1, ej) - apply_oneone(n, apply_oneone(l2, ej));
}

CheckResult check_torsion(const OneOneTensor& n, ExecMode mode) {
    TorsionTensor t = torsion(n, mode);
    if (t.is_zero()) return check_pass("torsion");
    auto [i, j, v] = *t.first_nonzero();
    std::ostringstream w;
    w << "T(N)(d_" << (i + 1) << ", d_" << (j + 1) << ") = " << v.str();
    return check_fail("torsion", w.str());
}

namespace {

std::string field_witness(const char* label, int a, int b, const VecField& v) {
    std::ostringstream w;
    w << label << "(theta_" << (a + 1) << ", P theta_" << (b + 1) << ") = " << v.str();
    return w.str();
}

} // namespace

CheckReport check_pn(const PartialAnchor& p, const OneOneTensor& n, ExecMode mode) {
    require_same_space(p.space(), n.space, "PN check");
    CheckReport report;
    CheckReport poisson = is_poisson(p, mode);
    report.add(CheckResult{"poisson", poisson.overall(),
                           poisson.all_pass() ? "" : poisson.checks.back().witness, ""});
    report.add(check_torsion(n, mode));

    // pn_composition: N(P theta_a) = P(N^t theta_a) for every basis covector
    bool composition_done = true;
    for (int a = 0; a < p.k() && composition_done; ++a) {
        OneForm nta = apply_oneone_transpose(n, p.basis().covector(a));
        Decomposition d = p.basis().decompose(nta);
        if (!d.ok) {
            report.add(check_fail("pn_composition",
                                  "N^t theta_" + std::to_string(a + 1)
                                      + " escapes E-flat; residual = " + d.residual.str()));
            composition_done = false;
            break;
        }
        VecField lhs = apply_oneone(n, p.image(a));
        VecField rhs = p.apply_coeffs(d.coeffs);
        VecField diff = lhs - rhs;
        if (!diff.is_zero()) {
            report.add(check_fail("pn_composition",
                                  "(N P - P N^t)(theta_" + std::to_string(a + 1)
                                      + ") = " + diff.str()));
            composition_done = false;
            break;
        }
    }
    if (composition_done) report.add(check_pass("pn_composition"));

    // pn_concomitant on generators alpha = theta_a, X = P theta_b
    for (int a = 0; a < p.k(); ++a) {
        OneForm alpha = p.basis().covector(a);
        VecField palpha = p.image(a);
        OneOneTensor ln = lie_derivative(palpha, n);
        OneForm nta = apply_oneone_transpose(n, alpha);
        for (int b = 0; b < p.k(); ++b) {
            VecField x = p.image(b);
            VecField term1 = apply_oneone(ln, x);
            OneForm f2 = lie_derivative(x, nta);
            Decomposition d2 = p.basis().decompose(f2);
            if (!d2.ok) {
                report.add(check_fail("pn_concomitant",
                                      "L_X(N^t theta_" + std::to_string(a + 1)
                                          + ") escapes E-flat for X = P theta_"
                                          + std::to_string(b + 1)
                                          + "; residual = " + d2.residual.str()));
                return report;
            }
            OneForm f3 = lie_derivative(apply_oneone(n, x), alpha);
            Decomposition d3 = p.basis().decompose(f3);
            if (!d3.ok) {
                report.add(check_fail("pn_concomitant",
                                      "L_{NX} theta_" + std::to_string(a + 1)
                                          + " escapes E-flat for X = P theta_"
                                          + std::to_string(b + 1)
                                          + "; residual = " + d3.residual.str()));
                return report;
            }
            VecField r = term1 - p.apply_coeffs(d2.coeffs) + p.apply_coeffs(d3.coeffs);
            if (!r.is_zero()) {
                report.add(check_fail("pn_concomitant", field_witness("R", a, b, r)));
                return report;
            }
        }
    }
    report.add(check_pass("pn_concomitant"));
    return report;
}

std::vector<PartialAnchor> pn_hierarchy_anchors(const PartialAnchor& p, const OneOneTensor& n,
                                                int depth) {
    if (depth < 0) throw DimensionError("hierarchy depth must be nonnegative");
    std::vector<PartialAnchor> out;
    out.push_back(p);
    std::vector<VecField> images;
    for (int a = 0; a < p.k(); ++a) images.push_back(p.image(a));
    for (int k = 1; k <= depth; ++k) {
        for (auto& x : images) x = apply_oneone(n, x);
        out.emplace_back(p.basis(), images);
    }
    return out;
}

CheckReport pn_hierarchy(const PartialAnchor& p, const OneOneTensor& n, int depth, ExecMode mode) {
    CheckReport report;
    auto anchors = pn_hierarchy_anchors(p, n, depth);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        CheckReport pk = is_poisson(anchors[k], mode);
        report.add(CheckResult{"hierarchy_poisson(N^" + std::to_string(k) + " P)", pk.overall(),
                               pk.all_pass() ? "" : pk.checks.back().witness, ""});
    }
    for (std::size_t i = 0; i < anchors.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.size(); ++j) {
            SchoutenTensor mixed = mixed_schouten(anchors[i], anchors[j], mode);
            std::string name = "hierarchy_compatible(N^" + std::to_string(i) + " P, N^"
                             + std::to_string(j) + " P)";
            if (mixed.is_zero()) {
                report.add(check_pass(name));
            } else {
                auto [a, b, c, poly] = *mixed.first_nonzero();
                std::ostringstream w;
                w << "mixed entry(theta_" << (a + 1) << ", theta_" << (b + 1) << ", theta_"
                  << (c + 1) << ") = " << poly.str();
                report.add(check_fail(name, w.str()));
            }
        }
    return report;
}

TwoForm omega_p_omega(const PartialAnchor& p, const TwoForm& omega) {
    require_same_space(p.space(), omega.space(), "Omega P Omega");
    const int n = omega.dim();
    std::vector<std::vector<Polynomial>> m(static_cast<std::size_t>(n),
                                           std::vector<Polynomial>(static_cast<std::size_t>(n),
                                                                   Polynomial::zero(p.space())));
    for (int j = 0; j < n; ++j) {
        OneForm oj = apply_twoform(omega, VecField::basis(p.space(), j));
        auto pj = p.apply(oj);
        if (!pj)
            throw StructureError("Omega(d_" + std::to_string(j + 1)
                                 + ") does not decompose in E-flat");
        OneForm col = apply_twoform(omega, *pj);
        for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            col.comp[static_cast<std::size_t>(i)];
    }
    return TwoForm(p.space(), std::move(m));
}

CheckReport check_pomega(const PartialAnchor& p, const TwoForm& omega) {
    require_same_space(p.space(), omega.space(), "POmega check");
    CheckReport report;
    ThreeForm dw = d_twoform(omega);
    if (dw.is_zero()) {
        report.add(check_pass("omega_closed"));
    } else {
        auto [i, j, k, v] = *dw.first_nonzero();
        std::ostringstream w;
        w << "(dOmega)(d_" << (i + 1) << ", d_" << (j + 1) << ", d_" << (k + 1) << ") = " << v.str();
        report.add(check_fail("omega_closed", w.str()));
    }
    bool valued = true;
    for (int j = 0; j < omega.dim(); ++j) {
        OneForm oj = apply_twoform(omega, VecField::basis(p.space(), j));
        Decomposition d = p.basis().decompose(oj);
        if (!d.ok) {
            report.add(check_fail("omega_coflat_valued",
                                  "Omega(d_" + std::to_string(j + 1)
                                      + ") escapes E-flat; residual = " + d.residual.str()));
            valued = false;
            break;
        }
    }
    if (!valued) return report; // composite undefined without coflat values
    report.add(check_pass("omega_coflat_valued"));
    TwoForm composite = omega_p_omega(p, omega);
    ThreeForm dc = d_twoform(composite);
    if (dc.is_zero()) {
        report.add(check_pass("omega_p_omega_closed"));
    } else {
        auto [i, j, k, v] = *dc.first_nonzero();
        std::ostringstream w;
        w << "d(Omega P Omega)(d_" << (i + 1) << ", d_" << (j + 1) << ", d_" << (k + 1)
          << ") = " << v.str();
        report.add(check_fail("omega_p_omega_closed", w.str()));
    }
    return report;
}

OneOneTensor recursion_operator(const PartialAnchor& p, const TwoForm& omega) {
    require_same_space(p.space(), omega.space(), "recursion operator");
    const int n = omega.dim();
    OneOneTensor out = OneOneTensor::zero(p.space());
    for (int j = 0; j < n; ++j) {
        OneForm oj = apply_twoform(omega, VecField::basis(p.space(), j));
        auto pj = p.apply(oj);
        if (!pj)
            throw StructureError("recursion operator undefined: Omega(d_" + std::to_string(j + 1)
                                 + ") escapes E-flat");
        for (int i = 0; i < n; ++i)
            out.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                pj->comp[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace coflat

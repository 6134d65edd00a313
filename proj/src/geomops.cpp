#include "coflat/geomops.hpp"

#include "coflat/errors.hpp"
#include "coflat/liepoisson.hpp"
#include "coflat/polylinalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace coflat {

namespace {

// n x k image matrix of the anchor, column a = P(theta_a), optionally with
// x = x0 + A s substituted.
PolyMatrix image_matrix(const PartialAnchor& p) {
    const int n = p.space()->dim();
    const int k = p.k();
    PolyMatrix v(static_cast<std::size_t>(n),
                 PolyVector(static_cast<std::size_t>(k), Polynomial::zero(p.space())));
    for (int a = 0; a < k; ++a)
        for (int i = 0; i < n; ++i) v[i][a] = p.image(a).comp[static_cast<std::size_t>(i)];
    return v;
}

QVector sample_point(std::mt19937_64& gen, int n) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 6);
    QVector pt;
    pt.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pt.push_back(Rational(num(gen)) / Rational(den(gen)));
    return pt;
}

std::string point_str(const QVector& pt) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? ", " : "") << pt[i].str();
    os << ")";
    return os.str();
}

void for_each_combination(int n, int r, const std::function<void(const std::vector<int>&)>& f) {
    if (r < 0 || r > n) return;
    std::vector<int> c(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
        f(c);
        int i = r - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) return;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

std::uint64_t binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    std::uint64_t out = 1;
    for (int i = 0; i < r; ++i) out = out * static_cast<std::uint64_t>(n - i) / (i + 1);
    return out;
}

// Substitution arguments realizing x = x0 + A s on the source space.
std::vector<Polynomial> affine_args(const AffineImmersion& im, int n) {
    std::vector<Polynomial> args;
    args.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial a = Polynomial::constant(im.source, im.x0[static_cast<std::size_t>(i)]);
        for (int j = 0; j < im.source->dim(); ++j)
            if (!im.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
                a += Polynomial::variable(im.source, j)
                         .scaled(im.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        args.push_back(a);
    }
    return args;
}

PolyMatrix substituted(const PolyMatrix& v, const std::vector<Polynomial>& args,
                       const VarSpacePtr& target) {
    PolyMatrix out(v.size(), PolyVector(v.empty() ? 0 : v[0].size(), Polynomial::zero(target)));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j) out[i][j] = v[i][j].subst(args);
    return out;
}

PolyMatrix q_times_poly(const QMatrix& a, const PolyMatrix& b, const VarSpacePtr& space) {
    PolyMatrix out(a.size(), PolyVector(b.empty() ? 0 : b[0].size(), Polynomial::zero(space)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j)
            for (std::size_t l = 0; l < b.size(); ++l)
                if (!a[i][l].is_zero()) out[i][j] += b[l][j].scaled(a[i][l]);
    return out;
}

PolyMatrix poly_times_q(const PolyMatrix& a, const QMatrix& b, const VarSpacePtr& space) {
    PolyMatrix out(a.size(), PolyVector(b.empty() ? 0 : b[0].size(), Polynomial::zero(space)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j)
            for (std::size_t l = 0; l < b.size(); ++l)
                if (!b[l][j].is_zero()) out[i][j] += a[i][l].scaled(b[l][j]);
    return out;
}

PolyVector poly_mat_vec(const PolyMatrix& a, const PolyVector& v, const VarSpacePtr& space) {
    PolyVector out(a.size(), Polynomial::zero(space));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < v.size(); ++l) out[i] += a[i][l] * v[l];
    return out;
}

QMatrix eval_matrix(const PolyMatrix& v, const QVector& pt) {
    QMatrix out(v.size(), QVector(v.empty() ? 0 : v[0].size(), Rational(0)));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j) out[i][j] = v[i][j].eval(pt);
    return out;
}

int max_image_degree(const PartialAnchor& p) {
    int d = 0;
    for (int a = 0; a < p.k(); ++a)
        for (const auto& c : p.image(a).comp) d = std::max(d, c.degree());
    return d;
}

// Exact coordinate change adapted to a full-row-rank B: complete B with
// standard basis rows to an invertible T, so x = T^{-1} (y, z) splits into
// base coordinates y = Bx and fiber coordinates z.
struct AdaptedCoords {
    VarSpacePtr adapted;            // (y..., z...)
    std::vector<Polynomial> args;   // x_i expressed on the adapted space
    std::vector<std::string> fiber; // fiber variable names
};

AdaptedCoords adapt_to_submersion(const VarSpacePtr& xspace, const VarSpacePtr& target,
                                  const QMatrix& b) {
    const int n = xspace->dim();
    const int m = target->dim();
    QMatrix t = b;
    std::vector<std::string> fiber;
    for (int i = 0; i < n && static_cast<int>(t.size()) < n; ++i) {
        QMatrix cand = t;
        QVector row(static_cast<std::size_t>(n), Rational(0));
        row[static_cast<std::size_t>(i)] = Rational(1);
        cand.push_back(row);
        if (q_rank(cand) > static_cast<int>(t.size())) {
            t = std::move(cand);
            std::string name = xspace->name(i);
            for (int v = 0; v < m; ++v)
                if (target->name(v) == name) name = "fiber_" + name;
            fiber.push_back(name);
        }
    }
    if (static_cast<int>(t.size()) != n)
        throw StructureError("could not complete the submersion matrix to a coordinate change");
    std::vector<std::string> names = target->names();
    names.insert(names.end(), fiber.begin(), fiber.end());
    VarSpacePtr adapted = VarSpace::make(names);
    QMatrix tinv = *q_inverse(t);
    std::vector<Polynomial> args;
    args.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial a = Polynomial::zero(adapted);
        for (int c = 0; c < n; ++c)
            if (!tinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero())
                a += Polynomial::variable(adapted, c)
                         .scaled(tinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
        args.push_back(a);
    }
    return AdaptedCoords{adapted, std::move(args), std::move(fiber)};
}

// First fiber variable a polynomial on the adapted space depends on.
std::optional<std::string> fiber_dependence(const Polynomial& on_adapted, int base_dim,
                                            const AdaptedCoords& ac) {
    for (int t = 0; t < static_cast<int>(ac.fiber.size()); ++t)
        if (!on_adapted.diff(base_dim + t).is_zero()) return ac.fiber[static_cast<std::size_t>(t)];
    return std::nullopt;
}

// Re-expresses a fiber-independent adapted polynomial on the base space.
Polynomial push_to_base(const Polynomial& on_adapted, const VarSpacePtr& target) {
    Polynomial out = Polynomial::zero(target);
    const std::size_t m = static_cast<std::size_t>(target->dim());
    for (const auto& [mono, coef] : on_adapted.terms()) {
        Monomial base(mono.begin(), mono.begin() + static_cast<std::ptrdiff_t>(m));
        for (std::size_t t = m; t < mono.size(); ++t)
            if (mono[t] != 0)
                throw StructureError("fiber variable survived the projectability check");
        out += Polynomial::term(target, base, coef);
    }
    return out;
}

void validate_immersion(const AffineImmersion& im, int n) {
    if (static_cast<int>(im.a.size()) != n || static_cast<int>(im.x0.size()) != n)
        throw DimensionError("immersion data does not match the ambient dimension");
    const int m = im.source->dim();
    for (const auto& row : im.a)
        if (static_cast<int>(row.size()) != m)
            throw DimensionError("immersion matrix is not n x m");
    if (q_rank(im.a) != m)
        throw StructureError("immersion matrix must have full column rank");
}

void validate_submersion(const LinearSubmersion& sub, int n) {
    const int m = sub.target->dim();
    if (static_cast<int>(sub.b.size()) != m)
        throw DimensionError("submersion matrix is not m x n");
    for (const auto& row : sub.b)
        if (static_cast<int>(row.size()) != n)
            throw DimensionError("submersion matrix is not m x n");
    if (q_rank(sub.b) != m) throw StructureError("submersion matrix must have full row rank");
}

} // namespace

RankReport rank_report(const PartialAnchor& p, int samples, std::uint64_t seed) {
    RankReport out;
    const int n = p.space()->dim();
    const int k = p.k();
    PolyMatrix v = image_matrix(p);
    out.generic_rank = poly_generic_rank(v);

    std::mt19937_64 gen(seed);
    for (int s = 0; s < samples; ++s) {
        QVector pt = sample_point(gen, n);
        int r = q_rank(eval_matrix(v, pt));
        out.max_sampled_rank = std::max(out.max_sampled_rank, r);
        out.samples.push_back(RankSample{std::move(pt), r});
    }

    const int r = out.generic_rank;
    if (r > 0) {
        const std::uint64_t count = binom(n, r) * binom(k, r);
        if (count > 200) {
            out.minors_omitted = true;
        } else {
            for_each_combination(n, r, [&](const std::vector<int>& rows) {
                for_each_combination(k, r, [&](const std::vector<int>& cols) {
                    PolyMatrix sub(static_cast<std::size_t>(r),
                                   PolyVector(static_cast<std::size_t>(r),
                                              Polynomial::zero(p.space())));
                    for (int i = 0; i < r; ++i)
                        for (int j = 0; j < r; ++j)
                            sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                                v[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])]
                                 [static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])];
                    Polynomial d = poly_det(sub);
                    if (!d.is_zero()) out.minors.push_back(std::move(d));
                });
            });
        }
    }
    return out;
}

std::vector<Polynomial> polynomial_casimirs(const PartialAnchor& p, int max_degree) {
    if (max_degree < 1) throw StructureError("Casimir search needs max degree >= 1");
    const VarSpacePtr& space = p.space();
    const int n = space->dim();

    // Candidate monomials of degree 1..d; excluding the constant monomial
    // quotients the solution space by constants.
    std::vector<Monomial> unknowns;
    Monomial cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> enumerate = [&](int var, int remaining) {
        if (var == n) {
            if (monomial_degree(cur) >= 1) unknowns.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(var)] = static_cast<std::uint32_t>(e);
            enumerate(var + 1, remaining - e);
        }
        cur[static_cast<std::size_t>(var)] = 0;
    };
    enumerate(0, max_degree);

    // Constraints are linear in the coefficients: the complement-projected
    // gradient (admissibility for a constant coflat space is decided at
    // order one, since complement projection commutes with taking further
    // derivatives) and every component of the anchor image must vanish.
    std::map<std::pair<int, Monomial>, std::size_t, std::less<>> row_of;
    std::vector<QVector> rows;
    auto row_index = [&](int comp, const Monomial& m) {
        auto key = std::make_pair(comp, m);
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        std::size_t idx = rows.size();
        row_of.emplace(std::move(key), idx);
        rows.emplace_back(unknowns.size(), Rational(0));
        return idx;
    };

    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        Polynomial cj = Polynomial::term(space, unknowns[j], Rational(1));
        OneForm grad = differential(cj);
        Decomposition dec = p.basis().decompose(grad);
        VecField img = p.apply_coeffs(dec.coeffs);
        for (int comp = 0; comp < n; ++comp) {
            for (const auto& [m, c] : dec.residual.comp[static_cast<std::size_t>(comp)].terms())
                rows[row_index(comp, m)][j] = c;
            for (const auto& [m, c] : img.comp[static_cast<std::size_t>(comp)].terms())
                rows[row_index(comp + n, m)][j] = c;
        }
    }

    std::vector<Polynomial> out;
    if (unknowns.empty()) return out;
    QMatrix sys = rows.empty() ? q_zero(1, static_cast<int>(unknowns.size())) : QMatrix(rows);
    for (const QVector& kvec : q_kernel(sys)) {
        Polynomial c = Polynomial::zero(space);
        for (std::size_t j = 0; j < unknowns.size(); ++j)
            if (!kvec[j].is_zero()) c += Polynomial::term(space, unknowns[j], kvec[j]);
        CheckResult verify = casimir_check(c, p);
        if (verify.status != Status::pass)
            throw StructureError("Casimir kernel solve produced a non-Casimir: " + verify.witness);
        out.push_back(std::move(c));
    }
    return out;
}

InducedAnchor restrict_poisson(const PartialAnchor& p, const AffineImmersion& im,
                               bool force_samples, int samples, std::uint64_t seed) {
    InducedAnchor out;
    const int n = p.space()->dim();
    const int m = im.source->dim();
    const int k = p.k();
    validate_immersion(im, n);

    std::vector<Polynomial> args = affine_args(im, n);
    PolyMatrix v = substituted(image_matrix(p), args, im.source); // n x k, columns P(theta_a)|_S
    QMatrix apinv = *q_left_inverse(im.a);                        // m x n
    QMatrix proj = q_add(q_identity(n), q_scaled(q_mul(im.a, apinv), Rational(-1)));

    // Conormal coefficient vectors: w with <sum w_a theta_a, A s> = 0.
    QMatrix ta = q_mul(p.basis().rows(), im.a); // k x m, row a = pullback of theta_a
    std::vector<QVector> conormal = q_kernel(q_transpose(ta));

    const bool exact = !force_samples && max_image_degree(p) <= 1;
    if (!exact) {
        // Out of the linear category: evaluate both membership conditions at
        // sample points. A pointwise violation is reported as the failure
        // witness; a clean run certifies nothing and stays indeterminate.
        std::mt19937_64 gen(seed);
        QMatrix wmat_t; // columns = conormal vectors
        for (int a = 0; a < k; ++a) {
            QVector row;
            for (const auto& w : conormal) row.push_back(w[static_cast<std::size_t>(a)]);
            wmat_t.push_back(row);
        }
        for (int s = 0; s < samples; ++s) {
            QVector pt = sample_point(gen, m);
            QMatrix v0 = eval_matrix(v, pt);
            QMatrix o0 = q_mul(proj, v0);
            std::vector<QVector> tangent0 = q_kernel(o0);
            QMatrix span;
            for (int a = 0; a < k; ++a) {
                QVector row;
                for (const auto& g : tangent0) row.push_back(g[static_cast<std::size_t>(a)]);
                for (const auto& w : conormal) row.push_back(w[static_cast<std::size_t>(a)]);
                span.push_back(row);
            }
            if (q_rank(span) < k) {
                out.report.add(check_fail(
                    "tangent_conormal_span",
                    "at sampled point " + point_str(pt) +
                        " the tangent-image and conormal covectors span a proper subspace"));
                return out;
            }
            if (!conormal.empty()) {
                QMatrix ow; // columns O(pt) * w
                ow = q_mul(o0, wmat_t);
                for (const QVector& c : q_kernel(ow)) {
                    QVector h = q_mul_vec(wmat_t, c);
                    QVector vh = q_mul_vec(v0, h);
                    for (const Rational& entry : vh)
                        if (!entry.is_zero()) {
                            out.report.add(check_fail(
                                "intersection_in_kernel",
                                "at sampled point " + point_str(pt) +
                                    " a tangent-lifting conormal covector has nonzero image"));
                            return out;
                        }
                }
            }
        }
        out.report.add(check_indeterminate(
            "tangent_conormal_span",
            "verified at " + std::to_string(samples) +
                " sampled points only; exact decision needs image degree <= 1"));
        out.report.add(check_indeterminate(
            "intersection_in_kernel",
            "verified at " + std::to_string(samples) +
                " sampled points only; exact decision needs image degree <= 1"));
        return out;
    }

    // Exact path. Tangent covectors: polynomial kernels g(s) of the
    // complement-projected image matrix O(s) = (I - A A+) V(s).
    PolyMatrix obstruction = q_times_poly(proj, v, im.source);
    std::vector<PolyVector> tangent = poly_kernel_cleared(obstruction);

    // Span condition: tangent + conormal covectors exhaust the coflat space
    // along the subspace, as a rank count over Q(s).
    PolyMatrix span(static_cast<std::size_t>(k),
                    PolyVector(tangent.size() + conormal.size(), Polynomial::zero(im.source)));
    for (int a = 0; a < k; ++a) {
        std::size_t col = 0;
        for (const auto& g : tangent) span[static_cast<std::size_t>(a)][col++] = g[static_cast<std::size_t>(a)];
        for (const auto& w : conormal)
            span[static_cast<std::size_t>(a)][col++] =
                Polynomial::constant(im.source, w[static_cast<std::size_t>(a)]);
    }
    int span_rank = poly_generic_rank(span);
    if (span_rank < k) {
        out.report.add(check_fail("tangent_conormal_span",
                                  "tangent-image and conormal covectors span rank " +
                                      std::to_string(span_rank) + " of " + std::to_string(k)));
        return out;
    }
    out.report.add(check_pass("tangent_conormal_span"));

    // Intersection condition: conormal combinations that are also tangent
    // must have vanishing image along the subspace.
    if (!conormal.empty()) {
        PolyMatrix ow(static_cast<std::size_t>(n),
                      PolyVector(conormal.size(), Polynomial::zero(im.source)));
        for (int i = 0; i < n; ++i)
            for (std::size_t t = 0; t < conormal.size(); ++t)
                for (int a = 0; a < k; ++a)
                    if (!conormal[t][static_cast<std::size_t>(a)].is_zero())
                        ow[static_cast<std::size_t>(i)][t] +=
                            obstruction[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]
                                .scaled(conormal[t][static_cast<std::size_t>(a)]);
        for (const PolyVector& c : poly_kernel_cleared(ow)) {
            PolyVector h(static_cast<std::size_t>(k), Polynomial::zero(im.source));
            for (int a = 0; a < k; ++a)
                for (std::size_t t = 0; t < conormal.size(); ++t)
                    if (!conormal[t][static_cast<std::size_t>(a)].is_zero())
                        h[static_cast<std::size_t>(a)] +=
                            c[t].scaled(conormal[t][static_cast<std::size_t>(a)]);
            PolyVector vh = poly_mat_vec(v, h, im.source);
            for (int i = 0; i < n; ++i)
                if (!vh[static_cast<std::size_t>(i)].is_zero()) {
                    out.report.add(check_fail(
                        "intersection_in_kernel",
                        "a tangent-lifting conormal covector has image component " +
                            vh[static_cast<std::size_t>(i)].str()));
                    return out;
                }
        }
    }
    out.report.add(check_pass("intersection_in_kernel"));

    // Independent pullback covectors form the induced coflat basis.
    QMatrix ta_t = q_transpose(ta);
    std::vector<int> pivots = q_rref(ta_t); // pivot columns of ta^T = independent rows of ta
    if (pivots.empty()) {
        out.report.add(check_fail("pullback_basis",
                                  "every coflat covector pulls back to zero on the subspace"));
        return out;
    }
    QMatrix induced_rows;
    for (int b : pivots) induced_rows.push_back(ta[static_cast<std::size_t>(b)]);

    // Lift each induced covector into the tangent family and push its image
    // down through the left inverse.
    PolyMatrix tangent_mat(static_cast<std::size_t>(k),
                           PolyVector(tangent.size(), Polynomial::zero(im.source)));
    for (int a = 0; a < k; ++a)
        for (std::size_t t = 0; t < tangent.size(); ++t)
            tangent_mat[static_cast<std::size_t>(a)][t] = tangent[t][static_cast<std::size_t>(a)];
    PolyMatrix lift_sys = q_times_poly(q_transpose(ta), tangent_mat, im.source); // m x r

    std::vector<VecField> induced_images;
    for (int b : pivots) {
        PolyVector rhs;
        for (int c = 0; c < m; ++c)
            rhs.push_back(Polynomial::constant(im.source,
                                               ta[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]));
        auto sol = polyfrac_solve(lift_sys, rhs);
        std::string name = "lift(theta_" + std::to_string(b + 1) + ")";
        if (!sol) {
            out.report.add(check_fail(name, "pullback covector has no tangent lift"));
            return out;
        }
        // g = tangent_mat * y over Q(s); the lift must be polynomial.
        std::vector<PolyFrac> g(static_cast<std::size_t>(k), PolyFrac(im.source));
        for (int a = 0; a < k; ++a)
            for (std::size_t t = 0; t < tangent.size(); ++t)
                g[static_cast<std::size_t>(a)] =
                    g[static_cast<std::size_t>(a)] +
                    PolyFrac::of(tangent_mat[static_cast<std::size_t>(a)][t]) * (*sol)[t];
        PolyVector gp(static_cast<std::size_t>(k), Polynomial::zero(im.source));
        for (int a = 0; a < k; ++a) {
            if (!g[static_cast<std::size_t>(a)].is_polynomial()) {
                out.report.add(check_fail(name, "outside linear category: lift coefficient " +
                                                    std::to_string(a + 1) + " is " +
                                                    g[static_cast<std::size_t>(a)].str()));
                return out;
            }
            gp[static_cast<std::size_t>(a)] = g[static_cast<std::size_t>(a)].as_polynomial();
        }
        out.report.add(check_pass(name));
        PolyVector vg = poly_mat_vec(v, gp, im.source);
        VecField image = VecField::zero(im.source);
        for (int c = 0; c < m; ++c)
            for (int i = 0; i < n; ++i)
                if (!apinv[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].is_zero())
                    image.comp[static_cast<std::size_t>(c)] +=
                        vg[static_cast<std::size_t>(i)]
                            .scaled(apinv[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]);
        induced_images.push_back(std::move(image));
    }

    PartialAnchor induced(CoflatBasis(im.source, induced_rows), std::move(induced_images));
    out.report.extend(is_poisson(induced));
    out.anchor = std::move(induced);
    return out;
}

InducedAnchor project_poisson(const PartialAnchor& p, const LinearSubmersion& sub) {
    InducedAnchor out;
    const int n = p.space()->dim();
    const int m = sub.target->dim();
    validate_submersion(sub, n);

    // Pullbacks of the base covectors must be coflat; their images give
    // Pi_{bc}(x) = <B^t e_c, P(B^t e_b)>.
    PolyMatrix pi(static_cast<std::size_t>(m),
                  PolyVector(static_cast<std::size_t>(m), Polynomial::zero(p.space())));
    for (int b = 0; b < m; ++b) {
        OneForm beta = OneForm::constant(p.space(), sub.b[static_cast<std::size_t>(b)]);
        Decomposition dec = p.basis().decompose(beta);
        std::string name = "coflat_pullback(" + sub.target->name(b) + ")";
        if (!dec.ok) {
            out.report.add(check_fail(name, "pulled-back covector leaves the coflat space; residual " +
                                                dec.residual.str()));
            return out;
        }
        out.report.add(check_pass(name));
        VecField y = p.apply_coeffs(dec.coeffs);
        for (int c = 0; c < m; ++c) {
            Polynomial e = Polynomial::zero(p.space());
            for (int j = 0; j < n; ++j)
                if (!sub.b[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)].is_zero())
                    e += y.comp[static_cast<std::size_t>(j)]
                             .scaled(sub.b[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]);
            pi[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = e;
        }
    }

    // Fiber independence in coordinates adapted to B.
    AdaptedCoords ac = adapt_to_submersion(p.space(), sub.target, sub.b);
    PolyMatrix pi_target(static_cast<std::size_t>(m),
                         PolyVector(static_cast<std::size_t>(m), Polynomial::zero(sub.target)));
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
            Polynomial ad = pi[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)].subst(ac.args);
            if (auto fv = fiber_dependence(ad, m, ac)) {
                out.report.add(check_fail("fiber_independence",
                                          "entry (" + std::to_string(b + 1) + ", " +
                                              std::to_string(c + 1) + ") depends on fiber coordinate " +
                                              *fv));
                return out;
            }
            pi_target[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] =
                push_to_base(ad, sub.target);
        }
    out.report.add(check_pass("fiber_independence"));

    CheckResult antisym = check_matrix_antisymmetry("projected_antisymmetry", pi_target);
    out.report.add(antisym);
    if (antisym.status != Status::pass) return out;

    PartialAnchor induced = PartialAnchor::from_bivector(Bivector(sub.target, pi_target));
    out.report.extend(is_poisson(induced));
    out.anchor = std::move(induced);
    return out;
}

InducedPN restrict_pn(const PartialAnchor& p, const OneOneTensor& nt, const AffineImmersion& im) {
    InducedPN out;
    InducedAnchor base = restrict_poisson(p, im);
    if (!base.anchor || !base.report.all_pass()) {
        out.report.add(check_fail("anchor_restriction", "the anchor does not restrict; run the "
                                                        "plain restriction for the full report"));
        out.report.extend(base.report);
        return out;
    }
    out.report.add(check_pass("anchor_restriction"));

    const int n = p.space()->dim();
    const int m = im.source->dim();
    std::vector<Polynomial> args = affine_args(im, n);
    PolyMatrix nsub(static_cast<std::size_t>(n),
                    PolyVector(static_cast<std::size_t>(n), Polynomial::zero(im.source)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            nsub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                nt.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].subst(args);

    QMatrix apinv = *q_left_inverse(im.a);
    QMatrix proj = q_add(q_identity(n), q_scaled(q_mul(im.a, apinv), Rational(-1)));
    PolyMatrix na = poly_times_q(nsub, im.a, im.source);        // n x m
    PolyMatrix obstruction = q_times_poly(proj, na, im.source); // (I - A A+) N A
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (!obstruction[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
                out.report.add(check_fail(
                    "tangent_endomorphism",
                    "N does not preserve the subspace directions: component (" +
                        std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") of (I - A A+) N A is " +
                        obstruction[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].str()));
                return out;
            }
    out.report.add(check_pass("tangent_endomorphism"));

    OneOneTensor induced_n{im.source, q_times_poly(apinv, na, im.source)};
    out.report.extend(check_pn(*base.anchor, induced_n));
    out.anchor = base.anchor;
    out.tensor = std::move(induced_n);
    return out;
}

InducedPN project_pn(const PartialAnchor& p, const OneOneTensor& nt, const LinearSubmersion& sub) {
    InducedPN out;
    InducedAnchor base = project_poisson(p, sub);
    if (!base.anchor || !base.report.all_pass()) {
        out.report.add(check_fail("anchor_projection", "the anchor does not project; run the "
                                                       "plain projection for the full report"));
        out.report.extend(base.report);
        return out;
    }
    out.report.add(check_pass("anchor_projection"));

    const int n = p.space()->dim();
    const int m = sub.target->dim();
    // Candidate for the transpose of the induced tensor: (B B^t)^{-1} B N^t B^t.
    PolyMatrix n_t(static_cast<std::size_t>(n),
                   PolyVector(static_cast<std::size_t>(n), Polynomial::zero(p.space())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            n_t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                nt.m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    QMatrix bt = q_transpose(sub.b);
    QMatrix bbt_inv = *q_inverse(q_mul(sub.b, bt));
    PolyMatrix cand =
        q_times_poly(q_mul(bbt_inv, sub.b), poly_times_q(n_t, bt, p.space()), p.space()); // m x m

    // Solvability: N^t B^t = B^t * candidate identically.
    PolyMatrix lhs = poly_times_q(n_t, bt, p.space());
    PolyMatrix rhs = q_times_poly(bt, cand, p.space());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Polynomial diff = lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                              rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!diff.is_zero()) {
                out.report.add(check_fail(
                    "endomorphism_descends",
                    "N^t does not preserve the fiber-constant covectors: residual (" +
                        std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") is " + diff.str()));
                return out;
            }
        }
    out.report.add(check_pass("endomorphism_descends"));

    AdaptedCoords ac = adapt_to_submersion(p.space(), sub.target, sub.b);
    PolyMatrix cand_target(static_cast<std::size_t>(m),
                           PolyVector(static_cast<std::size_t>(m), Polynomial::zero(sub.target)));
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
            Polynomial ad = cand[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)].subst(ac.args);
            if (auto fv = fiber_dependence(ad, m, ac)) {
                out.report.add(check_fail("endomorphism_fiber_independence",
                                          "entry (" + std::to_string(b + 1) + ", " +
                                              std::to_string(c + 1) + ") depends on fiber coordinate " +
                                              *fv));
                return out;
            }
            cand_target[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] =
                push_to_base(ad, sub.target);
        }
    out.report.add(check_pass("endomorphism_fiber_independence"));

    // cand holds the transpose; transpose back to components N^b_c.
    PolyMatrix n_target(static_cast<std::size_t>(m),
                        PolyVector(static_cast<std::size_t>(m), Polynomial::zero(sub.target)));
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
            n_target[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] =
                cand_target[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
    OneOneTensor induced_n{sub.target, std::move(n_target)};
    out.report.extend(check_pn(*base.anchor, induced_n));
    out.anchor = base.anchor;
    out.tensor = std::move(induced_n);
    return out;
}

} // namespace coflat

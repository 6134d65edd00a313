#include "coflat/partial.hpp"

#include "coflat/errors.hpp"
#include "coflat/polylinalg.hpp"

#include <map>
#include <sstream>

namespace coflat {

namespace {

std::string idx1(int i) { return std::to_string(i + 1); }

} // namespace

// --- CoflatBasis ---

CoflatBasis::CoflatBasis(VarSpacePtr space, QMatrix rows)
    : space_(std::move(space)), rows_(std::move(rows)) {
    const int n = space_->dim();
    const int k = static_cast<int>(rows_.size());
    if (k == 0) throw StructureError("coflat basis needs at least one covector");
    for (const auto& r : rows_)
        if (static_cast<int>(r.size()) != n)
            throw DimensionError("coflat covector length does not match dimension");
    // rref with a transform block: [Theta | I] -> [R | T], R = T Theta
    QMatrix aug = rows_;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) aug[static_cast<std::size_t>(a)].push_back(Rational(a == b ? 1 : 0));
    std::vector<int> pivots = q_rref(aug);
    std::vector<int> struct_pivots;
    for (int p : pivots)
        if (p < n) struct_pivots.push_back(p);
    if (static_cast<int>(struct_pivots.size()) != k)
        throw StructureError("coflat covectors are linearly dependent");
    QMatrix t(static_cast<std::size_t>(k), QVector(static_cast<std::size_t>(k), Rational(0)));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                aug[static_cast<std::size_t>(a)][static_cast<std::size_t>(n + b)];
    // coefficients relative to the rref rows read off pivot columns; pull
    // back through T to get coefficients relative to the original covectors
    QMatrix pick = q_zero(k, n);
    for (int r = 0; r < k; ++r)
        pick[static_cast<std::size_t>(r)][static_cast<std::size_t>(struct_pivots[r])] = Rational(1);
    coeff_map_ = q_mul(q_transpose(t), pick);
    complement_ = q_add(q_identity(n), q_scaled(q_mul(q_transpose(rows_), coeff_map_), Rational(-1)));
}

CoflatBasis CoflatBasis::full_dual(VarSpacePtr space) {
    int n = space->dim();
    return CoflatBasis(std::move(space), q_identity(n));
}

OneForm CoflatBasis::covector(int a) const {
    return OneForm::constant(space_, rows_.at(static_cast<std::size_t>(a)));
}

Decomposition CoflatBasis::decompose(const OneForm& alpha) const {
    require_same_space(space_, alpha.space, "coflat decomposition");
    Decomposition d;
    d.coeffs.reserve(static_cast<std::size_t>(k()));
    for (int a = 0; a < k(); ++a) {
        Polynomial c = Polynomial::zero(space_);
        for (int i = 0; i < n(); ++i) {
            const Rational& l = coeff_map_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
            if (!l.is_zero()) c += alpha.comp[static_cast<std::size_t>(i)].scaled(l);
        }
        d.coeffs.push_back(std::move(c));
    }
    d.residual = alpha;
    for (int a = 0; a < k(); ++a)
        for (int i = 0; i < n(); ++i) {
            const Rational& t = rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
            if (!t.is_zero())
                d.residual.comp[static_cast<std::size_t>(i)] -= d.coeffs[static_cast<std::size_t>(a)].scaled(t);
        }
    d.ok = d.residual.is_zero();
    return d;
}

// --- admissibility ---

Admissibility is_admissible(const Polynomial& f, const CoflatBasis& basis) {
    require_same_space(f.space(), basis.space(), "admissibility");
    Admissibility out{true, 0, Polynomial::zero(f.space()), OneForm::zero(f.space())};
    if (q_is_zero(basis.complement_projector())) return out; // full dual
    const int n = basis.n();
    const QMatrix& proj = basis.complement_projector();

    auto escapes = [&](const Polynomial& g, OneForm& residual) {
        // residual of the gradient of g under projection onto the complement
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            Polynomial r = Polynomial::zero(f.space());
            for (int j = 0; j < n; ++j) {
                const Rational& c = proj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!c.is_zero()) r += g.diff(j).scaled(c);
            }
            if (!r.is_zero()) nonzero = true;
            residual.comp[static_cast<std::size_t>(i)] = std::move(r);
        }
        return nonzero;
    };

    // breadth-first over derivative multi-indices; a derivative of order m
    // with escaping gradient violates the condition at order m+1
    std::map<Monomial, Polynomial> level{{Monomial(static_cast<std::size_t>(n), 0), f}};
    int max_order = f.degree() > 0 ? f.degree() - 1 : 0;
    for (int m = 0; m <= max_order && !level.empty(); ++m) {
        for (const auto& [mi, g] : level) {
            OneForm residual = OneForm::zero(f.space());
            if (escapes(g, residual)) {
                out.ok = false;
                out.failing_order = m + 1;
                out.failing_derivative = g;
                out.residual = std::move(residual);
                return out;
            }
        }
        std::map<Monomial, Polynomial> next;
        for (const auto& [mi, g] : level) {
            if (g.is_constant()) continue;
            for (int i = 0; i < n; ++i) {
                Monomial nm = mi;
                nm[static_cast<std::size_t>(i)] += 1;
                if (next.count(nm)) continue;
                Polynomial dg = g.diff(i);
                if (!dg.is_zero()) next.emplace(std::move(nm), std::move(dg));
            }
        }
        level = std::move(next);
    }
    return out;
}

// --- PartialAnchor ---

PartialAnchor::PartialAnchor(CoflatBasis basis, std::vector<VecField> images)
    : basis_(std::move(basis)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != basis_.k())
        throw DimensionError("anchor needs one image per coflat covector");
    for (const auto& x : images_) {
        require_same_space(basis_.space(), x.space, "anchor image");
        if (static_cast<int>(x.comp.size()) != basis_.n())
            throw DimensionError("anchor image has wrong component count");
    }
}

PartialAnchor PartialAnchor::from_bivector(const Bivector& p) {
    CoflatBasis basis = CoflatBasis::full_dual(p.space());
    std::vector<VecField> images;
    images.reserve(static_cast<std::size_t>(p.dim()));
    for (int i = 0; i < p.dim(); ++i)
        images.push_back(apply_bivector(p, OneForm::basis(p.space(), i)));
    return PartialAnchor(std::move(basis), std::move(images));
}

std::optional<VecField> PartialAnchor::apply(const OneForm& alpha) const {
    Decomposition d = basis_.decompose(alpha);
    if (!d.ok) return std::nullopt;
    return apply_coeffs(d.coeffs);
}

VecField PartialAnchor::apply_coeffs(const std::vector<Polynomial>& coeffs) const {
    if (static_cast<int>(coeffs.size()) != k())
        throw DimensionError("coefficient count does not match basis");
    VecField out = VecField::zero(space());
    for (int a = 0; a < k(); ++a) {
        if (coeffs[static_cast<std::size_t>(a)].is_zero()) continue;
        out = out + images_[static_cast<std::size_t>(a)].scaled_by(coeffs[static_cast<std::size_t>(a)]);
    }
    return out;
}

Polynomial PartialAnchor::pairing_entry(int a, int b) const {
    return pairing(basis_.covector(b), image(a));
}

Bivector PartialAnchor::to_bivector() const {
    if (!is_full()) throw StructureError("bivector reconstruction needs a full-dual anchor");
    const int n = basis_.n();
    std::vector<std::vector<Polynomial>> m;
    m.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Decomposition d = basis_.decompose(OneForm::basis(space(), i));
        VecField row = apply_coeffs(d.coeffs);
        m.push_back(std::move(row.comp));
    }
    return Bivector(space(), std::move(m));
}

PartialAnchor PartialAnchor::operator+(const PartialAnchor& o) const {
    if (basis_.rows() != o.basis_.rows())
        throw StructureError("anchor sum requires identical coflat bases");
    std::vector<VecField> images;
    images.reserve(images_.size());
    for (std::size_t a = 0; a < images_.size(); ++a) images.push_back(images_[a] + o.images_[a]);
    return PartialAnchor(basis_, std::move(images));
}

PartialAnchor PartialAnchor::scaled_by(const Polynomial& f) const {
    std::vector<VecField> images;
    images.reserve(images_.size());
    for (const auto& x : images_) images.push_back(x.scaled_by(f));
    return PartialAnchor(basis_, std::move(images));
}

// --- checks ---

CheckResult check_partial_antisymmetry(const PartialAnchor& p) {
    for (int a = 0; a < p.k(); ++a)
        for (int b = a; b < p.k(); ++b) {
            Polynomial s = p.pairing_entry(a, b) + p.pairing_entry(b, a);
            if (!s.is_zero()) {
                std::ostringstream w;
                w << "<theta_" << idx1(b) << ", P theta_" << idx1(a) << "> + <theta_" << idx1(a)
                  << ", P theta_" << idx1(b) << "> = " << s.str();
                return check_fail("partial_antisymmetry", w.str());
            }
        }
    return check_pass("partial_antisymmetry");
}

PolyMatrix naive_full_extension(const PartialAnchor& p) {
    const int n = p.basis().n();
    PolyMatrix m(static_cast<std::size_t>(n),
                 PolyVector(static_cast<std::size_t>(n), Polynomial::zero(p.space())));
    for (int i = 0; i < n; ++i) {
        auto img = p.apply(OneForm::basis(p.space(), i));
        if (!img) continue; // direction outside E-flat: filled with zeros
        m[static_cast<std::size_t>(i)] = img->comp;
    }
    return m;
}

CheckResult check_matrix_antisymmetry(const std::string& name, const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i; j < m.size(); ++j) {
            Polynomial s = m[i][j] + m[j][i];
            if (!s.is_zero()) {
                std::ostringstream w;
                w << "entry (" << (i + 1) << "," << (j + 1) << "): M[i][j] + M[j][i] = " << s.str();
                return check_fail(name, w.str());
            }
        }
    return check_pass(name);
}

Polynomial partial_bracket(const Polynomial& f, const Polynomial& g, const PartialAnchor& p) {
    Admissibility af = is_admissible(f, p.basis());
    if (!af.ok) throw AdmissibilityError("f = " + f.str(), af.failing_order);
    Admissibility ag = is_admissible(g, p.basis());
    if (!ag.ok) throw AdmissibilityError("g = " + g.str(), ag.failing_order);
    Decomposition d = p.basis().decompose(differential(f));
    VecField xf = p.apply_coeffs(d.coeffs);
    return pairing(differential(g), xf);
}

VecField hamiltonian_field(const Polynomial& f, const PartialAnchor& p) {
    Admissibility af = is_admissible(f, p.basis());
    if (!af.ok) throw AdmissibilityError("f = " + f.str(), af.failing_order);
    Decomposition d = p.basis().decompose(differential(f));
    return p.apply_coeffs(d.coeffs);
}

CheckReport bracket_closure_check(const PartialAnchor& p, const std::vector<Polynomial>& gens) {
    CheckReport report;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Admissibility a = is_admissible(gens[i], p.basis());
        if (!a.ok) {
            report.add(check_fail("generator_admissible(" + std::to_string(i + 1) + ")",
                                  "gradient of " + a.failing_derivative.str()
                                      + " escapes E-flat at order " + std::to_string(a.failing_order)));
        } else {
            report.add(check_pass("generator_admissible(" + std::to_string(i + 1) + ")"));
        }
    }
    if (!report.all_pass()) return report;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            Polynomial br = partial_bracket(gens[i], gens[j], p);
            Admissibility a = is_admissible(br, p.basis());
            std::string name = "closure(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            if (a.ok) {
                report.add(check_pass(name));
            } else {
                report.add(check_fail(name, "bracket = " + br.str() + "; gradient of "
                                                + a.failing_derivative.str()
                                                + " escapes E-flat at order "
                                                + std::to_string(a.failing_order)));
            }
        }
    return report;
}

} // namespace coflat

#pragma once

#include "coflat/fields.hpp"
#include "coflat/polylinalg.hpp"
#include "coflat/qlinalg.hpp"
#include "coflat/verdict.hpp"

#include <optional>
#include <vector>

namespace coflat {

struct Decomposition {
    bool ok = false;
    std::vector<Polynomial> coeffs; // alpha = sum_a coeffs[a] * theta_a when ok
    OneForm residual;               // alpha - reconstruction; zero iff ok
};

/// Constant covector basis theta_1..theta_k spanning the subspace E-flat of
/// the dual on which an anchor is defined. Rows are linearly independent;
/// the reduction data for decomposition is precomputed once.
class CoflatBasis {
public:
    CoflatBasis(VarSpacePtr space, QMatrix rows);
    static CoflatBasis full_dual(VarSpacePtr space);

    const VarSpacePtr& space() const { return space_; }
    int n() const { return space_->dim(); }
    int k() const { return static_cast<int>(rows_.size()); }
    bool is_full() const { return k() == n(); }
    const QMatrix& rows() const { return rows_; }
    OneForm covector(int a) const;

    /// Writes alpha as sum_a c_a(x) theta_a if alpha lies in the constant
    /// span with polynomial coefficients; otherwise reports the residual.
    /// With constant covectors this is exact rational elimination applied to
    /// polynomial components, so polynomiality of the coefficients is
    /// automatic.
    Decomposition decompose(const OneForm& alpha) const;

    bool contains(const OneForm& alpha) const { return decompose(alpha).ok; }

    /// Matrix of the coefficient map: coeffs = L * components, k x n over Q.
    const QMatrix& coefficient_map() const { return coeff_map_; }

    /// I - Theta^T L, the projector onto the complement; zero for the full
    /// dual.
    const QMatrix& complement_projector() const { return complement_; }

private:
    VarSpacePtr space_;
    QMatrix rows_;       // k x n, rank k
    QMatrix coeff_map_;  // k x n
    QMatrix complement_; // n x n
};

struct Admissibility {
    bool ok = true;
    int failing_order = 0;       // smallest derivative order that escapes E-flat
    Polynomial failing_derivative; // the derivative whose gradient escapes
    OneForm residual;            // its gradient component outside E-flat
};

/// f is admissible when the gradient of every iterated partial derivative of
/// f decomposes in E-flat. For polynomials the recursion terminates at
/// deg(f), which makes the property decidable.
Admissibility is_admissible(const Polynomial& f, const CoflatBasis& basis);

/// Anchor P defined on the covectors of a CoflatBasis through its images
/// P(theta_a). Partial antisymmetry is a checked property, not a
/// construction invariant, so failing instances stay representable.
class PartialAnchor {
public:
    PartialAnchor(CoflatBasis basis, std::vector<VecField> images);

    /// Full-dual anchor P(dx_i) = row i of an antisymmetric matrix.
    static PartialAnchor from_bivector(const Bivector& p);

    const CoflatBasis& basis() const { return basis_; }
    const VarSpacePtr& space() const { return basis_.space(); }
    int k() const { return basis_.k(); }
    const VecField& image(int a) const { return images_.at(static_cast<std::size_t>(a)); }
    bool is_full() const { return basis_.is_full(); }

    /// P applied to a covector in E-flat; nullopt when alpha does not
    /// decompose.
    std::optional<VecField> apply(const OneForm& alpha) const;

    /// P applied to known decomposition coefficients.
    VecField apply_coeffs(const std::vector<Polynomial>& coeffs) const;

    /// <theta_b, P theta_a>
    Polynomial pairing_entry(int a, int b) const;

    /// Requires a full-dual basis aligned with coordinates; reconstructs the
    /// bivector matrix P^{ij} = (P dx_i)^j. Throws StructureError when the
    /// reconstruction is not antisymmetric.
    Bivector to_bivector() const;

    PartialAnchor operator+(const PartialAnchor& o) const;
    PartialAnchor scaled_by(const Polynomial& f) const;

private:
    CoflatBasis basis_;
    std::vector<VecField> images_;
};

/// <theta_b, P theta_a> + <theta_a, P theta_b> = 0 for all a <= b.
CheckResult check_partial_antisymmetry(const PartialAnchor& p);

/// Extends a partial anchor to a full-dual square matrix by filling rows of
/// missing covector directions with zeros; the candidate generally breaks
/// matrix antisymmetry, which is the point of the diagnostic.
PolyMatrix naive_full_extension(const PartialAnchor& p);

/// Antisymmetry of an arbitrary square polynomial matrix, with the failing
/// entry pair as witness.
CheckResult check_matrix_antisymmetry(const std::string& name, const PolyMatrix& m);

/// {f,g} = <dg, P(df)>. Throws AdmissibilityError when an operand is not
/// admissible, citing the operand and the failing derivative order.
Polynomial partial_bracket(const Polynomial& f, const Polynomial& g, const PartialAnchor& p);

/// X_f = P(df) for admissible f.
VecField hamiltonian_field(const Polynomial& f, const PartialAnchor& p);

/// All pairwise brackets of the generators stay admissible.
CheckReport bracket_closure_check(const PartialAnchor& p, const std::vector<Polynomial>& gens);

} // namespace coflat

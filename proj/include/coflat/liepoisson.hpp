#pragma once

#include "coflat/partial.hpp"
#include "coflat/schouten.hpp"

#include <optional>
#include <tuple>

namespace coflat {

/// Structure constants c_{ij}^k of a finite-dimensional Lie algebra in a
/// fixed basis: [e_i, e_j] = sum_k c_{ij}^k e_k. Construction verifies
/// antisymmetry by filling and the Jacobi identity exactly.
class LieAlgebraSpec {
public:
    /// entries hold (i, j, k, c_{ij}^k), zero-based, for i != j; the (j, i)
    /// values follow by antisymmetry. Duplicate or conflicting entries and
    /// Jacobi failures throw StructureError with the offending triple.
    LieAlgebraSpec(int dim, const std::vector<std::tuple<int, int, int, Rational>>& entries);

    static LieAlgebraSpec so3();
    static LieAlgebraSpec sl2();
    static LieAlgebraSpec heisenberg();
    static LieAlgebraSpec abelian(int dim);

    int dim() const { return n_; }
    const Rational& c(int i, int j, int k) const;

    /// Matrix of ad_{e_i}: column j holds [e_i, e_j].
    QMatrix ad(int i) const;

private:
    int n_;
    std::vector<Rational> c_;
};

/// Linear anchor P^{ij}(x) = sum_k c_{ij}^k x_k on the full dual.
PartialAnchor lp_anchor(const LieAlgebraSpec& g, const VarSpacePtr& space);

/// Constant anchor frozen at a point: P^{ij} = sum_k c_{ij}^k m0_k.
PartialAnchor frozen_anchor(const LieAlgebraSpec& g, const QVector& m0, const VarSpacePtr& space);

/// omega is a 2-cocycle iff omega([x,y],z) + omega([y,z],x) + omega([z,x],y)
/// vanishes on all basis triples.
CheckResult cocycle_check(const LieAlgebraSpec& g, const QMatrix& omega);

/// beta with omega(x,y) = <beta,[x,y]>, i.e. omega_ij = sum_k beta_k c_{ij}^k,
/// if the linear system is solvable.
std::optional<QVector> coboundary_solve(const LieAlgebraSpec& g, const QMatrix& omega);

/// Affine anchor P^{ij}(x) = sum_k c_{ij}^k x_k + omega_ij. Requires the
/// cocycle condition; throws StructureError citing the failing triple.
PartialAnchor modified_anchor(const LieAlgebraSpec& g, const QMatrix& omega,
                              const VarSpacePtr& space);

/// K_ij = trace(ad_i ad_j).
QMatrix killing_form(const LieAlgebraSpec& g);

struct KillingCasimir {
    bool ok = false;
    int rank = 0;          // rank of the Killing form
    std::optional<Polynomial> casimir; // (1/2) sum K^{ij} x_i x_j when invertible
};

/// Quadratic Casimir from the inverse Killing form; available only when the
/// form is nondegenerate. The result is verified against the linear anchor.
KillingCasimir killing_casimir(const LieAlgebraSpec& g, const VarSpacePtr& space);

/// Admissibility of C, then the Hamiltonian field P(dC) = 0 with the
/// nonzero field as witness.
CheckResult casimir_check(const Polynomial& c, const PartialAnchor& p);

struct MagriChain {
    std::vector<Polynomial> hamiltonians; // H_0 .. H_d
    CheckReport report;
    std::vector<std::string> notices;
};

/// Finite Magri-Lenard chain by argument translation: H_lam(x) = C(m0+lam x)
/// expands into H_0..H_{deg C}. With P the frozen anchor at m0 and Q the
/// linear anchor, the chain is verified through
///   - H_0 constant,
///   - (P + lam Q) d H_lam = 0 identically in (x, lam),
///   - per-degree link identities P dH_k + Q dH_{k-1} = 0 (coefficient
///     extraction of the previous line),
///   - involutivity of all pairs under both brackets,
///   - commuting Hamiltonian fields under both anchors.
/// depth beyond deg C is capped with a notice; the tail is identically zero.
MagriChain argument_translation_chain(const LieAlgebraSpec& g, const QVector& m0,
                                      const Polynomial& casimir, int depth);

} // namespace coflat

#pragma once

#include "coflat/bistructures.hpp"
#include "coflat/schouten.hpp"

#include <cstdint>
#include <optional>

namespace coflat {

struct RankSample {
    QVector point;
    int rank = 0;
};

/// Rank profile of the characteristic distribution span{P theta_a}.
struct RankReport {
    int generic_rank = 0;     // rank of the image matrix over Q(x1..xn)
    int max_sampled_rank = 0; // agrees with generic_rank for generic samples
    std::vector<RankSample> samples;
    /// Nonzero r x r minors of the image matrix, r = generic_rank: their
    /// common zero set is exactly the locus where the distribution drops
    /// rank. Identically zero minors are dropped; they do not change that
    /// zero set.
    std::vector<Polynomial> minors;
    bool minors_omitted = false; // set when the minor count exceeds the cap
};

/// Deterministic rational sample points from the seed; exact rank at each
/// point plus the generic (function-field) rank and the minor description of
/// the rank-drop locus.
RankReport rank_report(const PartialAnchor& p, int samples, std::uint64_t seed);

/// Basis of the space of polynomial Casimirs of degree <= max_degree, modulo
/// constants: polynomials C whose gradient chain stays in E-flat and with
/// P(dC) = 0, found by one exact kernel computation on the coefficients.
/// Every returned polynomial is re-verified through casimir_check.
std::vector<Polynomial> polynomial_casimirs(const PartialAnchor& p, int max_degree);

/// Affine subspace x = x0 + A s, A with full column rank (exact; checked).
struct AffineImmersion {
    VarSpacePtr source; // s-coordinates, dim m
    QMatrix a;          // n x m
    QVector x0;         // n
};

/// Linear quotient y = B x, B with full row rank (exact; checked).
struct LinearSubmersion {
    VarSpacePtr target; // y-coordinates, dim m
    QMatrix b;          // m x n
};

/// Outcome of inducing a structure on a subspace or quotient: the report
/// carries the conditions with witnesses; the anchor is present only when
/// every structural condition passed. Rejections are results, not errors.
struct InducedAnchor {
    CheckReport report;
    std::optional<PartialAnchor> anchor;
};

struct InducedPN {
    CheckReport report;
    std::optional<PartialAnchor> anchor;
    std::optional<OneOneTensor> tensor;
};

/// Induced anchor on the affine subspace. Exact decision path for anchors of
/// image degree <= 1: the coflat covectors with subspace-tangent image,
/// together with the conormal ones, must span the coflat space along the
/// subspace (rank condition over Q(s)), and covectors in the intersection
/// must have vanishing image there. Each surviving pullback covector is then
/// lifted by an exact function-field solve, its image pushed down through a
/// left inverse of A. For higher degrees (or when forced), conditions are
/// only evaluated at sample points and a clean run is reported indeterminate.
InducedAnchor restrict_poisson(const PartialAnchor& p, const AffineImmersion& im,
                               bool force_samples = false, int samples = 16,
                               std::uint64_t seed = 0);

/// Induced anchor on the quotient: entries <ds_c, P-check ds_b> are computed
/// from images of the pulled-back covectors B^t e_b (which must lie in
/// E-flat) and must not depend on the fiber coordinates of an exact adapted
/// coordinate change; the failing entry and fiber variable are the witness.
InducedAnchor project_poisson(const PartialAnchor& p, const LinearSubmersion& sub);

/// Restriction of a compatible endomorphism: requires the Poisson
/// restriction to pass and N to preserve the subspace directions,
/// (I - A A+) N(x0 + A s) A = 0; the induced tensor is A+ N A and the
/// induced pair is re-verified (torsion and both compatibility conditions).
InducedPN restrict_pn(const PartialAnchor& p, const OneOneTensor& n, const AffineImmersion& im);

/// Projection of a compatible endomorphism: requires the Poisson projection
/// to pass and N^t to send fiber-constant pulled-back covectors to
/// fiber-constant ones; the candidate is the weighted compression of N and
/// the induced pair is re-verified.
InducedPN project_pn(const PartialAnchor& p, const OneOneTensor& n, const LinearSubmersion& sub);

} // namespace coflat

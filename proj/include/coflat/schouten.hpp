#pragma once

#include "coflat/exec.hpp"
#include "coflat/partial.hpp"

#include <optional>
#include <tuple>

namespace coflat {

/// Trilinear Schouten-square values on basis covector triples a<b<c, stored
/// in canonical triple order. The structure it measures is Poisson exactly
/// when every entry vanishes.
struct SchoutenTensor {
    VarSpacePtr space;
    int k = 0;
    std::vector<Polynomial> entries;

    static std::size_t index(int k, int a, int b, int c);
    static std::size_t count(int k);
    const Polynomial& entry(int a, int b, int c) const;
    bool is_zero() const;
    std::optional<std::tuple<int, int, int, Polynomial>> first_nonzero() const;
};

/// Jacobiator entry(a,b,c) = sum over cyclic permutations of (a,b,c) of
/// <L_{P theta_a} theta_b, P theta_c>. Requires partial antisymmetry of P;
/// callers that cannot guarantee it should go through is_poisson, which
/// reports the antisymmetry failure first. Entries for distinct triples are
/// independent and are computed concurrently in parallel mode, merged in
/// canonical order.
SchoutenTensor jacobiator(const PartialAnchor& p, ExecMode mode = ExecMode::parallel);

/// Coordinate form for full-dual anchors:
/// J^{ijk} = sum_l (P^{il} d_l P^{jk} + P^{jl} d_l P^{ki} + P^{kl} d_l P^{ij}).
/// Agrees exactly with the section formula on full anchors; kept as an
/// independent oracle.
SchoutenTensor jacobiator_coordinate(const Bivector& p);

/// {f1,{f2,f3}} + {f2,{f3,f1}} + {f3,{f1,f2}}; vanishes for all admissible
/// triples iff the anchor is Poisson.
Polynomial triple_bracket_cycle(const Polynomial& f1, const Polynomial& f2, const Polynomial& f3,
                                const PartialAnchor& p);

CheckResult check_jacobi(const PartialAnchor& p, ExecMode mode = ExecMode::parallel);

/// Partial antisymmetry first, then the jacobiator; the second check is
/// skipped when the first fails since the formula presupposes it.
CheckReport is_poisson(const PartialAnchor& p, ExecMode mode = ExecMode::parallel);

/// Mixed Schouten bracket via polarization:
/// [P,Q] = 1/2 ([P+Q, P+Q] - [P,P] - [Q,Q]). Zero iff P and Q are
/// compatible, given both are Poisson.
SchoutenTensor mixed_schouten(const PartialAnchor& p, const PartialAnchor& q,
                              ExecMode mode = ExecMode::parallel);

/// Both anchors Poisson (preconditions reported), then the mixed bracket.
CheckReport check_compatibility(const PartialAnchor& p, const PartialAnchor& q,
                                ExecMode mode = ExecMode::parallel);

/// The anchor with images lifted to space + formal parameters; covectors
/// gain zero entries in the parameter directions, so parameter derivatives
/// never reach any downstream pairing.
PartialAnchor adjoin_parameters(const PartialAnchor& p, const std::vector<std::string>& params);

/// Jacobi for P + lam Q identically in (x, lam), and for the two-parameter
/// pencil lam P + mu Q when two_parameter is set.
CheckReport pencil_check(const PartialAnchor& p, const PartialAnchor& q, bool two_parameter = true,
                         ExecMode mode = ExecMode::parallel);

} // namespace coflat

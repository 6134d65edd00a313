#pragma once

#include "coflat/schouten.hpp"

#include <optional>
#include <tuple>

namespace coflat {

/// Torsion values T(N)(d_i, d_j) for i<j in canonical pair order.
struct TorsionTensor {
    VarSpacePtr space;
    int n = 0;
    std::vector<VecField> entries;

    static std::size_t index(int n, int i, int j);
    const VecField& entry(int i, int j) const;
    bool is_zero() const;
    std::optional<std::tuple<int, int, VecField>> first_nonzero() const;
};

/// T(N)(X,Y) = [NX,NY] - N([NX,Y] + [X,NY] - N[X,Y]) on coordinate fields;
/// pair entries are independent and run concurrently in parallel mode.
TorsionTensor torsion(const OneOneTensor& n, ExecMode mode = ExecMode::parallel);

CheckResult check_torsion(const OneOneTensor& n, ExecMode mode = ExecMode::parallel);

/// Nijenhuis torsion via Lie derivatives: (L_{NX}(N) - N L_X(N))(Y), an
/// equivalent route kept as an independent oracle.
VecField torsion_via_lie(const OneOneTensor& n, int i, int j);

/// Full partial Poisson-Nijenhuis verdict:
///   poisson:        P is Poisson (precondition, reported first)
///   torsion:        T(N) = 0
///   pn_composition: N P = P N^t on every basis covector; requires N^t to
///                   preserve E-flat, reported as a structural failure when
///                   it does not
///   pn_concomitant: R(P,N)(alpha, X) = L_{P alpha}(N)X - P(L_X(N^t alpha))
///                   + P(L_{NX} alpha) vanishes on generator pairs
///                   (theta_a, P theta_b)
CheckReport check_pn(const PartialAnchor& p, const OneOneTensor& n,
                     ExecMode mode = ExecMode::parallel);

/// P_k = N^k P as anchors on the shared coflat basis, k = 0..depth.
std::vector<PartialAnchor> pn_hierarchy_anchors(const PartialAnchor& p, const OneOneTensor& n,
                                                int depth);

/// Every hierarchy anchor partially antisymmetric and Poisson, all pairs
/// mutually compatible.
CheckReport pn_hierarchy(const PartialAnchor& p, const OneOneTensor& n, int depth,
                         ExecMode mode = ExecMode::parallel);

/// The composite two-form (Omega P Omega)(X, Y) = <Omega(P(Omega X)), Y>.
/// Requires every Omega(d_i) to decompose in E-flat.
TwoForm omega_p_omega(const PartialAnchor& p, const TwoForm& omega);

/// Weak partial symplectic compatibility:
///   omega_closed:          d Omega = 0
///   omega_coflat_valued:   Omega(d_i) in E-flat for every i
///   omega_p_omega_closed:  d(Omega P Omega) = 0
CheckReport check_pomega(const PartialAnchor& p, const TwoForm& omega);

/// Recursion operator N = P o Omega, column j = P(Omega d_j). Requires
/// check_pomega's coflat-valued condition; throws StructureError otherwise.
OneOneTensor recursion_operator(const PartialAnchor& p, const TwoForm& omega);

} // namespace coflat

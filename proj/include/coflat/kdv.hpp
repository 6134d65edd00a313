#pragma once

#include "coflat/exec.hpp"
#include "coflat/partial.hpp"

#include <string>
#include <vector>

namespace coflat::kdv {

/// Periodic grid operators in exact rational arithmetic: the central first
/// difference D1 and the wide third difference D3, both circulant and
/// exactly antisymmetric, plus the two discrete structures
///   P1 = D1,   P2(u)_{ij} = D3_{ij} + 2 (u_i D1_{ij} + D1_{ij} u_j).
struct ExactSystem {
    int n = 0;
    Rational h;
    QMatrix d1, d3;
    VarSpacePtr uspace; // u1..uN
};

/// Stencils need five distinct neighbors. The spacing only scales the
/// operators, so any positive rational works for identity checks.
ExactSystem build_exact(int n, const Rational& h);

PartialAnchor first_anchor(const ExactSystem& sys);
PartialAnchor second_anchor(const ExactSystem& sys);

/// Exact kernel of D1: always contains the constant vector; for even N the
/// alternating checkerboard vector joins it.
std::vector<QVector> d1_kernel(const ExactSystem& sys);

/// C(u) = h * sum u_i, the discrete mass.
Polynomial mass_casimir(const ExactSystem& sys);

/// L(u) g with L the second-structure operator matrix at the point u.
QVector apply_second_at(const ExactSystem& sys, const QVector& u, const QVector& g);

struct LenardResult {
    bool ok = false;
    Rational mean;   // mean of the right-hand side L(u) g
    QVector g;       // minimal-norm solution of D1 g' = L(u) g, orthogonal to ker D1
    QVector residual; // D1 g' - L(u) g; zero exactly when the step is consistent
};

/// One Magri-Lenard step D1 g_{k+1} = L(u) g_k, solved exactly through the
/// kernel-augmented normal equations (D1^T D1 + proj_ker) g = D1^T rhs; the
/// solution is automatically orthogonal to ker D1, which fixes the free
/// constants. A nonzero residual reports the inconsistency witness.
LenardResult lenard_step(const ExactSystem& sys, const QVector& u, const QVector& g);

// ---- floating-point laboratory ----

struct FloatSystem {
    int n = 0;
    double length = 0; // circumference, default 2*pi
    double h = 0;
};

FloatSystem build_float(int n, double length);

std::vector<double> apply_d1(const FloatSystem& sys, const std::vector<double>& v);
std::vector<double> apply_d3(const FloatSystem& sys, const std::vector<double>& v);
/// L(u) g = D3 g + 2 (u .* D1 g + D1 (u .* g)).
std::vector<double> apply_second_at(const FloatSystem& sys, const std::vector<double>& u,
                                    const std::vector<double>& g);

struct LenardResultF {
    bool ok = false;
    double mean = 0;
    std::vector<double> g;
    double residual_norm = 0; // max norm of D1 g' - rhs
};

LenardResultF lenard_step(const FloatSystem& sys, const std::vector<double>& u,
                          const std::vector<double>& g);

enum class Functional { mass, momentum, energy, airy };

/// mass h*sum u, momentum h*sum u^2/2, energy h*sum(u^3 - (D1 u)^2/2),
/// airy h*sum(-(D1 u)^2/2) (the linear dispersive part alone).
double functional_value(const FloatSystem& sys, Functional f, const std::vector<double>& u);

/// Variational gradient delta H with dH/dt = 0 along u' = D1 deltaH;
/// energy gives deltaH = 3u^2 + D1^2 u, the discrete u_t = u_xxx + 6 u u_x.
std::vector<double> variational_gradient(const FloatSystem& sys, Functional f,
                                         const std::vector<double>& u);

/// Largest stable step for the classical 4-stage scheme: its imaginary-axis
/// stability reach is about 2.8, the third-difference spectral radius is
/// bounded by 2.6/h^3 and the advective part by 6*umax/h, so
/// dt_max = 2.8 / (2.6/h^3 + 6*umax/h).
double max_stable_dt(const FloatSystem& sys, double umax);

struct Drift {
    double initial = 0;
    double final_value = 0;
    double drift = 0; // |final - initial|
};

struct IntegrateResult {
    bool aborted = false;
    int abort_step = -1;
    std::vector<double> u;
    Drift mass, momentum, energy;
};

/// Classical 4-stage integration of u' = D1 deltaH(u). Throws when dt
/// violates the stability guard; aborts (with the step index) on blowup.
IntegrateResult integrate(const FloatSystem& sys, Functional f, double dt, int steps,
                          std::vector<double> u0);

struct RefinementRow {
    int n = 0;
    double first_magnitude = 0;  // trilinear Jacobiator of P1: identically zero
    double second_magnitude = 0; // |J(alpha, beta, gamma; u)| for the fixed smooth profiles
};

/// Evaluates the closed-form trilinear Jacobiator contraction of P2 on
/// sampled sin/cos covector profiles per grid size. Rows are independent
/// and run in parallel. Nothing is asserted about the magnitudes; the table
/// documents how the discretization behaves under refinement.
std::vector<RefinementRow> jacobiator_refinement(const std::vector<int>& ns,
                                                 ExecMode mode = ExecMode::parallel);

/// log2 ratio of consecutive magnitudes; one entry per adjacent pair.
std::vector<double> refinement_orders(const std::vector<RefinementRow>& rows);

} // namespace coflat::kdv

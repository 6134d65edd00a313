#pragma once

#include "coflat/polynomial.hpp"
#include "coflat/qlinalg.hpp"

#include <vector>

namespace coflat {

/// Polynomial vector field X = sum X^i d/dx_i.
struct VecField {
    VarSpacePtr space;
    std::vector<Polynomial> comp;

    static VecField zero(VarSpacePtr space);
    static VecField basis(VarSpacePtr space, int i);
    bool is_zero() const;
    VecField operator+(const VecField& o) const;
    VecField operator-(const VecField& o) const;
    VecField operator-() const;
    VecField scaled_by(const Polynomial& f) const;
    std::string str() const;
};

/// Polynomial one-form alpha = sum alpha_i dx_i.
struct OneForm {
    VarSpacePtr space;
    std::vector<Polynomial> comp;

    static OneForm zero(VarSpacePtr space);
    static OneForm basis(VarSpacePtr space, int i);
    static OneForm constant(VarSpacePtr space, const QVector& covector);
    bool is_zero() const;
    bool is_constant() const;
    OneForm operator+(const OneForm& o) const;
    OneForm operator-(const OneForm& o) const;
    OneForm operator-() const;
    OneForm scaled_by(const Polynomial& f) const;
    std::string str() const;
};

/// Antisymmetric (2,0) tensor, entries P^{ij} with P^{ij} = <dx_j, P dx_i>.
/// Construction validates antisymmetry exactly.
class Bivector {
public:
    Bivector(VarSpacePtr space, std::vector<std::vector<Polynomial>> entries);
    static Bivector zero(VarSpacePtr space);
    static Bivector from_upper(VarSpacePtr space,
                               const std::vector<std::tuple<int, int, Polynomial>>& upper);

    const VarSpacePtr& space() const { return space_; }
    int dim() const { return static_cast<int>(m_.size()); }
    const Polynomial& entry(int i, int j) const;
    const std::vector<std::vector<Polynomial>>& matrix() const { return m_; }
    Bivector operator+(const Bivector& o) const;
    Bivector scaled_by(const Polynomial& f) const;

private:
    VarSpacePtr space_;
    std::vector<std::vector<Polynomial>> m_;
};

/// Antisymmetric (0,2) tensor; Omega applied to a field gives the one-form
/// (Omega X)_i = sum_j Omega_ij X^j.
class TwoForm {
public:
    TwoForm(VarSpacePtr space, std::vector<std::vector<Polynomial>> entries);
    static TwoForm zero(VarSpacePtr space);
    static TwoForm from_upper(VarSpacePtr space,
                              const std::vector<std::tuple<int, int, Polynomial>>& upper);

    const VarSpacePtr& space() const { return space_; }
    int dim() const { return static_cast<int>(m_.size()); }
    const Polynomial& entry(int i, int j) const;
    const std::vector<std::vector<Polynomial>>& matrix() const { return m_; }

private:
    VarSpacePtr space_;
    std::vector<std::vector<Polynomial>> m_;
};

/// (1,1) tensor field, N^i_j = component i of N(d/dx_j).
struct OneOneTensor {
    VarSpacePtr space;
    std::vector<std::vector<Polynomial>> m;

    static OneOneTensor identity(VarSpacePtr space);
    static OneOneTensor zero(VarSpacePtr space);
    int dim() const { return static_cast<int>(m.size()); }
    VecField column(int j) const;
    OneOneTensor operator-(const OneOneTensor& o) const;
    bool is_zero() const;
};

/// Alternating 3 covariant slots, stored on i<j<k.
struct ThreeForm {
    VarSpacePtr space;
    std::vector<Polynomial> entries; // index(i,j,k) over i<j<k

    static std::size_t index(int n, int i, int j, int k);
    bool is_zero() const;
    /// First nonzero (i, j, k, value), if any.
    std::optional<std::tuple<int, int, int, Polynomial>> first_nonzero() const;
};

// --- pairings and applications ---

Polynomial pairing(const OneForm& a, const VecField& x);

/// (P alpha)^j = sum_i alpha_i P^{ij}
VecField apply_bivector(const Bivector& p, const OneForm& a);

/// (N X)^i = sum_j N^i_j X^j
VecField apply_oneone(const OneOneTensor& n, const VecField& x);

/// (N^t alpha)_j = sum_i alpha_i N^i_j
OneForm apply_oneone_transpose(const OneOneTensor& n, const OneForm& a);

/// (Omega X)_i = sum_j Omega_ij X^j
OneForm apply_twoform(const TwoForm& w, const VecField& x);

// --- differential operators ---

/// Gradient as a one-form.
OneForm differential(const Polynomial& f);

/// [X,Y]^j = sum_i (X^i d_i Y^j - Y^i d_i X^j)
VecField lie_bracket(const VecField& x, const VecField& y);

/// (L_X a)_i = sum_j (X^j d_j a_i + a_j d_i X^j)
OneForm lie_derivative(const VecField& x, const OneForm& a);

/// L_X N via its defining action (L_X N)(Y) = [X, NY] - N[X, Y], evaluated
/// on coordinate fields; the expression is tensorial in Y so this fixes all
/// components.
OneOneTensor lie_derivative(const VecField& x, const OneOneTensor& n);

/// (dOmega)_{ijk} = d_i Omega_{jk} + d_j Omega_{ki} + d_k Omega_{ij}
ThreeForm d_twoform(const TwoForm& w);

} // namespace coflat

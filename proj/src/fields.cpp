#include "coflat/fields.hpp"

#include "coflat/errors.hpp"

#include <sstream>

namespace coflat {

namespace {

std::vector<Polynomial> zero_comps(const VarSpacePtr& space) {
    return std::vector<Polynomial>(static_cast<std::size_t>(space->dim()), Polynomial::zero(space));
}

void check_square(const VarSpacePtr& space, const std::vector<std::vector<Polynomial>>& m,
                  const char* what) {
    const std::size_t n = static_cast<std::size_t>(space->dim());
    if (m.size() != n) throw DimensionError(std::string(what) + ": row count mismatch");
    for (const auto& row : m) {
        if (row.size() != n) throw DimensionError(std::string(what) + ": column count mismatch");
        for (const auto& p : row) require_same_space(space, p.space(), what);
    }
}

std::string comps_str(const std::vector<Polynomial>& comp, const VarSpacePtr& space,
                      const std::string& prefix) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (comp[i].is_zero()) continue;
        if (any) os << " + ";
        os << "(" << comp[i].str() << ")*" << prefix << space->name(static_cast<int>(i));
        any = true;
    }
    return any ? os.str() : "0";
}

} // namespace

// --- VecField ---

VecField VecField::zero(VarSpacePtr space) {
    auto c = zero_comps(space);
    return VecField{std::move(space), std::move(c)};
}

VecField VecField::basis(VarSpacePtr space, int i) {
    VecField x = zero(space);
    x.comp.at(static_cast<std::size_t>(i)) = Polynomial::constant(x.space, Rational(1));
    return x;
}

bool VecField::is_zero() const {
    for (const auto& p : comp)
        if (!p.is_zero()) return false;
    return true;
}

VecField VecField::operator+(const VecField& o) const {
    require_same_space(space, o.space, "vector field sum");
    VecField out = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) out.comp[i] += o.comp[i];
    return out;
}

VecField VecField::operator-(const VecField& o) const {
    require_same_space(space, o.space, "vector field difference");
    VecField out = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) out.comp[i] -= o.comp[i];
    return out;
}

VecField VecField::operator-() const {
    VecField out = *this;
    for (auto& p : out.comp) p = -p;
    return out;
}

VecField VecField::scaled_by(const Polynomial& f) const {
    VecField out = *this;
    for (auto& p : out.comp) p = p * f;
    return out;
}

std::string VecField::str() const { return comps_str(comp, space, "d_"); }

// --- OneForm ---

OneForm OneForm::zero(VarSpacePtr space) {
    auto c = zero_comps(space);
    return OneForm{std::move(space), std::move(c)};
}

OneForm OneForm::basis(VarSpacePtr space, int i) {
    OneForm a = zero(space);
    a.comp.at(static_cast<std::size_t>(i)) = Polynomial::constant(a.space, Rational(1));
    return a;
}

OneForm OneForm::constant(VarSpacePtr space, const QVector& covector) {
    if (static_cast<int>(covector.size()) != space->dim())
        throw DimensionError("constant covector length mismatch");
    OneForm a = zero(space);
    for (std::size_t i = 0; i < covector.size(); ++i)
        a.comp[i] = Polynomial::constant(a.space, covector[i]);
    return a;
}

bool OneForm::is_zero() const {
    for (const auto& p : comp)
        if (!p.is_zero()) return false;
    return true;
}

bool OneForm::is_constant() const {
    for (const auto& p : comp)
        if (!p.is_constant()) return false;
    return true;
}

OneForm OneForm::operator+(const OneForm& o) const {
    require_same_space(space, o.space, "one-form sum");
    OneForm out = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) out.comp[i] += o.comp[i];
    return out;
}

OneForm OneForm::operator-(const OneForm& o) const {
    require_same_space(space, o.space, "one-form difference");
    OneForm out = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) out.comp[i] -= o.comp[i];
    return out;
}

OneForm OneForm::operator-() const {
    OneForm out = *this;
    for (auto& p : out.comp) p = -p;
    return out;
}

OneForm OneForm::scaled_by(const Polynomial& f) const {
    OneForm out = *this;
    for (auto& p : out.comp) p = p * f;
    return out;
}

std::string OneForm::str() const { return comps_str(comp, space, "d"); }

// --- Bivector ---

Bivector::Bivector(VarSpacePtr space, std::vector<std::vector<Polynomial>> entries)
    : space_(std::move(space)), m_(std::move(entries)) {
    check_square(space_, m_, "bivector");
    for (int i = 0; i < dim(); ++i)
        for (int j = i; j < dim(); ++j) {
            Polynomial s = m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                         + m_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (!s.is_zero())
                throw StructureError("bivector not antisymmetric at (" + std::to_string(i + 1) + ","
                                     + std::to_string(j + 1) + "): " + s.str());
        }
}

Bivector Bivector::zero(VarSpacePtr space) {
    auto n = static_cast<std::size_t>(space->dim());
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    return Bivector(std::move(space), std::move(m));
}

Bivector Bivector::from_upper(VarSpacePtr space,
                              const std::vector<std::tuple<int, int, Polynomial>>& upper) {
    auto n = static_cast<std::size_t>(space->dim());
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    for (const auto& [i, j, p] : upper) {
        if (i == j && !p.is_zero()) throw StructureError("bivector diagonal entry must vanish");
        m.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)) = p;
        m.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(i)) = -p;
    }
    return Bivector(std::move(space), std::move(m));
}

const Polynomial& Bivector::entry(int i, int j) const {
    return m_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

Bivector Bivector::operator+(const Bivector& o) const {
    require_same_space(space_, o.space_, "bivector sum");
    auto m = m_;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += o.m_[i][j];
    return Bivector(space_, std::move(m));
}

Bivector Bivector::scaled_by(const Polynomial& f) const {
    auto m = m_;
    for (auto& row : m)
        for (auto& p : row) p = p * f;
    return Bivector(space_, std::move(m));
}

// --- TwoForm ---

TwoForm::TwoForm(VarSpacePtr space, std::vector<std::vector<Polynomial>> entries)
    : space_(std::move(space)), m_(std::move(entries)) {
    check_square(space_, m_, "two-form");
    for (int i = 0; i < dim(); ++i)
        for (int j = i; j < dim(); ++j) {
            Polynomial s = m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                         + m_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (!s.is_zero())
                throw StructureError("two-form not antisymmetric at (" + std::to_string(i + 1) + ","
                                     + std::to_string(j + 1) + "): " + s.str());
        }
}

TwoForm TwoForm::zero(VarSpacePtr space) {
    auto n = static_cast<std::size_t>(space->dim());
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    return TwoForm(std::move(space), std::move(m));
}

TwoForm TwoForm::from_upper(VarSpacePtr space,
                            const std::vector<std::tuple<int, int, Polynomial>>& upper) {
    auto n = static_cast<std::size_t>(space->dim());
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    for (const auto& [i, j, p] : upper) {
        if (i == j && !p.is_zero()) throw StructureError("two-form diagonal entry must vanish");
        m.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)) = p;
        m.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(i)) = -p;
    }
    return TwoForm(std::move(space), std::move(m));
}

const Polynomial& TwoForm::entry(int i, int j) const {
    return m_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

// --- OneOneTensor ---

OneOneTensor OneOneTensor::identity(VarSpacePtr space) {
    auto n = static_cast<std::size_t>(space->dim());
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Polynomial::constant(space, Rational(1));
    return OneOneTensor{std::move(space), std::move(m)};
}

OneOneTensor OneOneTensor::zero(VarSpacePtr space) {
    auto n = static_cast<std::size_t>(space->dim());
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial::zero(space)));
    return OneOneTensor{std::move(space), std::move(m)};
}

VecField OneOneTensor::column(int j) const {
    VecField x = VecField::zero(space);
    for (std::size_t i = 0; i < m.size(); ++i)
        x.comp[i] = m[i][static_cast<std::size_t>(j)];
    return x;
}

OneOneTensor OneOneTensor::operator-(const OneOneTensor& o) const {
    require_same_space(space, o.space, "tensor difference");
    OneOneTensor out = *this;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out.m[i][j] -= o.m[i][j];
    return out;
}

bool OneOneTensor::is_zero() const {
    for (const auto& row : m)
        for (const auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

// --- ThreeForm ---

std::size_t ThreeForm::index(int n, int i, int j, int k) {
    // position of (i,j,k), i<j<k, in lexicographic triple order
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                if (a == i && b == j && c == k) return idx;
                ++idx;
            }
    throw DimensionError("three-form index out of range");
}

bool ThreeForm::is_zero() const {
    for (const auto& p : entries)
        if (!p.is_zero()) return false;
    return true;
}

std::optional<std::tuple<int, int, int, Polynomial>> ThreeForm::first_nonzero() const {
    const int n = space->dim();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (!entries[idx].is_zero()) return std::make_tuple(i, j, k, entries[idx]);
                ++idx;
            }
    return std::nullopt;
}

// --- pairings and applications ---

Polynomial pairing(const OneForm& a, const VecField& x) {
    require_same_space(a.space, x.space, "pairing");
    Polynomial out = Polynomial::zero(a.space);
    for (std::size_t i = 0; i < a.comp.size(); ++i) out += a.comp[i] * x.comp[i];
    return out;
}

VecField apply_bivector(const Bivector& p, const OneForm& a) {
    require_same_space(p.space(), a.space, "bivector application");
    VecField out = VecField::zero(p.space());
    const int n = p.dim();
    for (int j = 0; j < n; ++j) {
        Polynomial s = Polynomial::zero(p.space());
        for (int i = 0; i < n; ++i) s += a.comp[static_cast<std::size_t>(i)] * p.entry(i, j);
        out.comp[static_cast<std::size_t>(j)] = std::move(s);
    }
    return out;
}

VecField apply_oneone(const OneOneTensor& n, const VecField& x) {
    require_same_space(n.space, x.space, "tensor application");
    VecField out = VecField::zero(n.space);
    for (std::size_t i = 0; i < n.m.size(); ++i) {
        Polynomial s = Polynomial::zero(n.space);
        for (std::size_t j = 0; j < n.m.size(); ++j) s += n.m[i][j] * x.comp[j];
        out.comp[i] = std::move(s);
    }
    return out;
}

OneForm apply_oneone_transpose(const OneOneTensor& n, const OneForm& a) {
    require_same_space(n.space, a.space, "tensor transpose application");
    OneForm out = OneForm::zero(n.space);
    for (std::size_t j = 0; j < n.m.size(); ++j) {
        Polynomial s = Polynomial::zero(n.space);
        for (std::size_t i = 0; i < n.m.size(); ++i) s += a.comp[i] * n.m[i][j];
        out.comp[j] = std::move(s);
    }
    return out;
}

OneForm apply_twoform(const TwoForm& w, const VecField& x) {
    require_same_space(w.space(), x.space, "two-form application");
    OneForm out = OneForm::zero(w.space());
    const int n = w.dim();
    for (int i = 0; i < n; ++i) {
        Polynomial s = Polynomial::zero(w.space());
        for (int j = 0; j < n; ++j) s += w.entry(i, j) * x.comp[static_cast<std::size_t>(j)];
        out.comp[static_cast<std::size_t>(i)] = std::move(s);
    }
    return out;
}

// --- differential operators ---

OneForm differential(const Polynomial& f) {
    OneForm df = OneForm::zero(f.space());
    for (int i = 0; i < f.space()->dim(); ++i) df.comp[static_cast<std::size_t>(i)] = f.diff(i);
    return df;
}

VecField lie_bracket(const VecField& x, const VecField& y) {
    require_same_space(x.space, y.space, "Lie bracket");
    VecField out = VecField::zero(x.space);
    const std::size_t n = x.comp.size();
    for (std::size_t j = 0; j < n; ++j) {
        Polynomial s = Polynomial::zero(x.space);
        for (std::size_t i = 0; i < n; ++i) {
            s += x.comp[i] * y.comp[j].diff(static_cast<int>(i));
            s -= y.comp[i] * x.comp[j].diff(static_cast<int>(i));
        }
        out.comp[j] = std::move(s);
    }
    return out;
}

OneForm lie_derivative(const VecField& x, const OneForm& a) {
    require_same_space(x.space, a.space, "Lie derivative");
    OneForm out = OneForm::zero(x.space);
    const std::size_t n = x.comp.size();
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial s = Polynomial::zero(x.space);
        for (std::size_t j = 0; j < n; ++j) {
            s += x.comp[j] * a.comp[i].diff(static_cast<int>(j));
            s += a.comp[j] * x.comp[j].diff(static_cast<int>(i));
        }
        out.comp[i] = std::move(s);
    }
    return out;
}

OneOneTensor lie_derivative(const VecField& x, const OneOneTensor& n) {
    require_same_space(x.space, n.space, "Lie derivative");
    OneOneTensor out = OneOneTensor::zero(n.space);
    for (int j = 0; j < n.dim(); ++j) {
        VecField ej = VecField::basis(n.space, j);
        VecField col = lie_bracket(x, n.column(j)) - apply_oneone(n, lie_bracket(x, ej));
        for (std::size_t i = 0; i < col.comp.size(); ++i) out.m[i][static_cast<std::size_t>(j)] = col.comp[i];
    }
    return out;
}

ThreeForm d_twoform(const TwoForm& w) {
    const int n = w.dim();
    ThreeForm out{w.space(), {}};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Polynomial v = w.entry(j, k).diff(i) + w.entry(k, i).diff(j) + w.entry(i, j).diff(k);
                out.entries.push_back(std::move(v));
            }
    return out;
}

} // namespace coflat

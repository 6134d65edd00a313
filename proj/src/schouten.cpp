#include "coflat/schouten.hpp"

#include "coflat/errors.hpp"

#include <sstream>

namespace coflat {

std::size_t SchoutenTensor::count(int k) {
    return static_cast<std::size_t>(k) * (k - 1) * (k - 2) / 6;
}

std::size_t SchoutenTensor::index(int k, int a, int b, int c) {
    // lexicographic rank of (a,b,c), a<b<c, among all ascending triples
    std::size_t idx = 0;
    for (int i = 0; i < a; ++i) idx += static_cast<std::size_t>(k - 1 - i) * (k - 2 - i) / 2;
    for (int j = a + 1; j < b; ++j) idx += static_cast<std::size_t>(k - 1 - j);
    idx += static_cast<std::size_t>(c - b - 1);
    return idx;
}

const Polynomial& SchoutenTensor::entry(int a, int b, int c) const {
    return entries.at(index(k, a, b, c));
}

bool SchoutenTensor::is_zero() const {
    for (const auto& p : entries)
        if (!p.is_zero()) return false;
    return true;
}

std::optional<std::tuple<int, int, int, Polynomial>> SchoutenTensor::first_nonzero() const {
    std::size_t idx = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) {
                if (!entries[idx].is_zero()) return std::make_tuple(a, b, c, entries[idx]);
                ++idx;
            }
    return std::nullopt;
}

namespace {

std::vector<std::tuple<int, int, int>> ascending_triples(int k) {
    std::vector<std::tuple<int, int, int>> out;
    out.reserve(SchoutenTensor::count(k));
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) out.emplace_back(a, b, c);
    return out;
}

} // namespace

SchoutenTensor jacobiator(const PartialAnchor& p, ExecMode mode) {
    const int k = p.k();
    SchoutenTensor out{p.space(), k, {}};
    auto triples = ascending_triples(k);
    out.entries.assign(triples.size(), Polynomial::zero(p.space()));
    // L_{P theta_a} theta_b is reused across triples; precompute per (a,b)
    std::vector<OneForm> lie(static_cast<std::size_t>(k) * k, OneForm::zero(p.space()));
    for_each_index(static_cast<std::size_t>(k) * k, mode, [&](std::size_t ab) {
        int a = static_cast<int>(ab) / k, b = static_cast<int>(ab) % k;
        lie[ab] = lie_derivative(p.image(a), p.basis().covector(b));
    });
    auto at = [&](int a, int b) -> const OneForm& {
        return lie[static_cast<std::size_t>(a) * k + b];
    };
    for_each_index(triples.size(), mode, [&](std::size_t t) {
        auto [a, b, c] = triples[t];
        Polynomial e = pairing(at(a, b), p.image(c));
        e += pairing(at(b, c), p.image(a));
        e += pairing(at(c, a), p.image(b));
        out.entries[t] = std::move(e);
    });
    return out;
}

SchoutenTensor jacobiator_coordinate(const Bivector& p) {
    const int n = p.dim();
    SchoutenTensor out{p.space(), n, {}};
    auto triples = ascending_triples(n);
    out.entries.reserve(triples.size());
    for (auto [i, j, k] : triples) {
        Polynomial e = Polynomial::zero(p.space());
        for (int l = 0; l < n; ++l) {
            e += p.entry(i, l) * p.entry(j, k).diff(l);
            e += p.entry(j, l) * p.entry(k, i).diff(l);
            e += p.entry(k, l) * p.entry(i, j).diff(l);
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

Polynomial triple_bracket_cycle(const Polynomial& f1, const Polynomial& f2, const Polynomial& f3,
                                const PartialAnchor& p) {
    Polynomial s = partial_bracket(f1, partial_bracket(f2, f3, p), p);
    s += partial_bracket(f2, partial_bracket(f3, f1, p), p);
    s += partial_bracket(f3, partial_bracket(f1, f2, p), p);
    return s;
}

namespace {

std::string triple_witness(const SchoutenTensor& t) {
    auto fn = t.first_nonzero();
    if (!fn) return "";
    auto [a, b, c, poly] = *fn;
    std::ostringstream os;
    os << "entry(theta_" << (a + 1) << ", theta_" << (b + 1) << ", theta_" << (c + 1)
       << ") = " << poly.str();
    return os.str();
}

} // namespace

CheckResult check_jacobi(const PartialAnchor& p, ExecMode mode) {
    if (p.k() < 3) return check_pass("jacobi", "fewer than three covectors; trilinear form empty");
    SchoutenTensor t = jacobiator(p, mode);
    if (t.is_zero()) return check_pass("jacobi");
    return check_fail("jacobi", triple_witness(t));
}

CheckReport is_poisson(const PartialAnchor& p, ExecMode mode) {
    CheckReport report;
    CheckResult anti = check_partial_antisymmetry(p);
    report.add(anti);
    if (anti.status != Status::pass) return report;
    report.add(check_jacobi(p, mode));
    return report;
}

SchoutenTensor mixed_schouten(const PartialAnchor& p, const PartialAnchor& q, ExecMode mode) {
    SchoutenTensor jsum = jacobiator(p + q, mode);
    SchoutenTensor jp = jacobiator(p, mode);
    SchoutenTensor jq = jacobiator(q, mode);
    SchoutenTensor out{jsum.space, jsum.k, {}};
    out.entries.reserve(jsum.entries.size());
    Rational half(1, 2);
    for (std::size_t i = 0; i < jsum.entries.size(); ++i)
        out.entries.push_back((jsum.entries[i] - jp.entries[i] - jq.entries[i]).scaled(half));
    return out;
}

CheckReport check_compatibility(const PartialAnchor& p, const PartialAnchor& q, ExecMode mode) {
    CheckReport report;
    CheckReport pp = is_poisson(p, mode);
    CheckReport qq = is_poisson(q, mode);
    report.add(CheckResult{"first_anchor_poisson", pp.overall(),
                           pp.all_pass() ? "" : pp.checks.back().witness, ""});
    report.add(CheckResult{"second_anchor_poisson", qq.overall(),
                           qq.all_pass() ? "" : qq.checks.back().witness, ""});
    if (!report.all_pass()) return report;
    SchoutenTensor mixed = mixed_schouten(p, q, mode);
    if (mixed.is_zero()) {
        report.add(check_pass("compatibility"));
    } else {
        report.add(check_fail("compatibility", triple_witness(mixed)));
    }
    return report;
}

PartialAnchor adjoin_parameters(const PartialAnchor& p, const std::vector<std::string>& params) {
    const int n = p.space()->dim();
    VarSpacePtr ext = p.space()->extended(params);
    std::vector<int> var_map(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) var_map[static_cast<std::size_t>(i)] = i;
    QMatrix rows;
    for (const auto& row : p.basis().rows()) {
        QVector r = row;
        r.resize(static_cast<std::size_t>(ext->dim()), Rational(0));
        rows.push_back(std::move(r));
    }
    CoflatBasis basis(ext, std::move(rows));
    std::vector<VecField> images;
    images.reserve(static_cast<std::size_t>(p.k()));
    for (int a = 0; a < p.k(); ++a) {
        VecField x = VecField::zero(ext);
        for (int i = 0; i < n; ++i)
            x.comp[static_cast<std::size_t>(i)] = p.image(a).comp[static_cast<std::size_t>(i)].lifted(ext, var_map);
        images.push_back(std::move(x));
    }
    return PartialAnchor(std::move(basis), std::move(images));
}

CheckReport pencil_check(const PartialAnchor& p, const PartialAnchor& q, bool two_parameter,
                         ExecMode mode) {
    if (p.basis().rows() != q.basis().rows())
        throw StructureError("pencil requires both anchors on one coflat basis");
    CheckReport report;
    {
        PartialAnchor pe = adjoin_parameters(p, {"lam"});
        PartialAnchor qe = adjoin_parameters(q, {"lam"});
        Polynomial lam = Polynomial::variable(pe.space(), pe.space()->dim() - 1);
        PartialAnchor pencil = pe + qe.scaled_by(lam);
        CheckReport rep = is_poisson(pencil, mode);
        std::string witness;
        if (!rep.all_pass()) witness = rep.checks.back().witness;
        report.add(CheckResult{"pencil(P + lam*Q)", rep.overall(), witness, ""});
    }
    if (two_parameter) {
        PartialAnchor pe = adjoin_parameters(p, {"lam", "mu"});
        PartialAnchor qe = adjoin_parameters(q, {"lam", "mu"});
        Polynomial lam = Polynomial::variable(pe.space(), pe.space()->dim() - 2);
        Polynomial mu = Polynomial::variable(pe.space(), pe.space()->dim() - 1);
        PartialAnchor pencil = pe.scaled_by(lam) + qe.scaled_by(mu);
        CheckReport rep = is_poisson(pencil, mode);
        std::string witness;
        if (!rep.all_pass()) witness = rep.checks.back().witness;
        report.add(CheckResult{"pencil(lam*P + mu*Q)", rep.overall(), witness, ""});
    }
    return report;
}

} // namespace coflat

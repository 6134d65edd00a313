#include "doctest.h"

#include "coflat/errors.hpp"
#include "coflat/fields.hpp"
#include "test_util.hpp"

using namespace coflat;
using testutil::PolyGen;

namespace {
Polynomial P(const VarSpacePtr& s, const std::string& text) { return Polynomial::parse(s, text); }
} // namespace

TEST_CASE("constant coordinate fields commute") {
    auto s = VarSpace::numbered("x", 3);
    CHECK(lie_bracket(VecField::basis(s, 0), VecField::basis(s, 1)).is_zero());
}

TEST_CASE("bracket of x1*d2 with d1 is minus d2") {
    auto s = VarSpace::numbered("x", 2);
    VecField x = VecField::basis(s, 1).scaled_by(P(s, "x1"));
    VecField y = VecField::basis(s, 0);
    VecField b = lie_bracket(x, y);
    CHECK(b.comp[0].is_zero());
    CHECK(b.comp[1] == P(s, "-1"));
}

TEST_CASE("lie bracket is antisymmetric and satisfies Jacobi") {
    auto s = VarSpace::numbered("x", 3);
    PolyGen gen(211);
    for (int trial = 0; trial < 6; ++trial) {
        VecField x = gen.field(s, 2);
        VecField y = gen.field(s, 2);
        VecField z = gen.field(s, 2);
        CHECK(lie_bracket(x, x).is_zero());
        CHECK((lie_bracket(x, y) + lie_bracket(y, x)).is_zero());
        VecField jac = lie_bracket(lie_bracket(x, y), z) + lie_bracket(lie_bracket(y, z), x) +
                       lie_bracket(lie_bracket(z, x), y);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("lie derivative of a one-form matches its defining identity") {
    auto s = VarSpace::numbered("x", 3);
    // Constant field on a constant form gives zero.
    CHECK(lie_derivative(VecField::basis(s, 0), OneForm::basis(s, 1)).is_zero());

    // L_{x2 d1}(dx1) = dx2 by the component formula.
    VecField x = VecField::basis(s, 0).scaled_by(P(s, "x2"));
    OneForm lx = lie_derivative(x, OneForm::basis(s, 0));
    CHECK(lx.comp[0].is_zero());
    CHECK(lx.comp[1] == P(s, "1"));
    CHECK(lx.comp[2].is_zero());

    // (L_X a)(Y) = X(a(Y)) - a([X,Y]) for random Y.
    PolyGen gen(212);
    OneForm a = gen.oneform(s, 2);
    VecField xf = gen.field(s, 2);
    for (int trial = 0; trial < 3; ++trial) {
        VecField y = gen.field(s, 2);
        Polynomial lhs = pairing(lie_derivative(xf, a), y);
        Polynomial ay = pairing(a, y);
        Polynomial x_of_ay = Polynomial::zero(s);
        for (int i = 0; i < 3; ++i) x_of_ay += xf.comp[static_cast<std::size_t>(i)] * ay.diff(i);
        Polynomial rhs = x_of_ay - pairing(a, lie_bracket(xf, y));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("lie derivative of one-forms obeys the Leibniz rule") {
    auto s = VarSpace::numbered("x", 3);
    PolyGen gen(213);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial f = gen.poly(s, 2);
        VecField x = gen.field(s, 2);
        OneForm a = gen.oneform(s, 2);
        Polynomial xf = Polynomial::zero(s);
        for (int i = 0; i < 3; ++i) xf += x.comp[static_cast<std::size_t>(i)] * f.diff(i);
        OneForm lhs = lie_derivative(x, a.scaled_by(f));
        OneForm rhs = a.scaled_by(xf) + lie_derivative(x, a).scaled_by(f);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("lie derivative of (1,1) tensors follows its action identity") {
    auto s = VarSpace::numbered("x", 2);
    PolyGen gen(214);

    // The identity tensor is invariant under any flow.
    for (int trial = 0; trial < 4; ++trial)
        CHECK(lie_derivative(gen.field(s, 2), OneOneTensor::identity(s)).is_zero());

    // Constant tensors are invariant under constant flows.
    OneOneTensor n = OneOneTensor::zero(s);
    n.m[0][1] = P(s, "3");
    n.m[1][0] = P(s, "-2");
    CHECK(lie_derivative(VecField::basis(s, 0), n).is_zero());

    // L_{x1 d1} diag(x1, x2): check (L_X N)(Y) = [X, NY] - N[X, Y] on random Y.
    VecField x = VecField::basis(s, 0).scaled_by(P(s, "x1"));
    OneOneTensor diag = OneOneTensor::zero(s);
    diag.m[0][0] = P(s, "x1");
    diag.m[1][1] = P(s, "x2");
    OneOneTensor lt = lie_derivative(x, diag);
    for (int trial = 0; trial < 4; ++trial) {
        VecField y = gen.field(s, 2);
        VecField lhs = apply_oneone(lt, y);
        VecField rhs = lie_bracket(x, apply_oneone(diag, y)) - apply_oneone(diag, lie_bracket(x, y));
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("duality pairing expands component sums") {
    auto s = VarSpace::numbered("x", 2);
    CHECK(pairing(OneForm::basis(s, 0), VecField::basis(s, 0)) == P(s, "1"));
    CHECK(pairing(OneForm::basis(s, 0), VecField::basis(s, 1).scaled_by(P(s, "x2"))).is_zero());

    OneForm a = OneForm::basis(s, 0).scaled_by(P(s, "x1")) + OneForm::basis(s, 1);
    VecField x = VecField::basis(s, 0) + VecField::basis(s, 1).scaled_by(P(s, "x1"));
    CHECK(pairing(a, x) == P(s, "2*x1"));
}

TEST_CASE("exterior derivative of two-forms is the coordinate formula") {
    auto s = VarSpace::numbered("x", 3);
    // Constant forms are closed.
    TwoForm constant = TwoForm::from_upper(s, {{0, 1, P(s, "5")}, {1, 2, P(s, "-2")}});
    CHECK(d_twoform(constant).is_zero());

    // x3 dx1^dx2 has (dOmega)_{123} = 1.
    TwoForm w = TwoForm::from_upper(s, {{0, 1, P(s, "x3")}});
    ThreeForm dw = d_twoform(w);
    CHECK_FALSE(dw.is_zero());
    auto fn = dw.first_nonzero();
    REQUIRE(fn.has_value());
    auto [i, j, k, val] = *fn;
    CHECK(i == 0);
    CHECK(j == 1);
    CHECK(k == 2);
    CHECK(val == P(s, "1"));
}

TEST_CASE("d squared vanishes on differentials of one-forms") {
    auto s = VarSpace::numbered("x", 3);
    PolyGen gen(215);
    for (int trial = 0; trial < 10; ++trial) {
        OneForm a = gen.oneform(s, 3);
        // (da)_{ij} = d_i a_j - d_j a_i is exact, hence closed.
        std::vector<std::vector<Polynomial>> da(3, std::vector<Polynomial>(3, Polynomial::zero(s)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                da[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    a.comp[static_cast<std::size_t>(j)].diff(i) - a.comp[static_cast<std::size_t>(i)].diff(j);
        CHECK(d_twoform(TwoForm(s, da)).is_zero());
    }
}

TEST_CASE("bivector construction enforces exact antisymmetry") {
    auto s = VarSpace::numbered("x", 2);
    CHECK_NOTHROW(Bivector::from_upper(s, {{0, 1, P(s, "x1")}}));
    std::vector<std::vector<Polynomial>> bad = {{P(s, "0"), P(s, "x1")}, {P(s, "x1"), P(s, "0")}};
    CHECK_THROWS_AS(Bivector(s, bad), StructureError);
    std::vector<std::vector<Polynomial>> diag = {{P(s, "1"), P(s, "0")}, {P(s, "0"), P(s, "0")}};
    CHECK_THROWS_AS(Bivector(s, diag), StructureError);
}

TEST_CASE("two-form construction enforces exact antisymmetry") {
    auto s = VarSpace::numbered("x", 2);
    std::vector<std::vector<Polynomial>> bad = {{P(s, "0"), P(s, "x1")}, {P(s, "x2"), P(s, "0")}};
    CHECK_THROWS_AS(TwoForm(s, bad), StructureError);
}

TEST_CASE("canonical bivector maps dx1 to d2") {
    auto s = VarSpace::numbered("x", 2);
    Bivector p = Bivector::from_upper(s, {{0, 1, P(s, "1")}});
    VecField v = apply_bivector(p, OneForm::basis(s, 0));
    CHECK(v.comp[0].is_zero());
    CHECK(v.comp[1] == P(s, "1"));

    // Cross-check through the bracket convention {x1, x2} = sum P^{ij} d_i x1 d_j x2 = P^{12}.
    Polynomial bracket = pairing(differential(P(s, "x2")), apply_bivector(p, differential(P(s, "x1"))));
    CHECK(bracket == P(s, "1"));
}

TEST_CASE("bivector application is antisymmetric in its arguments") {
    auto s = VarSpace::numbered("x", 3);
    PolyGen gen(216);
    Bivector p = Bivector::from_upper(
        s, {{0, 1, gen.poly(s, 2)}, {0, 2, gen.poly(s, 2)}, {1, 2, gen.poly(s, 2)}});
    for (int trial = 0; trial < 5; ++trial) {
        OneForm a = gen.oneform(s, 2);
        OneForm b = gen.oneform(s, 2);
        CHECK(pairing(a, apply_bivector(p, b)) == -pairing(b, apply_bivector(p, a)));
    }
}

TEST_CASE("tensor applications follow the fixed index conventions") {
    auto s = VarSpace::numbered("x", 2);
    PolyGen gen(217);
    VecField x = gen.field(s, 2);
    CHECK((apply_oneone(OneOneTensor::identity(s), x) - x).is_zero());

    OneOneTensor n = OneOneTensor::zero(s);
    n.m[0][1] = P(s, "x1");
    // N d2 = x1 d1, so column(1) is x1 d1.
    VecField col = n.column(1);
    CHECK(col.comp[0] == P(s, "x1"));
    CHECK(col.comp[1].is_zero());
    // Transpose application: (N^t dx1)_2 = N^1_2 = x1.
    OneForm nt = apply_oneone_transpose(n, OneForm::basis(s, 0));
    CHECK(nt.comp[0].is_zero());
    CHECK(nt.comp[1] == P(s, "x1"));

    // <N^t a, X> = <a, N X> for random inputs.
    OneForm a = gen.oneform(s, 2);
    VecField y = gen.field(s, 2);
    CHECK(pairing(apply_oneone_transpose(n, a), y) == pairing(a, apply_oneone(n, y)));

    TwoForm w = TwoForm::from_upper(s, {{0, 1, P(s, "x2")}});
    OneForm wx = apply_twoform(w, VecField::basis(s, 1));
    CHECK(wx.comp[0] == P(s, "x2"));
    CHECK(wx.comp[1].is_zero());
}

TEST_CASE("space mismatches are rejected") {
    auto s = VarSpace::numbered("x", 2);
    auto t = VarSpace::numbered("y", 2);
    CHECK_THROWS_AS(lie_bracket(VecField::basis(s, 0), VecField::basis(t, 0)), DimensionError);
    CHECK_THROWS_AS(pairing(OneForm::basis(s, 0), VecField::basis(t, 0)), DimensionError);
    CHECK_THROWS_AS(lie_derivative(VecField::basis(s, 0), OneForm::basis(t, 0)), DimensionError);
}

TEST_CASE("differential collects partial derivatives") {
    auto s = VarSpace::numbered("x", 3);
    OneForm df = differential(P(s, "x1^2*x3 + x2"));
    CHECK(df.comp[0] == P(s, "2*x1*x3"));
    CHECK(df.comp[1] == P(s, "1"));
    CHECK(df.comp[2] == P(s, "x1^2"));
}

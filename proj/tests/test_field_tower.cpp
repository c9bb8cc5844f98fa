#include <gtest/gtest.h>

#include <random>

#include "models.hpp"
#include "qhwb/novikov.hpp"

using namespace qhwb;

namespace {

RatPoly rp(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c)
        v.emplace_back(x);
    return RatPoly(std::move(v));
}

NumberField zeta3() { return NumberField::make(rp({1, 1, 1})); }

NovikovScalar T(long p = 1, long q = 1) { return NovikovScalar::T(make_rational(p, q)); }

Errc code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::AssertionFailed;
}

} // namespace

TEST(NumberFieldMake, LinearModulusIsRationals)
{
    auto K = NumberField::make(rp({-1, 1}));
    EXPECT_EQ(K.degree(), 1);
    // t == 1 in Q[t]/(t - 1)
    EXPECT_EQ(FieldElem::generator(K), FieldElem(K, rp({1})));
}

TEST(NumberFieldMake, CyclotomicThree)
{
    auto m = rp({1, 1, 1});
    // discriminant b^2 - 4ac = -3 is nonzero, so m is squarefree
    Rational disc = m.coeff(1) * m.coeff(1) - 4 * m.coeff(0) * m.coeff(2);
    EXPECT_NE(disc, 0);
    auto K = NumberField::make(m);
    EXPECT_EQ(K.degree(), 2);
    EXPECT_FALSE(K.is_rationals());
}

TEST(NumberFieldMake, Rejections)
{
    EXPECT_EQ(code_of([] { NumberField::make(rp({1, -2, 1})); }), Errc::NotSquarefree);
    EXPECT_EQ(code_of([] { NumberField::make(rp({1, 2})); }), Errc::InvalidArgument);
    EXPECT_EQ(code_of([] { NumberField::make(rp({3})); }), Errc::InvalidArgument);
    EXPECT_EQ(code_of([] { NumberField::make(rp({1, 0, 0, 0, 0, 0, 0, 0, 0, 1})); }), Errc::LimitExceeded);
}

TEST(NumberFieldArith, ZetaThree)
{
    auto K = zeta3();
    auto t = FieldElem::generator(K);
    EXPECT_EQ(t * t, FieldElem(K, rp({-1, -1})));
    EXPECT_EQ(t.inverse(), FieldElem(K, rp({-1, -1})));
    EXPECT_EQ(t * t.inverse(), FieldElem(1));
    EXPECT_EQ(FieldElem(1).inverse(), FieldElem(1));
    EXPECT_EQ(t * t * t, FieldElem(1));
    EXPECT_EQ(to_string(t * t), "-1 - t");
}

TEST(NumberFieldArith, Errors)
{
    EXPECT_EQ(code_of([] { FieldElem(0).inverse(); }), Errc::DivisionByZero);
    // reducible modulus t^2 - 1: t - 1 is a zero divisor
    auto R = NumberField::make(rp({-1, 0, 1}));
    EXPECT_EQ(code_of([&] { FieldElem(R, rp({-1, 1})).inverse(); }), Errc::NotInvertible);
    auto Q2 = NumberField::make(rp({-2, 0, 1}));
    EXPECT_EQ(code_of([&] { (void)(FieldElem::generator(zeta3()) + FieldElem::generator(Q2)); }),
              Errc::FieldMismatch);
}

TEST(NumberFieldArith, InverseIsTwoSided)
{
    auto K = NumberField::make(rp({-2, 0, 0, 1})); // t^3 - 2, irreducible
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int i = 0; i < 50; ++i) {
        FieldElem x(K, rp({c(rng), c(rng), c(rng)}));
        if (x.is_zero())
            continue;
        EXPECT_EQ(x * x.inverse(), FieldElem(1));
        EXPECT_EQ(x.inverse() * x, FieldElem(1));
    }
}

TEST(NovikovArith, Examples)
{
    auto one = NovikovScalar(1);
    EXPECT_EQ((one - T() * T()) / (one - T()), one + T());
    EXPECT_EQ(T(1, 2) * T(1, 2), T());
    EXPECT_EQ(T() + NovikovScalar(), T());
    EXPECT_EQ(code_of([&] { (void)(T() / NovikovScalar()); }), Errc::DivisionByZero);
}

TEST(NovikovArith, Canonical)
{
    // s^2 / s^4 with N = 4 is T^{-1/2}: ramification drops to 2
    auto x = NovikovScalar::from_parts(4, KPoly{FieldElem(0), FieldElem(0), FieldElem(3)},
                                       KPoly{FieldElem(0), FieldElem(0), FieldElem(0), FieldElem(0), FieldElem(2)});
    EXPECT_EQ(x.ramification(), 2);
    EXPECT_EQ(x, NovikovScalar::monomial(FieldElem(make_rational(3, 2)), make_rational(-1, 2)));
    EXPECT_TRUE(x.denominator().is_monic());
    EXPECT_EQ(NovikovScalar().denominator(), KPoly{FieldElem(1)});
}

TEST(NovikovValuation, Examples)
{
    EXPECT_EQ(*(T(1, 2) + T()).valuation(), make_rational(1, 2));
    EXPECT_EQ(*NovikovScalar(1).valuation(), 0);
    EXPECT_EQ(*(T(-1) * (NovikovScalar(1) + T(3))).valuation(), -1);
    EXPECT_FALSE(NovikovScalar().valuation().has_value());
    EXPECT_EQ(*(NovikovScalar(1) / (T(2) - T(5))).valuation(), -2);
}

TEST(NovikovValuation, LaurentCoefficients)
{
    // 1/(1 - T) = 1 + T + T^2 + ...
    auto g = NovikovScalar(1) / (NovikovScalar(1) - T());
    for (long k = 0; k < 5; ++k)
        EXPECT_EQ(g.coefficient(Rational(k)), FieldElem(1));
    EXPECT_EQ(g.coefficient(Rational(-1)), FieldElem(0));
    EXPECT_EQ(g.coefficient(make_rational(1, 2)), FieldElem(0));
    auto h = T(-1) * (NovikovScalar(2) + T(1, 2));
    EXPECT_EQ(h.coefficient(Rational(-1)), FieldElem(2));
    EXPECT_EQ(h.coefficient(make_rational(-1, 2)), FieldElem(1));
    EXPECT_EQ(h.coefficient(Rational(0)), FieldElem(0));
}

TEST(NovikovSqrt, Examples)
{
    EXPECT_EQ(sqrt(T(2)), T());
    auto r = sqrt(NovikovScalar(4) * T());
    EXPECT_EQ(r, NovikovScalar(2) * T(1, 2));
    EXPECT_EQ(r.ramification(), 2);
    EXPECT_EQ(r * r, NovikovScalar(4) * T());
    EXPECT_EQ(code_of([] { sqrt(T() + T(2)); }), Errc::NotMonomial);
    EXPECT_EQ(code_of([] { sqrt(NovikovScalar(1) / (NovikovScalar(1) - T())); }), Errc::NotMonomial);
}

TEST(NovikovSqrt, FieldExtensionNeeded)
{
    try {
        sqrt(NovikovScalar(-3) * T());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::RequiresFieldExtension);
        EXPECT_EQ(e.witness(), "-3");
    }
    // over Q(zeta3), -3 = (1 + 2t)^2
    auto K = zeta3();
    auto y = sqrt(NovikovScalar(FieldElem(K, rp({-3}))) * T());
    EXPECT_EQ(y * y, NovikovScalar(-3) * T());
    EXPECT_GT(y.leading_coefficient().leading_sign(), 0);
    EXPECT_EQ(y.leading_coefficient(), FieldElem(K, rp({1, 2})));
}

TEST(NovikovSqrt, CanonicalBranch)
{
    EXPECT_EQ(sqrt(NovikovScalar(9) * T(-2)), NovikovScalar(3) * T(-1));
    EXPECT_EQ(sqrt(NovikovScalar(make_rational(1, 4))), NovikovScalar(make_rational(1, 2)));
    auto K = NumberField::make(rp({-2, 0, 1}));
    auto two = NovikovScalar(FieldElem(K, rp({2})));
    auto y = sqrt(two);
    EXPECT_EQ(y * y, two);
    EXPECT_EQ(y.constant_value(), FieldElem::generator(K));
}

TEST(NovikovRender, Forms)
{
    EXPECT_EQ(to_string(T()), "T");
    EXPECT_EQ(to_string(T(1, 2) + T()), "T^{1/2} + T");
    EXPECT_EQ(to_string(NovikovScalar(make_rational(-1, 4)) * T(-2)), "-1/4*T^{-2}");
    EXPECT_EQ(to_string(NovikovScalar(1) / (NovikovScalar(1) - T())), "1/(1 - T)");
    EXPECT_EQ(to_string(NovikovScalar()), "0");
    auto K = zeta3();
    EXPECT_EQ(to_string(NovikovScalar(FieldElem(K, rp({1, 1}))) * T()), "(1 + t)*T");
    EXPECT_EQ(to_string(NovikovScalar(2) - T()), "2 - T");
}

TEST(NovikovProperties, ValuationAdditiveAndUltrametric)
{
    std::mt19937 rng(20240501);
    for (int i = 0; i < 200; ++i) {
        auto x = fx::random_scalar(rng, true);
        auto y = fx::random_scalar(rng, true);
        auto vx = *x.valuation(), vy = *y.valuation();
        EXPECT_EQ(*(x * y).valuation(), vx + vy);
        auto s = x + y;
        if (s.is_zero())
            continue;
        EXPECT_GE(*s.valuation(), std::min(vx, vy));
        if (vx != vy) {
            EXPECT_EQ(*s.valuation(), std::min(vx, vy));
        }
    }
}

TEST(NovikovProperties, DivisionUndoesMultiplication)
{
    std::mt19937 rng(99);
    for (int i = 0; i < 200; ++i) {
        auto a = fx::random_scalar(rng, false);
        auto b = fx::random_scalar(rng, true);
        EXPECT_EQ((a * b) / b, a);
        EXPECT_EQ((a + b) - b, a);
    }
}

TEST(NovikovProperties, CanonicalizationIdempotent)
{
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto a = fx::random_scalar(rng, false);
        auto again = NovikovScalar::from_parts(a.ramification(), a.numerator(), a.denominator());
        EXPECT_EQ(again, a);
        EXPECT_TRUE(a.denominator().is_monic());
        // refining N and renormalizing lands on the same value
        auto refined = NovikovScalar::from_parts(a.ramification() * 3, a.numerator().inflate(3),
                                                 a.denominator().inflate(3));
        EXPECT_EQ(refined, a);
    }
}

TEST(NovikovProperties, SqrtSquares)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(1, 6), e(-6, 6), q(1, 3);
    for (int i = 0; i < 100; ++i) {
        Rational u(c(rng) * c(rng));
        u *= u;
        u /= c(rng);
        auto x = NovikovScalar::monomial(FieldElem(u * u), make_rational(e(rng), q(rng)));
        auto y = sqrt(x);
        EXPECT_EQ(y * y, x);
    }
}

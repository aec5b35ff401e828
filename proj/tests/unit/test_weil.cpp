#include "doctest.h"

#include "qmsieve/criteria/weil.hpp"

#include <set>

using namespace qms;

namespace {

FieldPtr multi(std::vector<long> g)
{
    std::vector<Int> v(g.begin(), g.end());
    return NumberField::build(FieldSpec::multiquadratic(v));
}

FieldPtr rationals() { return NumberField::build(FieldSpec::rationals()); }

FieldPtr zeta7_plus() { return NumberField::build(FieldSpec::totally_real_poly(IntPolynomial({-1, -2, 1, 1}))); }

std::set<Int> under(std::vector<PrimeIdeal> const& ps)
{
    std::set<Int> out;
    for (auto const& P : ps)
        out.insert(P.p);
    return out;
}

} // namespace

TEST_CASE("real cyclotomic polynomials")
{
    CHECK(real_cyclotomic(1) == IntPolynomial({-2, 1}));
    CHECK(real_cyclotomic(2) == IntPolynomial({2, 1}));
    CHECK(real_cyclotomic(3) == IntPolynomial({1, 1}));
    CHECK(real_cyclotomic(4) == IntPolynomial({0, 1}));
    CHECK(real_cyclotomic(8) == IntPolynomial({-2, 0, 1}));
    CHECK(real_cyclotomic(5) == IntPolynomial({-1, 1, 1}));
    CHECK(real_cyclotomic(7) == IntPolynomial({-1, -2, 1, 1}));
    for (unsigned long m = 3; m < 40; ++m)
        CHECK(static_cast<unsigned long>(real_cyclotomic(m).degree()) == euler_phi(m) / 2);
}

TEST_CASE("n_lcm of small fields")
{
    CHECK(n_lcm(*rationals()) == 12);
    CHECK(n_lcm(*multi({2})) == 24);
    CHECK(n_lcm(*multi({3})) == 12);
    CHECK(n_lcm(*multi({5})) == 60);
    CHECK(n_lcm(*zeta7_plus()) == 84);
    CHECK_THROWS_AS(n_lcm(*multi({-1})), InvalidInput);
}

TEST_CASE("FR set, W, V and torsion bound over Q at l = 2")
{
    auto Q = rationals();
    auto S = fr_set(Q, Int(2), 1);
    REQUIRE(S.classes.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(S.classes[i].b.as_rational() == Rat(long(i) - 2));
        CHECK(S.classes[i].disc_status == WeilClass::Disc::TotallyNegative);
        CHECK(S.classes[i].contribution.as_rational() == Rat(long(i) + 1));
    }
    CHECK(under(w_set(Q, Int(2), 1)) == std::set<Int>{2, 3, 5});
    CHECK(under(v_set(Q, Int(2), 1)) == std::set<Int>{2, 3, 5});
    CHECK(torsion_bound(Q, Int(2), 1) == 28800);
}

TEST_CASE("FR set with a rational root")
{
    auto S = fr_set(rationals(), Int(2), 2);
    std::size_t zeros = 0;
    for (auto const& w : S.classes)
        if (w.disc_status == WeilClass::Disc::Zero) {
            ++zeros;
            Rat b = w.b.as_rational();
            CHECK(w.contribution.as_rational() == (2 + b) / 2);
        }
    CHECK(zeros == 2);
    CHECK(S.classes.size() == 9);
}

TEST_CASE("property: FR set matches brute force over a coordinate box")
{
    for (FieldPtr F : {multi({2}), multi({5}), zeta7_plus()}) {
        for (long q : {2L, 3L, 7L}) {
            auto S = fr_set(F, Int(q), 1);
            std::set<FieldElement> got;
            for (auto const& w : S.classes) {
                got.insert(w.b);
                CHECK(w.disc_status != WeilClass::Disc::MixedNonpositive);
            }
            std::set<FieldElement> want;
            std::size_t n = F->degree();
            long R = 12;
            std::vector<long> c(n, -R);
            for (;;) {
                FieldElement b = F->from_coords(c);
                if (is_totally_nonneg(F->from_int(4 * q) - b * b))
                    want.insert(b);
                std::size_t i = 0;
                for (; i < n; ++i) {
                    if (++c[i] <= R)
                        break;
                    c[i] = -R;
                }
                if (i == n)
                    break;
            }
            INFO(F->name() << " q = " << q);
            CHECK(got == want);
        }
    }
}

TEST_CASE("W set of a real quadratic field contains ramified primes")
{
    auto F = multi({5});
    auto W = under(w_set(F, Int(3), 1));
    CHECK(W.count(5) == 1);
    CHECK(W.count(3) == 1);
    auto V = under(v_set(F, Int(3), 1));
    for (auto const& p : W)
        CHECK(V.count(p) == 1);
    CHECK(V.count(2) == 1); // N(2) = 4 < 16
}

TEST_CASE("FR elements inside a CM extension")
{
    auto Q = rationals();
    auto k7 = multi({-7});
    auto w = fr_elements_in_k(Q, *k7, Int(2));
    REQUIRE(w.has_value());
    Rat b = w->b.as_rational();
    CHECK((b == 1 || b == -1));
    CHECK(!fr_elements_in_k(Q, *multi({-5}), Int(3)).has_value());

    auto F = multi({2});
    auto k = multi({2, -17});
    CHECK(!fr_elements_in_k(F, *k, Int(7)).has_value());
    // 1 + sqrt(-2) has norm 3 and lies in Q(sqrt 2, sqrt -1)
    CHECK(fr_elements_in_k(F, *multi({2, -1}), Int(3)).has_value());
}

TEST_CASE("FR elements: degree-six CM field")
{
    auto F = zeta7_plus();
    auto k = NumberField::build(FieldSpec::relative_quadratic(FieldSpec::totally_real_poly(IntPolynomial({-1, -2, 1, 1})),
                                                              {Int(-17), Int(0), Int(0)}));
    CHECK(!fr_elements_in_k(F, *k, Int(13)).has_value());
}

TEST_CASE("embedding into an extension")
{
    auto F = multi({2});
    auto k = multi({2, -17});
    FieldElement x = F->from_coords({1, 1});
    FieldElement y = embed(*F, *k, x);
    CHECK(norm(y) == norm(x) * norm(x));
    CHECK(embed(*rationals(), *k, rationals()->from_int(3)) == k->from_int(3));
    CHECK_THROWS_AS(embed(*multi({3}), *k, multi({3})->one()), InvalidInput);
}

#include "doctest.h"

#include "qmsieve/classgroup/class_group.hpp"

#include <random>

using namespace qms;

namespace {

FieldPtr multi(std::vector<long> g)
{
    std::vector<Int> v(g.begin(), g.end());
    return NumberField::build(FieldSpec::multiquadratic(v));
}

IntVector ints(std::initializer_list<long> xs) { return IntVector(xs.begin(), xs.end()); }

} // namespace

TEST_CASE("reduced forms and small class numbers")
{
    CHECK(bqf_class_group(Int(-4)).h == 1);
    CHECK(bqf_class_group(Int(-3)).h == 1);
    CHECK(bqf_class_group(Int(-20)).invariants == ints({2}));
    CHECK(bqf_class_group(Int(-23)).invariants == ints({3}));
    CHECK(bqf_class_group(Int(-68)).invariants == ints({4}));
    CHECK(bqf_class_group(Int(-136)).h == 4);
    CHECK(bqf_class_group(Int(-84)).invariants == ints({2, 2}));
    CHECK(bqf_class_group(Int(-3299)).invariants == ints({3, 9}));
    CHECK_THROWS_AS(bqf_class_group(Int(-12)), InvalidInput);
    CHECK_THROWS_AS(bqf_class_group(Int(5)), InvalidInput);
    for (auto const& f : reduced_forms(Int(-3299)))
        CHECK(is_reduced(f));
}

TEST_CASE("property: form composition is a group law")
{
    std::mt19937_64 rng(3);
    for (long d : {-3299L, -4027L, -420L, -5291L}) {
        Int D(d);
        if (!is_fundamental_discriminant(D))
            continue;
        auto forms = reduced_forms(D);
        Form e = identity_form(D);
        std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
        for (int t = 0; t < 40; ++t) {
            Form a = forms[pick(rng)], b = forms[pick(rng)], c = forms[pick(rng)];
            Form ab = compose(a, b);
            CHECK(is_reduced(ab));
            CHECK(ab.discriminant() == D);
            CHECK(ab == compose(b, a));
            CHECK(compose(ab, c) == compose(a, compose(b, c)));
            CHECK(compose(a, e) == a);
            CHECK(compose(a, inverse(a)) == e);
        }
    }
}

TEST_CASE("prime forms detect principal primes")
{
    Int D(-20);
    CHECK(prime_form(D, Int(7)).has_value());
    CHECK(!(*prime_form(D, Int(7)) == identity_form(D))); // 7 != a^2 + 5 b^2
    CHECK(*prime_form(D, Int(29)) == identity_form(D));   // 29 = 3^2 + 5 * 2^2
    CHECK(!prime_form(D, Int(11)).has_value());
}

TEST_CASE("class groups of number fields")
{
    auto K = multi({2});
    CHECK(class_group(K).h == 1);
    auto k5 = multi({-5});
    auto cg5 = class_group(k5);
    CHECK(cg5.h == 2);
    CHECK(cg5.invariants == ints({2}));
    auto k = multi({2, -17});
    auto cg = class_group(k);
    CHECK(cg.h == 8);
    Int prod = 1;
    for (auto const& d : cg.invariants)
        prod *= d;
    CHECK(prod == 8);
    // generators have the advertised orders
    for (std::size_t i = 0; i < cg.invariants.size(); ++i) {
        IntVector v = ideal_class_dlog(cg, cg.generator_ideal(i));
        for (std::size_t t = 0; t < v.size(); ++t)
            CHECK(v[t] == (t == i ? 1 : 0));
    }
}

TEST_CASE("property: class groups agree with binary quadratic forms")
{
    for (long D = -199; D < 0; ++D) {
        if (!is_fundamental_discriminant(Int(D)))
            continue;
        Int m = D % 4 == 0 ? Int(D / 4) : Int(D);
        auto K = NumberField::build(FieldSpec::multiquadratic({m}));
        auto cg = class_group(K);
        auto bq = bqf_class_group(Int(D));
        INFO("D = " << D);
        CHECK(cg.h == bq.h);
        CHECK(cg.invariants == bq.invariants);
    }
}

TEST_CASE("discrete logarithms and principal generators")
{
    auto k = multi({-5});
    auto cg = class_group(k);
    auto P7 = decompose_prime(*k, 7);
    REQUIRE(P7.size() == 2);
    CHECK(ideal_class_dlog(cg, Ideal::principal(k->from_int(3))) == ints({0}));
    CHECK(ideal_class_dlog(cg, P7[0].ideal) == ints({1}));
    CHECK(ideal_class_dlog(cg, P7[0].ideal.pow(2)) == ints({0}));
    for (auto const& P : P7) {
        FieldElement a = certify_dlog(cg, P.ideal, ideal_class_dlog(cg, P.ideal));
        CHECK(abs(norm(a)) > 0);
        FieldElement g = principal_generator(P.ideal.pow(2));
        CHECK(norm(g) == 49);
        CHECK(Ideal::principal(g) == P.ideal.pow(2));
        CHECK(abs(g[0]) == 2);
        CHECK(abs(g[1]) == 3);
    }
    auto Q = NumberField::build(FieldSpec::rationals());
    CHECK(principal_generator(Ideal::principal(Q->from_int(6))) == Q->from_int(6));
    CHECK(principal_generator(Ideal::unit(*k)) == k->one());
    FieldElement half = Rat(1, 2) * k->one();
    CHECK(Ideal::principal(principal_generator(Ideal::principal(half))) == Ideal::principal(half));
}

TEST_CASE("class group data round-trips through JSON")
{
    auto k = multi({2, -17});
    auto cg = class_group(k);
    auto back = ClassGroupData::from_json(k, cg.to_json());
    CHECK(back.h == cg.h);
    CHECK(back.to_json() == cg.to_json());
}

TEST_CASE("class group is independent of the worker count")
{
    auto k = multi({2, -17});
    ClassGroupOptions o1, o4;
    o4.workers = 4;
    CHECK(class_group(k, o1).to_json() == class_group(k, o4).to_json());
}

TEST_CASE("Hilbert class field containment ladder")
{
    auto v1 = hilbert_containment(*multi({2, -17}), Int(-17));
    CHECK(v1.kind == HcfVerdict::Kind::NotContains);
    CHECK(v1.class_number == 4);
    CHECK(hilbert_containment(*multi({-7}), Int(-7)).kind == HcfVerdict::Kind::Contains);
    auto v3 = hilbert_containment(*multi({-5, -1}), Int(-5));
    CHECK(v3.kind == HcfVerdict::Kind::Contains);
    CHECK(v3.genus_generators == ints({5, -4}));
    CHECK(hilbert_containment(*multi({-5}), Int(-5)).kind == HcfVerdict::Kind::NotContains);
    // h(-23) = 3 divides [k:M] = 3 only in a sextic; here the degree bars it
    CHECK(hilbert_containment(*multi({-23, 2}), Int(-23)).kind == HcfVerdict::Kind::NotContains);
}

TEST_CASE("condition two")
{
    auto c1 = condition2_check(*multi({2, -17}));
    CHECK(c1.verdict == Condition2Result::Verdict::Pass);
    REQUIRE(c1.subfields.size() == 2);
    CHECK(c1.subfields[0].subfield == -34);
    CHECK(c1.subfields[1].subfield == -17);
    CHECK(condition2_check(*multi({-7})).verdict == Condition2Result::Verdict::Fail);
    CHECK(condition2_check(*multi({-5})).verdict == Condition2Result::Verdict::Pass);
    CHECK(condition2_check(*multi({2})).verdict == Condition2Result::Verdict::Pass);
}

#include "doctest.h"

#include "qmsieve/exact/factor.hpp"
#include "qmsieve/exact/int_poly.hpp"
#include "qmsieve/exact/lattice.hpp"
#include "qmsieve/exact/modp.hpp"
#include "qmsieve/exact/normal_form.hpp"

#include <random>

using namespace qms;

namespace {

IntMatrix M(std::vector<std::vector<long>> const& rows)
{
    IntMatrix m;
    for (auto const& r : rows) {
        IntVector v;
        for (long x : r)
            v.emplace_back(x);
        m.append_row(v);
    }
    return m;
}

IntPolynomial random_poly(std::mt19937_64& rng, int maxdeg, long bound)
{
    std::uniform_int_distribution<long> c(-bound, bound);
    std::uniform_int_distribution<int> d(1, maxdeg);
    std::vector<Int> co(d(rng) + 1);
    for (auto& x : co)
        x = c(rng);
    if (co.back() == 0)
        co.back() = 1;
    return IntPolynomial(co);
}

} // namespace

TEST_CASE("sturm counts")
{
    CHECK(sturm_count({-2, 0, 1}, Endpoint::at(0), Endpoint::at(2)) == 1);
    CHECK(sturm_count({1, 0, 1}, Endpoint::neg_inf(), Endpoint::pos_inf()) == 0);
    CHECK(sturm_count({-1, 1, 1}, Endpoint::at(-2), Endpoint::at(2)) == 2);
    // repeated root counted once
    CHECK(sturm_count(IntPolynomial{1, -2, 1}, Endpoint::neg_inf(), Endpoint::pos_inf()) == 1);
}

TEST_CASE("root isolation")
{
    auto r = isolate_real_roots({-2, 0, 1}, Rat(1, 8));
    REQUIRE(r.size() == 2);
    CHECK(r[0].hi < Rat(-1));
    CHECK(r[0].lo >= Rat(-3, 2));
    CHECK(r[1].lo > Rat(1));
    CHECK(r[1].hi <= Rat(3, 2));
    auto lin = isolate_real_roots({-3, 1}, Rat(1));
    REQUIRE(lin.size() == 1);
    CHECK(lin[0].contains(Rat(3)));
    auto cub = isolate_real_roots({-1, -2, 1, 1}, Rat(1, 16));
    REQUIRE(cub.size() == 3);
    double expect[3] = {-1.80194, -0.44504, 1.24698};
    for (int i = 0; i < 3; ++i) {
        CHECK(cub[i].width() <= Rat(1, 16));
        CHECK(cub[i].lo.get_d() <= expect[i]);
        CHECK(cub[i].hi.get_d() >= expect[i]);
    }
}

TEST_CASE("sturm agrees with sign changes on a grid")
{
    std::mt19937_64 rng(7);
    int agree = 0;
    for (int t = 0; t < 1000; ++t) {
        IntPolynomial p = random_poly(rng, 6, 20);
        IntPolynomial sq = squarefree_part(p);
        // roots of a squarefree integer polynomial are separated; isolate then
        // count sign changes on a grid fine enough to split the intervals
        auto iv = isolate_real_roots(sq, Rat(1, 1024));
        int count = sturm_count(p, Endpoint::neg_inf(), Endpoint::pos_inf());
        int changes = 0;
        Rat B = cauchy_root_bound(sq);
        std::vector<Rat> grid{-B};
        for (auto const& I : iv) {
            grid.push_back(I.lo - Rat(1, 1 << 20));
            grid.push_back(I.hi + Rat(1, 1 << 20));
        }
        grid.push_back(B);
        std::sort(grid.begin(), grid.end());
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (sq.sign_at(grid[i]) * sq.sign_at(grid[i + 1]) < 0)
                ++changes;
        if (changes == count && count == static_cast<int>(iv.size()))
            ++agree;
    }
    CHECK(agree == 1000);
}

TEST_CASE("resultant")
{
    CHECK(resultant({-2, 0, 1}, {0, 1}) == -2);
    CHECK(resultant({-5, 1}, {3, 1, 1}) == 33);
    CHECK(resultant({-1, 1, 1}, {-1, 1}) == 1);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        IntPolynomial a = random_poly(rng, 4, 5), b = random_poly(rng, 4, 5);
        if (t % 3 == 0) {
            IntPolynomial c = random_poly(rng, 2, 3);
            a = a * c;
            b = b * c;
        }
        bool zero = resultant(a, b) == 0;
        CHECK(zero == (gcd(a, b).degree() > 0));
    }
}

TEST_CASE("hnf and snf")
{
    auto h = hnf(IntMatrix::identity(3));
    CHECK(h.H == IntMatrix::identity(3));
    CHECK(hnf(M({{4, 0}, {0, 6}})).H == M({{4, 0}, {0, 6}}));
    auto r = hnf(M({{2, 4}, {6, 8}}));
    CHECK(abs(determinant(r.H)) == 8);
    CHECK(abs(determinant(r.U)) == 1);
    CHECK(r.U * M({{2, 4}, {6, 8}}) == r.H);
    CHECK(same_row_lattice(r.H, M({{2, 4}, {6, 8}})));

    CHECK(snf(IntMatrix::identity(2)) == IntVector{1, 1});
    CHECK(snf(M({{2, 4}, {6, 8}})) == IntVector{2, 4});
    CHECK(snf(IntMatrix(2, 2)) == IntVector{0, 0});

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-9, 9);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m(4, 3);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) = c(rng);
        auto res = hnf(m);
        CHECK(abs(determinant(res.U)) == 1);
        CHECK(res.U * m == res.H);
        CHECK(same_row_lattice(res.H, m));
        auto s = snf_with_transforms(m);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        IntMatrix D = s.U * m * s.V;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(D(i, j) == (i == j ? s.d[i] : Int(0)));
        for (std::size_t i = 0; i + 1 < s.d.size(); ++i)
            CHECK(divides(s.d[i], s.d[i + 1]));
    }
}

TEST_CASE("incremental hnf modulo D matches plain hnf")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(-30, 30);
    for (int t = 0; t < 50; ++t) {
        std::vector<IntVector> gens;
        IntMatrix m;
        for (int i = 0; i < 5; ++i) {
            IntVector v{c(rng), c(rng), c(rng)};
            gens.push_back(v);
            m.append_row(v);
        }
        IntMatrix plain = hnf_basis(m);
        if (plain.rows() < 3)
            continue;
        Int D = abs(determinant(IntMatrix(std::vector<std::vector<Int>>{plain.row(0), plain.row(1), plain.row(2)})));
        CHECK(hnf_mod(gens, D, 3) == plain);
        IncrementalHnf inc(3);
        for (auto const& g : gens)
            inc.insert(g);
        CHECK(inc.matrix() == plain);
        CHECK(inc.determinant() == D);
    }
}

TEST_CASE("factorization mod p")
{
    auto f7 = factor_poly_mod_p({-2, 0, 1}, 7);
    REQUIRE(f7.size() == 2);
    CHECK(f7[0].factor == IntPolynomial{3, 1});
    CHECK(f7[1].factor == IntPolynomial{4, 1});
    auto f5 = factor_poly_mod_p({-2, 0, 1}, 5);
    REQUIRE(f5.size() == 1);
    CHECK(f5[0].factor.degree() == 2);
    auto f3 = factor_poly_mod_p({0, 0, 1}, 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].factor == IntPolynomial{0, 1});
    CHECK(f3[0].multiplicity == 2);
    CHECK_THROWS_AS(factor_poly_mod_p({1, 1}, 9), InvalidInput);

    std::mt19937_64 rng(9);
    long primes[] = {2, 3, 5, 7, 11, 13, 101};
    for (int t = 0; t < 200; ++t) {
        IntPolynomial p = random_poly(rng, 8, 20);
        Int q = primes[t % 7];
        if (divides(q, p.leading()))
            continue;
        Fp F = Fp::from(q);
        PolyFp prod{1};
        for (auto const& fa : factor_poly_mod_p(p, q)) {
            CHECK(fa.factor.leading() == 1);
            PolyFp g = fp::from_int(fa.factor, F);
            for (int k = 0; k < fa.multiplicity; ++k)
                prod = fp::mul(prod, g, F);
        }
        PolyFp target = fp::monic(fp::from_int(p, F), F);
        CHECK(prod == target);
    }
}

TEST_CASE("integer factorization")
{
    auto f = factor_integer(Int(-360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, int>(2, 3));
    Int big = Int("1000000007") * Int("998244353") * 49;
    auto g = factor_integer(big);
    REQUIRE(g.size() == 3);
    CHECK(g[0].first == 7);
    CHECK(g[2].first == Int("1000000007"));
    CHECK(squarefree_part(Int(-68)) == -17);
    CHECK(euler_phi(84) == 24);
}

TEST_CASE("short vectors")
{
    RatMatrix G(2, 2);
    G(0, 0) = 1;
    G(1, 1) = 2;
    int count = 0;
    fincke_pohst(G, Rat(2), [&](IntVector const&) {
        ++count;
        return true;
    });
    // (0,0), (+-1,0), (0,+-1)
    CHECK(count == 5);
    RatMatrix H(2, 2);
    H(0, 0) = 101;
    H(0, 1) = H(1, 0) = 100;
    H(1, 1) = 100;
    auto l = lll_gram(H);
    CHECK(abs(determinant(l.U)) == 1);
    CHECK(l.gram(0, 0) <= 2);
}

TEST_CASE("characteristic polynomial")
{
    IntMatrix a(3, 3);
    long v[9] = {2, -1, 0, 3, 4, 7, -5, 1, 1};
    for (int i = 0; i < 9; ++i)
        a(i / 3, i % 3) = v[i];
    IntVector c = charpoly_coefficients(a);
    // det(xI - A) evaluated at x = 0 is -det(A); trace gives -c[2]
    CHECK(c[3] == 1);
    CHECK(c[2] == -7);
    CHECK(c[0] == -determinant(a));
    IntMatrix b(2, 2);
    b(0, 1) = 2;
    b(1, 0) = 1;
    CHECK(charpoly_coefficients(b) == IntVector{-2, 0, 1});
}

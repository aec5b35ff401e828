#ifndef QMSIEVE_TESTS_BRUTE_PRIMES_HPP
#define QMSIEVE_TESTS_BRUTE_PRIMES_HPP

// Brute-force maximal ideals of O/pO. O/pO is a principal ideal ring, so
// every ideal is x(O/pO) for some x; we enumerate x up to scaling, collect
// the distinct ideals as F_p-subspaces, and keep the maximal proper ones.
// Ramification indices come from the stabilizing codimension of powers.

#include "qmsieve/exact/modp.hpp"
#include "qmsieve/field/number_field.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace qms::oracle {

using Space = std::vector<std::vector<u64>>; // RREF rows

inline Space rref_space(MatFp m, Fp const& F)
{
    auto piv = fp::rref(m, F);
    m.resize(piv.size());
    return m;
}

inline std::vector<u64> mulp(NumberField const& K, Fp const& F, std::vector<u64> const& a, std::vector<u64> const& b)
{
    std::size_t n = K.degree();
    std::vector<u64> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!b[j])
                continue;
            u64 c = F.mul(a[i], b[j]);
            IntVector const& t = K.table(i, j);
            for (std::size_t k = 0; k < n; ++k)
                r[k] = F.add(r[k], F.mul(c, F.reduce(t[k])));
        }
    }
    return r;
}

inline bool subspace_of(Space const& a, Space const& b, Fp const& F)
{
    MatFp m = b;
    m.insert(m.end(), a.begin(), a.end());
    return fp::rank(m, F) == b.size();
}

struct BrutePrime {
    Space space;
    int e;
    int f;
};

inline std::vector<BrutePrime> brute_primes(NumberField const& K, u64 p)
{
    Fp F(p);
    std::size_t n = K.degree();
    std::set<Space> ideals;
    std::vector<u64> x(n, 0);
    // x ranges over vectors whose first nonzero coordinate is 1
    for (std::size_t lead = 0; lead < n; ++lead) {
        std::fill(x.begin(), x.end(), 0);
        x[lead] = 1;
        for (;;) {
            MatFp rows;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<u64> e(n, 0);
                e[i] = 1;
                rows.push_back(mulp(K, F, e, x));
            }
            Space s = rref_space(rows, F);
            if (s.size() < n)
                ideals.insert(s);
            std::size_t i = lead + 1;
            for (; i < n; ++i) {
                if (++x[i] < p)
                    break;
                x[i] = 0;
            }
            if (i >= n)
                break;
        }
    }
    ideals.insert(Space{}); // zero ideal (x = 0)
    std::vector<BrutePrime> out;
    for (auto const& s : ideals) {
        bool maximal = true;
        for (auto const& t : ideals)
            if (t.size() > s.size() && subspace_of(s, t, F)) {
                maximal = false;
                break;
            }
        if (!maximal)
            continue;
        int f = static_cast<int>(n - s.size());
        // powers of the ideal: codimension grows by f until it stabilizes
        Space pw = s;
        for (;;) {
            MatFp prod;
            for (auto const& u : pw)
                for (auto const& v : s)
                    prod.push_back(mulp(K, F, u, v));
            Space next = prod.empty() ? Space{} : rref_space(prod, F);
            if (next.size() == pw.size())
                break;
            pw = next;
        }
        // the local factor has dimension e f; codim of the stable power
        int stable_codim = static_cast<int>(n - pw.size());
        out.push_back({s, stable_codim / f, f});
    }
    return out;
}

/* The F_p-subspace of O/pO cut out by an integral ideal containing p. */
inline Space ideal_space(IntMatrix const& H, u64 p)
{
    Fp F(p);
    MatFp rows;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::vector<u64> r(H.cols());
        for (std::size_t j = 0; j < H.cols(); ++j)
            r[j] = F.reduce(H(i, j));
        rows.push_back(r);
    }
    return rref_space(rows, F);
}

} // namespace qms::oracle

#endif

#include "qmsieve/exact/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qms {

RatMatrix to_rat(IntMatrix const& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rat(m(i, j));
    return r;
}

Int determinant(IntMatrix m)
{
    std::size_t const n = m.rows();
    if (n != m.cols())
        throw InvalidInput("determinant: non-square matrix");
    if (n == 0)
        return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0)
                ++piv;
            if (piv == n)
                return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Int d = m(n - 1, n - 1);
    return sign > 0 ? d : Int(-d);
}

Rat determinant(RatMatrix const& m0)
{
    RatMatrix m = m0;
    std::size_t const n = m.rows();
    if (n != m.cols())
        throw InvalidInput("determinant: non-square matrix");
    Rat d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != k) {
            m.swap_rows(k, piv);
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0)
                continue;
            Rat f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j)
                m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

RatMatrix inverse(RatMatrix const& m0)
{
    std::size_t const n = m0.rows();
    if (n != m0.cols())
        throw InvalidInput("inverse: non-square matrix");
    RatMatrix m = m0;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0)
            ++piv;
        if (piv == n)
            throw std::domain_error("inverse: singular matrix");
        m.swap_rows(k, piv);
        inv.swap_rows(k, piv);
        Rat p = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0)
                continue;
            Rat f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

RatVector solve_left(RatMatrix const& m, RatVector const& v)
{
    // x m = v  <=>  m^T x^T = v^T
    return v * inverse(m);
}

IntMatrix to_int_exact(RatMatrix const& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1)
                throw std::domain_error("to_int_exact: non-integral entry");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

IntVector charpoly_coefficients(IntMatrix const& a)
{
    std::size_t const N = a.rows();
    if (N != a.cols())
        throw InvalidInput("charpoly: non-square matrix");
    if (N == 0)
        return {Int(1)};
    // Berkowitz: transforms T_k map the char poly of the leading k x k block
    // to that of the (k+1) x (k+1) block. Coefficients highest degree first.
    std::vector<IntMatrix> transforms;
    for (std::size_t n = N; n > 1; --n) {
        std::size_t k = n - 1;
        IntMatrix T(n + 1, n);
        IntVector R(k), C(k);
        for (std::size_t j = 0; j < k; ++j) {
            R[j] = -a(k, j);
            C[j] = a(j, k);
        }
        Int diag = -a(k, k);
        std::vector<Int> items{Int(1), diag};
        IntVector cur = C;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            Int dot = 0;
            for (std::size_t j = 0; j < k; ++j)
                dot += R[j] * cur[j];
            items.push_back(dot);
            if (i + 2 < n) {
                IntVector nxt(k);
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t j = 0; j < k; ++j)
                        if (cur[j] != 0)
                            nxt[r] += a(r, j) * cur[j];
                cur = std::move(nxt);
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = i; r < n + 1; ++r)
                T(r, i) = items[r - i];
        transforms.push_back(std::move(T));
    }
    IntVector poly{Int(1), Int(-a(0, 0))};
    for (std::size_t t = transforms.size(); t-- > 0;) {
        IntMatrix const& T = transforms[t];
        IntVector np(T.rows());
        for (std::size_t r = 0; r < T.rows(); ++r)
            for (std::size_t c = 0; c < T.cols(); ++c)
                np[r] += T(r, c) * poly[c];
        poly = std::move(np);
    }
    std::reverse(poly.begin(), poly.end());
    return poly;
}

} // namespace qms

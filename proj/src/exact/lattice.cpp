#include "qmsieve/exact/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace qms {

namespace {

Int round_nearest(Rat const& x) { return floor_of(x + Rat(1, 2)); }

struct Gso {
    RatMatrix mu;
    std::vector<Rat> B;
};

Gso gso_from_gram(RatMatrix const& G)
{
    std::size_t n = G.rows();
    Gso g{RatMatrix(n, n), std::vector<Rat>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s = G(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= g.mu(j, k) * g.mu(i, k) * g.B[k];
            g.mu(i, j) = s / g.B[j];
        }
        Rat s = G(i, i);
        for (std::size_t k = 0; k < i; ++k)
            s -= g.mu(i, k) * g.mu(i, k) * g.B[k];
        if (s <= 0)
            throw InvalidInput("lll_gram: Gram matrix not positive definite");
        g.B[i] = s;
    }
    return g;
}

/* b_k -= q b_j on the transform and the Gram matrix. */
void sub_row(IntMatrix& U, RatMatrix& G, std::size_t k, std::size_t j, Int const& q)
{
    std::size_t n = G.rows();
    for (std::size_t c = 0; c < U.cols(); ++c)
        U(k, c) -= q * U(j, c);
    Rat qr(q);
    for (std::size_t c = 0; c < n; ++c)
        G(k, c) -= qr * G(j, c);
    for (std::size_t r = 0; r < n; ++r)
        G(r, k) -= qr * G(r, j);
}

void swap_basis(IntMatrix& U, RatMatrix& G, std::size_t a, std::size_t b)
{
    U.swap_rows(a, b);
    G.swap_rows(a, b);
    for (std::size_t r = 0; r < G.rows(); ++r)
        std::swap(G(r, a), G(r, b));
}

} // namespace

LllResult lll_gram(RatMatrix const& G0)
{
    std::size_t n = G0.rows();
    LllResult res{IntMatrix::identity(n), G0};
    if (n <= 1)
        return res;
    Rat const delta(99, 100);
    Gso g = gso_from_gram(res.gram);
    std::size_t k = 1;
    while (k < n) {
        Int q = round_nearest(g.mu(k, k - 1));
        if (q != 0) {
            sub_row(res.U, res.gram, k, k - 1, q);
            g = gso_from_gram(res.gram);
        }
        Rat m = g.mu(k, k - 1);
        if (g.B[k] < (delta - m * m) * g.B[k - 1]) {
            swap_basis(res.U, res.gram, k, k - 1);
            g = gso_from_gram(res.gram);
            if (k > 1)
                --k;
            continue;
        }
        for (std::size_t j = k - 1; j-- > 0;) {
            Int qj = round_nearest(g.mu(k, j));
            if (qj != 0) {
                sub_row(res.U, res.gram, k, j, qj);
                g = gso_from_gram(res.gram);
            }
        }
        ++k;
    }
    return res;
}

void fincke_pohst(RatMatrix const& G, Rat const& C,
                  std::function<bool(IntVector const&)> const& visit,
                  unsigned long long node_cap)
{
    std::size_t const n = G.rows();
    if (n == 0) {
        visit({});
        return;
    }
    if (C < 0)
        return;
    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    RatMatrix q(n, n);
    {
        RatMatrix a = G;
        for (std::size_t i = 0; i < n; ++i) {
            if (a(i, i) <= 0)
                throw InvalidInput("fincke_pohst: form not positive definite");
            for (std::size_t j = i + 1; j < n; ++j) {
                q(i, j) = a(i, j) / a(i, i);
            }
            for (std::size_t k = i + 1; k < n; ++k)
                for (std::size_t l = k; l < n; ++l)
                    a(k, l) -= q(i, k) * a(i, l);
            q(i, i) = a(i, i);
        }
    }
    IntVector x(n);
    std::vector<Rat> T(n + 1), U(n);
    T[n] = C;
    unsigned long long nodes = 0;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        Rat u = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            u += q(i, j) * Rat(x[j]);
        U[i] = u;
        Rat r = T[i + 1] / q(i, i);
        Int s = floor_sqrt(r) + 1;
        Int lo = ceil_of(-u) - s, hi = floor_of(-u) + s;
        for (Int xi = lo; xi <= hi && !stop; ++xi) {
            Rat d = Rat(xi) + u;
            Rat used = d * d;
            if (used > r)
                continue;
            if (++nodes > node_cap)
                throw ResourceError("lattice enumeration exceeded node cap " + std::to_string(node_cap));
            x[i] = xi;
            T[i] = T[i + 1] - q(i, i) * used;
            if (i == 0) {
                if (!visit(x))
                    stop = true;
            }
            else {
                rec(i - 1);
            }
        }
        x[i] = 0;
    };
    rec(n - 1);
}

void fincke_pohst_approx(std::vector<std::vector<double>> const& G, double C,
                         std::function<bool(std::vector<long> const&)> const& visit,
                         unsigned long long node_cap)
{
    std::size_t const n = G.size();
    if (n == 0 || C < 0)
        return;
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0)), a = G;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] <= 0)
            throw InvalidInput("fincke_pohst_approx: form not positive definite");
        for (std::size_t j = i + 1; j < n; ++j)
            q[i][j] = a[i][j] / a[i][i];
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                a[k][l] -= q[i][k] * a[i][l];
        q[i][i] = a[i][i];
    }
    double const slack = 1e-9 * (1.0 + C);
    std::vector<long> x(n, 0);
    std::vector<double> T(n + 1);
    T[n] = C + slack;
    unsigned long long nodes = 0;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        double u = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            u += q[i][j] * static_cast<double>(x[j]);
        double r = T[i + 1] / q[i][i];
        if (r < 0)
            r = 0;
        double s = std::sqrt(r) + 1e-9;
        long lo = static_cast<long>(std::ceil(-u - s)), hi = static_cast<long>(std::floor(-u + s));
        for (long xi = lo; xi <= hi && !stop; ++xi) {
            if (++nodes > node_cap)
                throw ResourceError("lattice enumeration exceeded node cap " + std::to_string(node_cap));
            double d = static_cast<double>(xi) + u;
            x[i] = xi;
            T[i] = T[i + 1] - q[i][i] * d * d;
            if (i == 0) {
                if (!visit(x))
                    stop = true;
            }
            else {
                rec(i - 1);
            }
        }
        x[i] = 0;
    };
    rec(n - 1);
}

std::vector<std::vector<double>> to_double(RatMatrix const& m)
{
    std::vector<std::vector<double>> r(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[i][j] = m(i, j).get_d();
    return r;
}

} // namespace qms

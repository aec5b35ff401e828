#include "qmsieve/exact/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace qms {

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, Int const& f, std::size_t src)
{
    // row dst += f * row src
    if (f == 0)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0)
            m(dst, j) += f * m(src, j);
}

void col_axpy(IntMatrix& m, std::size_t dst, Int const& f, std::size_t src)
{
    if (f == 0)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0)
            m(i, dst) += f * m(i, src);
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

void negate_row(IntMatrix& m, std::size_t r)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(r, j) = -m(r, j);
}

/* Reduce entries above pivots of an echelon set of rows. */
void reduce_above(std::vector<IntVector>& rows, std::vector<std::size_t> const& piv)
{
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::size_t c = piv[k];
        Int const& p = rows[k][c];
        for (std::size_t r = 0; r < k; ++r) {
            if (rows[r][c] == 0 || (rows[r][c] > 0 && rows[r][c] < p))
                continue;
            Int q = floor_div(rows[r][c], p);
            for (std::size_t j = c; j < rows[r].size(); ++j)
                rows[r][j] -= q * rows[k][j];
        }
    }
}

} // namespace

HnfResult hnf(IntMatrix const& m)
{
    IntMatrix A = m;
    IntMatrix U = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        for (;;) {
            std::size_t best = A.rows();
            for (std::size_t i = r; i < A.rows(); ++i)
                if (A(i, c) != 0 && (best == A.rows() || abs(A(i, c)) < abs(A(best, c))))
                    best = i;
            if (best == A.rows())
                break;
            A.swap_rows(r, best);
            U.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < A.rows(); ++i) {
                if (A(i, c) == 0)
                    continue;
                Int q = floor_div(A(i, c), A(r, c));
                row_axpy(A, i, -q, r);
                row_axpy(U, i, -q, r);
                if (A(i, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (A(r, c) == 0)
            continue;
        if (A(r, c) < 0) {
            negate_row(A, r);
            negate_row(U, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(A(i, c), A(r, c));
            row_axpy(A, i, -q, r);
            row_axpy(U, i, -q, r);
        }
        ++r;
    }
    return {A, U};
}

IntMatrix hnf_basis(IntMatrix const& m)
{
    IntMatrix H = hnf(m).H;
    IntMatrix out;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < H.cols() && zero; ++j)
            zero = H(i, j) == 0;
        if (!zero)
            out.append_row(H.row(i));
    }
    if (out.rows() == 0)
        return IntMatrix(0, m.cols());
    return out;
}

void IncrementalHnf::set_modulus(Int const& D)
{
    if (D <= 0)
        throw InvalidInput("IncrementalHnf: modulus must be positive");
    D_ = D;
    for (std::size_t c = 0; c < n_; ++c) {
        if (rows_[c].empty()) {
            rows_[c].assign(n_, Int(0));
            rows_[c][c] = D;
        }
        else if (!divides(rows_[c][c], D)) {
            // pivot must divide D; fold D*e_c in
            IntVector row = rows_[c];
            rows_[c].assign(n_, Int(0));
            rows_[c][c] = D;
            insert(row);
            continue;
        }
        Int piv = rows_[c][c];
        reduce(rows_[c]);
        rows_[c][c] = piv;
    }
}

void IncrementalHnf::reduce(IntVector& v) const
{
    if (D_ == 0)
        return;
    for (std::size_t j = 0; j < n_; ++j)
        if (v[j] < 0 || v[j] >= D_)
            v[j] = mod(v[j], D_);
}

void IncrementalHnf::insert(IntVector v)
{
    if (v.size() != n_)
        throw InvalidInput("IncrementalHnf: wrong vector length");
    for (std::size_t c = 0; c < n_; ++c) {
        if (D_ != 0 && (v[c] < 0 || v[c] >= D_))
            v[c] = mod(v[c], D_);
        if (v[c] == 0)
            continue;
        IntVector& row = rows_[c];
        if (row.empty()) {
            if (v[c] < 0)
                for (auto& x : v)
                    x = -x;
            row = std::move(v);
            if (D_ != 0) {
                Int piv = row[c];
                reduce(row);
                row[c] = piv;
            }
            return;
        }
        Int a = row[c], b = v[c], g, s, t;
        xgcd(g, s, t, a, b);
        Int ag = a / g, bg = b / g;
        IntVector nr(n_), nv(n_);
        for (std::size_t j = c; j < n_; ++j) {
            nr[j] = s * row[j] + t * v[j];
            nv[j] = ag * v[j] - bg * row[j];
        }
        if (D_ != 0) {
            for (std::size_t j = c + 1; j < n_; ++j) {
                nr[j] = mod(nr[j], D_);
                nv[j] = mod(nv[j], D_);
            }
        }
        row = std::move(nr);
        v = std::move(nv);
    }
}

bool IncrementalHnf::full_rank() const
{
    return std::all_of(rows_.begin(), rows_.end(), [](auto const& r) { return !r.empty(); });
}

std::size_t IncrementalHnf::rank() const
{
    return static_cast<std::size_t>(
        std::count_if(rows_.begin(), rows_.end(), [](auto const& r) { return !r.empty(); }));
}

Int IncrementalHnf::determinant() const
{
    Int d = 1;
    for (std::size_t c = 0; c < n_; ++c) {
        if (rows_[c].empty())
            return 0;
        d *= rows_[c][c];
    }
    return d;
}

IntMatrix IncrementalHnf::matrix() const
{
    std::vector<IntVector> rows;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < n_; ++c)
        if (!rows_[c].empty()) {
            rows.push_back(rows_[c]);
            piv.push_back(c);
        }
    reduce_above(rows, piv);
    IntMatrix out(rows.size(), n_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.set_row(i, rows[i]);
    return out;
}

IntMatrix hnf_mod(std::vector<IntVector> const& gens, Int const& D, std::size_t n)
{
    IncrementalHnf h(n);
    h.set_modulus(D);
    for (auto const& g : gens)
        h.insert(g);
    return h.matrix();
}

namespace {

void snf_core(IntMatrix& A, IntMatrix* U, IntMatrix* V)
{
    std::size_t const R = A.rows(), C = A.cols();
    std::size_t const k = std::min(R, C);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block
            std::size_t bi = R, bj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (A(i, j) != 0 && (bi == R || abs(A(i, j)) < abs(A(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == R)
                return;
            A.swap_rows(t, bi);
            if (U)
                U->swap_rows(t, bi);
            swap_cols(A, t, bj);
            if (V)
                swap_cols(*V, t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (A(i, t) == 0)
                    continue;
                Int q = floor_div(A(i, t), A(t, t));
                row_axpy(A, i, -q, t);
                if (U)
                    row_axpy(*U, i, -q, t);
                if (A(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (A(t, j) == 0)
                    continue;
                Int q = floor_div(A(t, j), A(t, t));
                col_axpy(A, j, -q, t);
                if (V)
                    col_axpy(*V, j, -q, t);
                if (A(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the trailing block by the pivot
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!divides(A(t, t), A(i, j))) {
                        bad = i;
                        break;
                    }
            if (bad == R)
                break;
            row_axpy(A, t, Int(1), bad);
            if (U)
                row_axpy(*U, t, Int(1), bad);
        }
        if (A(t, t) < 0) {
            negate_row(A, t);
            if (U)
                negate_row(*U, t);
        }
    }
}

} // namespace

IntVector snf(IntMatrix const& m)
{
    IntMatrix A = m;
    snf_core(A, nullptr, nullptr);
    IntVector d(std::min(A.rows(), A.cols()));
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = A(i, i);
    return d;
}

SnfResult snf_with_transforms(IntMatrix const& m)
{
    IntMatrix A = m;
    IntMatrix U = IntMatrix::identity(m.rows());
    IntMatrix V = IntMatrix::identity(m.cols());
    snf_core(A, &U, &V);
    IntVector d(std::min(A.rows(), A.cols()));
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = A(i, i);
    return {U, V, d};
}

bool in_row_lattice(IntMatrix const& H, IntVector const& v0)
{
    IntVector v = v0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < H.rows(); ++r) {
        std::size_t c = 0;
        while (c < H.cols() && H(r, c) == 0)
            ++c;
        if (c == H.cols())
            continue;
        for (; col < c; ++col)
            if (v[col] != 0)
                return false;
        if (!divides(H(r, c), v[c]))
            return false;
        Int q = v[c] / H(r, c);
        for (std::size_t j = c; j < H.cols(); ++j)
            v[j] -= q * H(r, j);
        col = c + 1;
    }
    for (; col < v.size(); ++col)
        if (v[col] != 0)
            return false;
    return true;
}

bool same_row_lattice(IntMatrix const& a, IntMatrix const& b)
{
    IntMatrix ha = hnf_basis(a), hb = hnf_basis(b);
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!in_row_lattice(hb, a.row(i)))
            return false;
    for (std::size_t i = 0; i < b.rows(); ++i)
        if (!in_row_lattice(ha, b.row(i)))
            return false;
    return true;
}

} // namespace qms

#include "qmsieve/exact/factor.hpp"
#include "qmsieve/exact/modp.hpp"
#include "qmsieve/exact/normal_form.hpp"
#include "qmsieve/field/number_field.hpp"

#include <algorithm>
#include <functional>

namespace qms {

namespace {

Int lcm_of_dens(RatMatrix const& m)
{
    Int d = 1;
    for (auto const& x : m.data())
        d = lcm(d, x.get_den());
    return d;
}

IntMatrix scale_to_int(RatMatrix const& m, Int const& d)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat t = m(i, j) * Rat(d);
            if (t.get_den() != 1)
                throw std::logic_error("scale_to_int: non-integral entry");
            r(i, j) = t.get_num();
        }
    return r;
}

IntVector to_int_vector(RatVector const& v)
{
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1)
            throw std::logic_error("expected an integral vector");
        r[i] = v[i].get_num();
    }
    return r;
}

/* Power sums p_0..p_{count-1} of the roots of a monic polynomial. */
std::vector<Int> power_sums(IntPolynomial const& g, std::size_t count)
{
    int n = g.degree();
    std::vector<Int> p(count);
    auto a = [&](int i) { return g.coeff(i); }; // x^n + a_{n-1} x^{n-1} + ...
    for (std::size_t k = 0; k < count; ++k) {
        if (k == 0) {
            p[0] = n;
            continue;
        }
        Int s = 0;
        int K = static_cast<int>(k);
        for (int i = 1; i <= std::min(K - 1, n); ++i)
            s += a(n - i) * p[k - i];
        if (K <= n)
            s += K * a(n - K);
        p[k] = -s;
    }
    return p;
}

/* Arithmetic in Q[x]/(g) on theta-power coordinates. */
struct ThetaAlgebra {
    IntPolynomial g;
    std::size_t n;

    RatVector mul(RatVector const& a, RatVector const& b) const
    {
        std::vector<Rat> c(2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[j] != 0)
                    c[i + j] += a[i] * b[j];
        }
        for (std::size_t k = 2 * n - 1; k-- > n;) {
            if (c[k] == 0)
                continue;
            Rat t = c[k];
            c[k] = 0;
            for (std::size_t j = 0; j < n; ++j)
                c[k - n + j] -= t * Rat(g.coeff(static_cast<int>(j)));
        }
        c.resize(n);
        return c;
    }
};

/* A Z-order of Q[x]/(g) given by a basis in theta coordinates. */
struct Order {
    RatMatrix B, Binv;
    std::vector<IntVector> st; // b_i b_j on the order basis

    Order(ThetaAlgebra const& A, RatMatrix basis) : B(std::move(basis)), Binv(inverse(B))
    {
        std::size_t n = A.n;
        st.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                IntVector v = to_int_vector(A.mul(B.row(i), B.row(j)) * Binv);
                st[i * n + j] = v;
                st[j * n + i] = v;
            }
    }

    Int discriminant(ThetaAlgebra const& A) const
    {
        std::size_t n = A.n;
        std::vector<Int> ps = power_sums(A.g, n);
        IntVector tr(n);
        for (std::size_t k = 0; k < n; ++k) {
            Rat t = 0;
            for (std::size_t m = 0; m < n; ++m)
                t += B(k, m) * Rat(ps[m]);
            tr[k] = t.get_num();
        }
        IntMatrix T(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    T(i, j) += st[i * n + j][k] * tr[k];
        return determinant(T);
    }
};

/* Dedekind criterion for Z[theta] at p. */
bool dedekind_maximal(IntPolynomial const& g, Int const& p)
{
    auto facs = factor_poly_mod_p(g, p);
    Fp F = Fp::from(p);
    IntPolynomial T = IntPolynomial::constant(1), H = IntPolynomial::constant(1);
    for (auto const& f : facs) {
        T = T * f.factor;
        for (int k = 1; k < f.multiplicity; ++k)
            H = H * f.factor;
    }
    IntPolynomial diff = g - T * H;
    std::vector<Int> c = diff.coefficients();
    for (auto& x : c) {
        if (!divides(p, x))
            throw std::logic_error("dedekind: factorization does not lift");
        x /= p;
    }
    PolyFp f1 = fp::from_int(IntPolynomial(c), F);
    PolyFp u = fp::gcd(fp::gcd(f1, fp::from_int(T, F), F), fp::from_int(H, F), F);
    return fp::degree(u) == 0;
}

/* One Round 2 enlargement at p; false when the order is p-maximal. */
bool round2_step(ThetaAlgebra const& A, Order& O, Int const& pz)
{
    std::size_t n = A.n;
    Fp F = Fp::from(pz);
    u64 p = F.p;
    std::vector<std::vector<u64>> stp(n * n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n * n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            stp[i][k] = F.reduce(O.st[i][k]);
    auto mulp = [&](std::vector<u64> const& x, std::vector<u64> const& y) {
        std::vector<u64> r(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0)
                    continue;
                u64 c = F.mul(x[i], y[j]);
                for (std::size_t k = 0; k < n; ++k)
                    r[k] = F.add(r[k], F.mul(c, stp[i * n + j][k]));
            }
        }
        return r;
    };
    // the order basis need not start with 1
    std::vector<u64> unit(n);
    {
        RatVector one(n);
        one[0] = 1;
        IntVector oc = to_int_vector(one * O.Binv);
        for (std::size_t k = 0; k < n; ++k)
            unit[k] = F.reduce(oc[k]);
    }
    auto powp = [&](std::vector<u64> x, u64 e) {
        std::vector<u64> r = unit;
        while (e) {
            if (e & 1)
                r = mulp(r, x);
            x = mulp(x, x);
            e >>= 1;
        }
        return r;
    };
    // radical: kernel of x -> x^(p^j) with p^j >= n
    int j = 1;
    for (Int q = pz; q < Int(static_cast<unsigned long>(n)); q *= pz)
        ++j;
    MatFp Fr(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<u64> x(n, 0);
        x[i] = 1;
        for (int t = 0; t < j; ++t)
            x = powp(x, p);
        Fr[i] = x;
    }
    MatFp rad = fp::kernel(fp::transpose(Fr, n), n, F);
    IntMatrix gens;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector v(n);
        v[i] = pz;
        gens.append_row(v);
    }
    for (auto const& v : rad) {
        IntVector w(n);
        for (std::size_t k = 0; k < n; ++k)
            w[k] = static_cast<unsigned long>(v[k]);
        gens.append_row(w);
    }
    IntMatrix H = hnf_basis(gens);
    RatMatrix Hinv = inverse(to_rat(H));
    // x -> (h_k -> x h_k mod p I_p)
    MatFp Amat(n, std::vector<u64>(n * n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            RatVector prod(n);
            for (std::size_t m = 0; m < n; ++m) {
                if (H(k, m) == 0)
                    continue;
                for (std::size_t l = 0; l < n; ++l)
                    prod[l] += Rat(H(k, m) * O.st[i * n + m][l]);
            }
            IntVector y = to_int_vector(prod * Hinv);
            for (std::size_t l = 0; l < n; ++l)
                Amat[i][k * n + l] = F.reduce(y[l]);
        }
    MatFp ker = fp::kernel(fp::transpose(Amat, n * n), n, F);
    if (ker.empty())
        return false;
    IntMatrix ug;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector v(n);
        v[i] = pz;
        ug.append_row(v);
    }
    for (auto const& v : ker) {
        IntVector w(n);
        for (std::size_t k = 0; k < n; ++k)
            w[k] = static_cast<unsigned long>(v[k]);
        ug.append_row(w);
    }
    IntMatrix U = hnf_basis(ug);
    RatMatrix nb = to_rat(U) * O.B;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            nb(i, k) /= Rat(pz);
    O = Order(A, nb);
    return true;
}

/* Intervals for the coefficients of prod (x - r_i) over a subset. */
std::vector<RationalInterval> interval_product(std::vector<RationalInterval> const& roots)
{
    std::vector<RationalInterval> c{{Rat(1), Rat(1)}};
    for (auto const& r : roots) {
        std::vector<RationalInterval> nc(c.size() + 1, {Rat(0), Rat(0)});
        for (std::size_t i = 0; i < c.size(); ++i) {
            // (c_i x^i) * x
            nc[i + 1].lo += c[i].lo;
            nc[i + 1].hi += c[i].hi;
            // (c_i x^i) * (-r)
            Rat a = -c[i].lo * r.lo, b = -c[i].lo * r.hi, d = -c[i].hi * r.lo, e = -c[i].hi * r.hi;
            nc[i].lo += std::min({a, b, d, e});
            nc[i].hi += std::max({a, b, d, e});
        }
        c = std::move(nc);
    }
    return c;
}

/* Irreducibility of a squarefree, monic, totally real integer polynomial:
 * factor-degree patterns mod small primes restrict candidate factor
 * degrees; surviving degrees are settled by testing each subset of real
 * roots for an integral product polynomial. */
bool irreducible_totally_real(IntPolynomial const& g)
{
    int n = g.degree();
    if (n <= 1)
        return true;
    std::vector<bool> possible(n + 1, true);
    Int disc = discriminant(g);
    int used = 0;
    for (Int p = 2; used < 40 && p < 2000; p = next_prime(p)) {
        if (divides(p, disc))
            continue;
        ++used;
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (auto const& f : factor_poly_mod_p(g, p))
            for (int k = n; k >= f.factor.degree(); --k)
                if (sums[k - f.factor.degree()])
                    sums[k] = true;
        for (int d = 1; d < n; ++d)
            possible[d] = possible[d] && sums[d];
    }
    std::vector<RationalInterval> roots = isolate_real_roots(g, Rat(1, 1 << 10));
    for (int d = 1; 2 * d <= n; ++d) {
        if (!possible[d])
            continue;
        std::vector<int> idx(d);
        std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
            if (depth == d) {
                Rat w(1, 1 << 10);
                for (int round = 0; round < 40; ++round) {
                    std::vector<RationalInterval> sub;
                    for (int i : idx)
                        sub.push_back(roots[i]);
                    auto c = interval_product(sub);
                    bool excluded = false, narrow = true;
                    std::vector<Int> cand;
                    for (auto const& iv : c) {
                        Int lo = ceil_of(iv.lo), hi = floor_of(iv.hi);
                        if (lo > hi) {
                            excluded = true;
                            break;
                        }
                        if (lo != hi)
                            narrow = false;
                        cand.push_back(lo);
                    }
                    if (excluded)
                        return false;
                    if (narrow) {
                        IntPolynomial h(cand);
                        try {
                            divide_exact(g, h);
                            return true;
                        }
                        catch (std::exception const&) {
                            return false;
                        }
                    }
                    w /= 1 << 8;
                    roots = isolate_real_roots(g, w);
                }
                throw ResourceError("irreducibility test did not converge");
            }
            for (int i = start; i < n; ++i) {
                idx[depth] = i;
                if (rec(i + 1, depth + 1))
                    return true;
            }
            return false;
        };
        if (rec(0, 0))
            return false;
    }
    return true;
}

} // namespace

struct FieldBuilder {
    std::size_t n = 1;
    std::vector<RatVector> c; // e_i e_j
    RatVector one;
    std::vector<RatVector> theta_candidates;
    RatMatrix order;
    bool z_theta_order = false;
    bool asserted_maximal = false;
    Int asserted_disc;
    std::vector<RatMatrix> auts_e;
    std::optional<RatMatrix> conj_e, relconj_e;
    FieldPtr base;
    RatMatrix base_to_e;
    FieldElement rel_delta;
    RatVector sqrt_delta_e;
    bool galois_search = false;

    RatVector mul_e(RatVector const& a, RatVector const& b) const
    {
        RatVector r(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0)
                    continue;
                Rat s = a[i] * b[j];
                RatVector const& cij = c[i * n + j];
                for (std::size_t k = 0; k < n; ++k)
                    if (cij[k] != 0)
                        r[k] += s * cij[k];
            }
        }
        return r;
    }

    FieldPtr finish(FieldSpec const& spec);
    static FieldPtr rationals(FieldSpec const& spec);
    static FieldPtr multiquadratic(FieldSpec const& spec, std::vector<Int> const& gens);
    static FieldPtr totally_real_poly(FieldSpec const& spec);
    static FieldPtr relative_quadratic(FieldSpec const& spec);
    static FieldPtr explicit_order(FieldSpec const& spec);
};

FieldPtr FieldBuilder::finish(FieldSpec const& spec)
{
    // primitive element theta and its powers in construction coordinates
    RatMatrix P(n, n);
    RatVector thn; // theta^n
    bool found = false;
    for (auto const& th : theta_candidates) {
        RatVector x = one;
        for (std::size_t j = 0; j < n; ++j) {
            P.set_row(j, x);
            x = mul_e(x, th);
        }
        if (determinant(P) != 0) {
            thn = x;
            found = true;
            break;
        }
    }
    if (!found)
        throw std::logic_error("no primitive element among candidates");
    RatMatrix Pinv = inverse(P);
    RatVector a = thn * Pinv;
    std::vector<Int> co(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j].get_den() != 1)
            throw std::logic_error("primitive element not integral");
        co[j] = -a[j].get_num();
    }
    co[n] = 1;
    IntPolynomial g(co);
    ThetaAlgebra A{g, n};

    auto K = std::shared_ptr<NumberField>(new NumberField());
    K->spec_ = spec;
    K->id_ = spec.digest().substr(0, 16);
    K->n_ = n;
    K->g_ = g;

    // order in theta coordinates, then p-maximalization
    RatMatrix ob = order * Pinv;
    Order O(A, ob);
    Int dO = O.discriminant(A);
    if (dO == 0)
        throw InvalidInput("degenerate algebra (zero discriminant)");
    if (asserted_maximal) {
        if (dO != asserted_disc)
            throw InvalidInput("explicit order: discriminant " + dO.get_str() + " does not match the asserted " +
                               asserted_disc.get_str());
        for (auto const& [p, e] : factor_integer(dO))
            K->certified_[p] = "asserted";
    }
    else if (abs(dO) != 1) {
        for (auto const& [p, e] : factor_integer(dO)) {
            if (e < 2) {
                K->certified_[p] = "squarefree";
                continue;
            }
            if (z_theta_order && dedekind_maximal(g, p)) {
                K->certified_[p] = "dedekind";
                continue;
            }
            while (round2_step(A, O, p)) {
            }
            K->certified_[p] = "round2";
        }
    }

    // canonical basis: lower triangular in theta powers, w_0 = 1
    Int D = lcm_of_dens(O.B);
    IntMatrix N = scale_to_int(O.B, D);
    IntMatrix Nrev(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            Nrev(i, j) = N(i, n - 1 - j);
    IntMatrix H = hnf_basis(Nrev);
    IntMatrix W(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            W(i, j) = H(n - 1 - i, n - 1 - j);
    if (W(0, 0) != D)
        throw std::logic_error("integral basis does not start with 1");
    K->W_ = W;
    K->Wden_ = D;
    RatMatrix Wth = to_rat(W);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            Wth(i, j) /= Rat(D);
    RatMatrix WinvR = inverse(Wth);
    K->Winv_ = to_int_exact(WinvR);
    K->index_ = abs(determinant(K->Winv_));

    K->table_.assign(n * n, IntVector());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            IntVector v = to_int_vector(A.mul(Wth.row(i), Wth.row(j)) * WinvR);
            K->table_[i * n + j] = v;
            K->table_[j * n + i] = v;
        }
    std::vector<Int> ps = power_sums(g, n);
    K->trace_.assign(n, Int(0));
    for (std::size_t k = 0; k < n; ++k) {
        Rat t = 0;
        for (std::size_t m = 0; m < n; ++m)
            t += Wth(k, m) * Rat(ps[m]);
        K->trace_[k] = t.get_num();
    }
    K->traceform_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                K->traceform_(i, j) += K->table_[i * n + j][k] * K->trace_[k];
    K->disc_ = determinant(K->traceform_);
    K->r1_ = real_root_count(g);
    K->r2_ = (static_cast<int>(n) - K->r1_) / 2;
    if (K->r1_ > 0)
        K->real_roots_ = isolate_real_roots(g, Rat(1, 16));

    K->omega_to_e_ = Wth * P;
    RatMatrix e_to_omega = Pinv * WinvR;
    auto convert = [&](RatMatrix const& Ae) { return to_int_exact(K->omega_to_e_ * Ae * e_to_omega); };

    // automorphisms
    std::vector<IntMatrix> auts;
    for (auto const& Ae : auts_e)
        auts.push_back(convert(Ae));
    if (auts.empty())
        auts.push_back(IntMatrix::identity(n));
    IntMatrix id = IntMatrix::identity(n);
    std::sort(auts.begin(), auts.end(), [&](IntMatrix const& a, IntMatrix const& b) {
        if ((a == id) != (b == id))
            return a == id;
        return a.data() < b.data();
    });
    auts.erase(std::unique(auts.begin(), auts.end()), auts.end());
    K->auts_ = auts;
    auto index_of = [&](IntMatrix const& m) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < K->auts_.size(); ++i)
            if (K->auts_[i] == m)
                return i;
        return std::nullopt;
    };
    if (conj_e)
        K->conj_ = index_of(convert(*conj_e));
    else if (K->r2_ == 0)
        K->conj_ = 0;
    if (relconj_e)
        K->relconj_ = index_of(convert(*relconj_e));
    if (base) {
        K->base_ = base;
        K->base_emb_ = to_int_exact(base_to_e * e_to_omega);
        K->rel_delta_ = rel_delta;
        RatVector sd = sqrt_delta_e * e_to_omega;
        Int dd = 1;
        for (auto const& x : sd)
            dd = lcm(dd, x.get_den());
        IntVector sdn(n);
        for (std::size_t i = 0; i < n; ++i)
            sdn[i] = Rat(sd[i] * Rat(dd)).get_num();
        K->sqrt_delta_ = FieldElement(*K, sdn, dd);
        // columns giving an invertible square block of the embedding
        std::size_t nb = base->degree();
        RatMatrix E = to_rat(K->base_emb_);
        std::vector<std::size_t> cols;
        {
            RatMatrix T = E.transpose();
            for (std::size_t j = 0; j < n && cols.size() < nb; ++j) {
                std::vector<std::size_t> trial = cols;
                trial.push_back(j);
                RatMatrix sub(trial.size(), nb);
                for (std::size_t r = 0; r < trial.size(); ++r)
                    sub.set_row(r, T.row(trial[r]));
                // independent columns iff the Gram determinant is nonzero
                if (determinant(sub * sub.transpose()) != 0)
                    cols = trial;
            }
        }
        RatMatrix Eb(nb, nb);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t a = 0; a < nb; ++a)
                Eb(i, a) = E(i, cols[a]);
        K->base_cols_ = cols;
        K->base_inv_ = inverse(Eb);
    }

    // T2 Gram matrix
    if (K->r2_ == 0) {
        K->t2_ = K->traceform_;
    }
    else if (K->conj_) {
        K->t2_ = IntMatrix(n, n);
        IntMatrix const& C = K->auts_[*K->conj_];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                IntVector cj = C.row(j);
                IntVector ei(n);
                ei[i] = 1;
                IntVector prod = K->multiply(ei, cj);
                Int t = 0;
                for (std::size_t k = 0; k < n; ++k)
                    t += prod[k] * K->trace_[k];
                K->t2_(i, j) = t;
            }
    }

    // every automorphism must respect the multiplication table
    for (auto const& S : K->auts_)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                IntVector lhs = K->multiply(S.row(i), S.row(j));
                IntVector rhs = K->table(i, j) * S;
                if (lhs != rhs)
                    throw std::logic_error("automorphism does not preserve multiplication");
            }

    if (galois_search && n > 1) {
        // roots of g in K certify normality and give the automorphisms
        Rat bound = 0;
        for (auto const& iv : K->real_roots_)
            bound = std::max({bound, Rat(abs(iv.lo)), Rat(abs(iv.hi))});
        Int b = ceil_of(bound);
        std::vector<FieldElement> roots;
        for (auto const& x : enumerate_box(*K, Rat(b * b))) {
            FieldElement acc = K->zero();
            for (int k = g.degree(); k >= 0; --k)
                acc = acc * x + K->from_rational(Rat(g.coeff(k)));
            if (acc.is_zero())
                roots.push_back(x);
        }
        if (roots.size() == n) {
            std::vector<IntMatrix> found_auts;
            for (auto const& r : roots) {
                std::vector<FieldElement> pw{K->one()};
                for (std::size_t j = 1; j < n; ++j)
                    pw.push_back(pw.back() * r);
                IntMatrix M(n, n);
                for (std::size_t i = 0; i < n; ++i) {
                    FieldElement s = K->zero();
                    for (std::size_t j = 0; j < n; ++j)
                        if (W(i, j) != 0) {
                            Rat q(W(i, j), D);
                            q.canonicalize();
                            s = s + q * pw[j];
                        }
                    if (!s.is_integral())
                        throw std::logic_error("automorphism image not integral");
                    M.set_row(i, s.num());
                }
                found_auts.push_back(M);
            }
            std::sort(found_auts.begin(), found_auts.end(), [&](IntMatrix const& a, IntMatrix const& b2) {
                if ((a == id) != (b2 == id))
                    return a == id;
                return a.data() < b2.data();
            });
            K->auts_ = found_auts;
            K->conj_ = 0;
        }
    }
    K->galois_ = K->auts_.size() == n;
    return K;
}

FieldPtr FieldBuilder::rationals(FieldSpec const& spec)
{
    FieldBuilder b;
    b.n = 1;
    b.c = {RatVector{Rat(1)}};
    b.one = {Rat(1)};
    b.theta_candidates = {RatVector{Rat(1)}};
    b.order = RatMatrix::identity(1);
    return b.finish(spec);
}

FieldPtr FieldBuilder::multiquadratic(FieldSpec const& spec, std::vector<Int> const& gens)
{
    std::size_t r = gens.size();
    if (r == 0)
        return rationals(spec);
    if (r > 4)
        throw InvalidInput("multiquadratic: at most four generators supported");
    for (auto const& m : gens)
        if (m == 0 || m == 1 || squarefree_part(m) != m)
            throw InvalidInput("multiquadratic: generator " + m.get_str() + " is not a squarefree integer != 0, 1");
    std::size_t n = std::size_t(1) << r;
    std::vector<Int> prod(n, Int(1));
    for (std::size_t S = 1; S < n; ++S) {
        for (std::size_t i = 0; i < r; ++i)
            if (S >> i & 1)
                prod[S] *= gens[i];
        if (squarefree_part(prod[S]) == 1)
            throw InvalidInput("multiquadratic: generators are multiplicatively dependent");
    }
    FieldBuilder b;
    b.n = n;
    b.c.assign(n * n, RatVector(n));
    for (std::size_t S = 0; S < n; ++S)
        for (std::size_t T = 0; T < n; ++T) {
            Int coef = 1;
            for (std::size_t i = 0; i < r; ++i)
                if ((S >> i & 1) && (T >> i & 1))
                    coef *= gens[i];
            b.c[S * n + T][S ^ T] = Rat(coef);
        }
    b.one.assign(n, Rat(0));
    b.one[0] = 1;
    for (long k = 0; k < 40; ++k) {
        RatVector th(n);
        for (std::size_t i = 0; i < r; ++i)
            th[std::size_t(1) << i] = Rat(1 + static_cast<long>(i) * k);
        b.theta_candidates.push_back(th);
    }
    b.order = RatMatrix::identity(n);
    std::size_t conj_mask = 0;
    for (std::size_t i = 0; i < r; ++i)
        if (gens[i] < 0)
            conj_mask |= std::size_t(1) << i;
    auto sign_matrix = [&](std::size_t mask) {
        RatMatrix M(n, n);
        for (std::size_t S = 0; S < n; ++S)
            M(S, S) = __builtin_popcountll(S & mask) % 2 ? -1 : 1;
        return M;
    };
    for (std::size_t mask = 0; mask < n; ++mask)
        b.auts_e.push_back(sign_matrix(mask));
    b.conj_e = sign_matrix(conj_mask);
    b.relconj_e = sign_matrix(std::size_t(1) << (r - 1));
    std::vector<Int> bg(gens.begin(), gens.end() - 1);
    b.base = NumberField::build(bg.empty() ? FieldSpec::rationals() : FieldSpec::multiquadratic(bg));
    RatMatrix const& bo = b.base->omega_to_e_;
    b.base_to_e = RatMatrix(bo.rows(), n);
    for (std::size_t i = 0; i < bo.rows(); ++i)
        for (std::size_t S = 0; S < bo.cols(); ++S)
            b.base_to_e(i, S) = bo(i, S);
    b.rel_delta = b.base->from_rational(Rat(gens.back()));
    b.sqrt_delta_e.assign(n, Rat(0));
    b.sqrt_delta_e[std::size_t(1) << (r - 1)] = 1;
    return b.finish(spec);
}

FieldPtr FieldBuilder::totally_real_poly(FieldSpec const& spec)
{
    IntPolynomial const& g = spec.poly;
    int n = g.degree();
    if (n < 1 || g.leading() != 1)
        throw InvalidInput("poly: defining polynomial must be monic of degree >= 1");
    if (gcd(g, g.derivative()).degree() > 0)
        throw InvalidInput("poly: polynomial is not squarefree");
    if (real_root_count(g) != n)
        throw InvalidInput("poly: polynomial is not totally real");
    if (!irreducible_totally_real(g))
        throw InvalidInput("poly: polynomial is reducible");
    FieldBuilder b;
    b.n = static_cast<std::size_t>(n);
    std::size_t N = b.n;
    b.c.assign(N * N, RatVector(N));
    // theta^i theta^j reduced modulo g
    ThetaAlgebra A{g, N};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            RatVector a(N), c2(N);
            a[i] = 1;
            c2[j] = 1;
            b.c[i * N + j] = A.mul(a, c2);
        }
    b.one.assign(N, Rat(0));
    b.one[0] = 1;
    RatVector th(N);
    if (N == 1)
        th[0] = Rat(-g.coeff(0));
    else
        th[1] = 1;
    b.theta_candidates = {th};
    b.order = RatMatrix::identity(N);
    b.z_theta_order = true;
    b.galois_search = true;
    return b.finish(spec);
}

FieldPtr FieldBuilder::relative_quadratic(FieldSpec const& spec)
{
    FieldPtr F = NumberField::build(*spec.base);
    if (!F->totally_real())
        throw InvalidInput("relquad: base field must be totally real");
    std::size_t nF = F->degree();
    if (spec.delta.size() != nF)
        throw InvalidInput("relquad: delta needs " + std::to_string(nF) + " coordinates on the base basis");
    FieldElement delta(*F, spec.delta);
    if (!is_totally_neg(delta))
        throw InvalidInput("relquad: delta must be totally negative");
    std::size_t n = 2 * nF;
    FieldBuilder b;
    b.n = n;
    b.c.assign(n * n, RatVector(n));
    for (std::size_t i = 0; i < nF; ++i)
        for (std::size_t j = 0; j < nF; ++j) {
            IntVector const& t = F->table(i, j);
            FieldElement td = FieldElement(*F, t) * delta;
            for (std::size_t k = 0; k < nF; ++k) {
                b.c[i * n + j][k] = Rat(t[k]);
                b.c[i * n + (nF + j)][nF + k] = Rat(t[k]);
                b.c[(nF + i) * n + j][nF + k] = Rat(t[k]);
                b.c[(nF + i) * n + (nF + j)][k] = Rat(td.num()[k]);
            }
        }
    b.one.assign(n, Rat(0));
    b.one[0] = 1;
    IntVector thF = nF > 1 ? F->theta_powers().row(1) : IntVector{Int(0)};
    for (long k = 0; k < 40; ++k) {
        RatVector th(n);
        th[nF] = 1;
        for (std::size_t i = 0; i < nF; ++i)
            th[i] = Rat(thF[i] * k);
        b.theta_candidates.push_back(th);
    }
    b.order = RatMatrix::identity(n);

    auto block_matrix = [&](IntMatrix const& T, FieldElement const& u, int sign) {
        RatMatrix M(n, n);
        for (std::size_t i = 0; i < nF; ++i) {
            for (std::size_t j = 0; j < nF; ++j)
                M(i, j) = Rat(T(i, j));
            FieldElement img = FieldElement(*F, T.row(i)) * u;
            for (std::size_t j = 0; j < nF; ++j) {
                Rat q(sign * img.num()[j], img.den());
                q.canonicalize();
                M(nF + i, nF + j) = q;
            }
        }
        return M;
    };
    IntMatrix idF = IntMatrix::identity(nF);
    b.relconj_e = block_matrix(idF, F->one(), -1);
    b.conj_e = b.relconj_e;
    bool normal = F->galois();
    std::vector<RatMatrix> auts;
    if (normal) {
        for (std::size_t t = 0; t < F->automorphisms().size(); ++t) {
            FieldElement td = F->apply(t, delta);
            auto w = sqrt_in_field(*F, td * delta);
            if (!w) {
                normal = false;
                break;
            }
            FieldElement u = *w / delta;
            auts.push_back(block_matrix(F->automorphisms()[t], u, 1));
            auts.push_back(block_matrix(F->automorphisms()[t], u, -1));
        }
    }
    if (!normal)
        auts = {RatMatrix::identity(n), *b.relconj_e};
    b.auts_e = auts;
    b.base = F;
    b.base_to_e = RatMatrix(nF, n);
    for (std::size_t i = 0; i < nF; ++i)
        b.base_to_e(i, i) = 1;
    b.rel_delta = delta;
    b.sqrt_delta_e.assign(n, Rat(0));
    b.sqrt_delta_e[nF] = 1;
    return b.finish(spec);
}

FieldPtr FieldBuilder::explicit_order(FieldSpec const& spec)
{
    std::size_t n = spec.table.size();
    if (n == 0)
        throw InvalidInput("explicit order: empty table");
    FieldBuilder b;
    b.n = n;
    b.c.assign(n * n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.table[i].size() != n)
            throw InvalidInput("explicit order: table must be n x n x n");
        for (std::size_t j = 0; j < n; ++j) {
            if (spec.table[i][j].size() != n)
                throw InvalidInput("explicit order: table must be n x n x n");
            for (std::size_t k = 0; k < n; ++k)
                b.c[i * n + j][k] = Rat(spec.table[i][j][k]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (spec.table[i][j] != spec.table[j][i])
                throw InvalidInput("explicit order: table is not commutative");
            IntVector e(n);
            e[j] = 1;
            if (spec.table[0][j] != e)
                throw InvalidInput("explicit order: basis element 0 must be 1");
        }
    b.one.assign(n, Rat(0));
    b.one[0] = 1;
    for (long k = 0; k < 40; ++k) {
        RatVector th(n);
        for (std::size_t i = 1; i < n; ++i)
            th[i] = Rat(1 + static_cast<long>(i - 1) * k);
        if (n == 1)
            th[0] = 1;
        b.theta_candidates.push_back(th);
    }
    b.order = RatMatrix::identity(n);
    b.asserted_maximal = true;
    b.asserted_disc = spec.disc;
    b.galois_search = true;
    FieldPtr K = b.finish(spec);
    if (!K->totally_real())
        throw InvalidInput("explicit order: only totally real fields are supported");
    return K;
}

FieldPtr NumberField::build(FieldSpec const& spec)
{
    switch (spec.kind) {
    case FieldSpec::Kind::Rationals:
        return FieldBuilder::rationals(spec);
    case FieldSpec::Kind::RealQuadratic:
        if (spec.m <= 1)
            throw InvalidInput("realquad: m must be a squarefree integer > 1");
        return FieldBuilder::multiquadratic(spec, {spec.m});
    case FieldSpec::Kind::Multiquadratic:
        return FieldBuilder::multiquadratic(spec, spec.gens);
    case FieldSpec::Kind::TotallyRealPoly:
        return FieldBuilder::totally_real_poly(spec);
    case FieldSpec::Kind::RelativeQuadratic:
        return FieldBuilder::relative_quadratic(spec);
    case FieldSpec::Kind::ExplicitOrder:
        return FieldBuilder::explicit_order(spec);
    }
    throw InvalidInput("unknown field kind");
}

} // namespace qms

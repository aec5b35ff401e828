#include "qmsieve/exact/int_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qms {

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    for (long c : coeffs)
        c_.emplace_back(c);
    normalize();
}

void IntPolynomial::normalize()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

IntPolynomial IntPolynomial::monomial(Int const& c, int deg)
{
    std::vector<Int> v(static_cast<std::size_t>(deg) + 1);
    v[static_cast<std::size_t>(deg)] = c;
    return IntPolynomial(std::move(v));
}

Int IntPolynomial::coeff(int i) const
{
    if (i < 0 || i > degree())
        return 0;
    return c_[static_cast<std::size_t>(i)];
}

Int const& IntPolynomial::leading() const
{
    if (c_.empty())
        throw InvalidInput("leading coefficient of zero polynomial");
    return c_.back();
}

Int IntPolynomial::eval(Int const& x) const
{
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + *it;
    return r;
}

Rat IntPolynomial::eval(Rat const& x) const
{
    // Horner on the numerator: d^deg p(n/d).
    if (c_.empty())
        return 0;
    Int n = x.get_num(), d = x.get_den();
    Int r = 0, dp = 1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * n + *it * dp;
        dp *= d;
    }
    Rat out(r, pow(d, static_cast<unsigned long>(degree())));
    out.canonicalize();
    return out;
}

int IntPolynomial::sign_at(Rat const& x) const
{
    if (c_.empty())
        return 0;
    Int n = x.get_num(), d = x.get_den();
    Int r = 0, dp = 1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * n + *it * dp;
        dp *= d;
    }
    return sgn(r);
}

int IntPolynomial::sign_at_infinity(bool positive) const
{
    if (c_.empty())
        return 0;
    int s = sgn(leading());
    if (!positive && degree() % 2 == 1)
        s = -s;
    return s;
}

IntPolynomial IntPolynomial::derivative() const
{
    if (degree() <= 0)
        return {};
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
}

Int IntPolynomial::content() const
{
    Int g = 0;
    for (auto const& c : c_)
        g = qms::gcd(g, c);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    if (c_.empty())
        return {};
    Int g = content();
    if (sgn(leading()) < 0)
        g = -g;
    std::vector<Int> v(c_);
    for (auto& c : v)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const
{
    std::vector<Int> v(c_);
    for (auto& c : v)
        c = -c;
    return IntPolynomial(std::move(v));
}

IntPolynomial operator+(IntPolynomial const& a, IntPolynomial const& b)
{
    std::vector<Int> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] += b.c_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator-(IntPolynomial const& a, IntPolynomial const& b) { return a + (-b); }

IntPolynomial operator*(IntPolynomial const& a, IntPolynomial const& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Int> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(Int const& s, IntPolynomial const& a)
{
    std::vector<Int> v(a.c_);
    for (auto& c : v)
        c *= s;
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string(char var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Int const& c = c_[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        Int a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || a != 1)
            os << a;
        if (i >= 1)
            os << var;
        if (i >= 2)
            os << '^' << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, IntPolynomial const& p) { return os << p.to_string(); }

IntPolynomial pseudo_remainder(IntPolynomial const& a, IntPolynomial const& b)
{
    if (b.is_zero())
        throw InvalidInput("pseudo_remainder by zero");
    std::vector<Int> r(a.coefficients());
    int db = b.degree();
    Int const& lb = b.leading();
    int e = a.degree() - db + 1;
    auto deg = [&]() {
        int d = static_cast<int>(r.size()) - 1;
        while (d >= 0 && r[static_cast<std::size_t>(d)] == 0)
            --d;
        return d;
    };
    int dr = deg();
    while (dr >= db) {
        Int lr = r[static_cast<std::size_t>(dr)];
        for (auto& c : r)
            c *= lb;
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(dr - db + i)] -= lr * b.coefficients()[static_cast<std::size_t>(i)];
        --e;
        dr = deg();
    }
    if (e > 0) {
        Int f = pow(lb, static_cast<unsigned long>(e));
        for (auto& c : r)
            c *= f;
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial divide_exact(IntPolynomial const& a, IntPolynomial const& b)
{
    if (b.is_zero())
        throw InvalidInput("divide_exact by zero");
    if (a.is_zero())
        return {};
    int da = a.degree(), db = b.degree();
    if (da < db)
        throw std::domain_error("divide_exact: not divisible");
    std::vector<Int> r(a.coefficients());
    std::vector<Int> q(static_cast<std::size_t>(da - db + 1));
    Int const& lb = b.leading();
    for (int i = da - db; i >= 0; --i) {
        Int const& top = r[static_cast<std::size_t>(i + db)];
        if (!divides(lb, top))
            throw std::domain_error("divide_exact: not divisible");
        Int qi;
        mpz_divexact(qi.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        q[static_cast<std::size_t>(i)] = qi;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i + j)] -= qi * b.coefficients()[static_cast<std::size_t>(j)];
    }
    for (auto const& c : r)
        if (c != 0)
            throw std::domain_error("divide_exact: not divisible");
    return IntPolynomial(std::move(q));
}

IntPolynomial gcd(IntPolynomial const& a0, IntPolynomial const& b0)
{
    IntPolynomial a = a0.primitive_part(), b = b0.primitive_part();
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_remainder(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive_part();
}

IntPolynomial squarefree_part(IntPolynomial const& p)
{
    if (p.degree() <= 0)
        return p.primitive_part();
    IntPolynomial g = gcd(p, p.derivative());
    return divide_exact(p.primitive_part(), g);
}

Int resultant(IntPolynomial const& a0, IntPolynomial const& b0)
{
    if (a0.is_zero() || b0.is_zero())
        return 0;
    Int ca = a0.content(), cb = b0.content();
    IntPolynomial A = divide_exact(a0, IntPolynomial::constant(ca));
    IntPolynomial B = divide_exact(b0, IntPolynomial::constant(cb));
    Int t = pow(ca, static_cast<unsigned long>(B.degree())) * pow(cb, static_cast<unsigned long>(A.degree()));
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if (A.degree() % 2 == 1 && B.degree() % 2 == 1)
            s = -1;
    }
    Int g = 1;
    Rat h = 1;
    while (B.degree() > 0) {
        int delta = A.degree() - B.degree();
        if (A.degree() % 2 == 1 && B.degree() % 2 == 1)
            s = -s;
        IntPolynomial R = pseudo_remainder(A, B);
        A = B;
        // B = R / (g h^delta), exact over Z
        Rat div = Rat(g) * Rat(pow(h.get_num(), static_cast<unsigned long>(delta)),
                              pow(h.get_den(), static_cast<unsigned long>(delta)));
        div.canonicalize();
        if (div.get_den() != 1)
            throw std::logic_error("resultant: non-integral subresultant divisor");
        if (R.is_zero())
            return 0;
        B = divide_exact(R, IntPolynomial::constant(div.get_num()));
        g = A.leading();
        // h = h^(1-delta) g^delta
        Rat gd(pow(g, static_cast<unsigned long>(delta)));
        Rat hp = 1;
        for (int i = 0; i < delta - 1; ++i)
            hp *= h;
        h = gd / hp;
        h.canonicalize();
    }
    if (B.is_zero())
        return 0;
    // h = lc(B)^deg(A) h^(1-deg A)
    int dA = A.degree();
    Rat hh(pow(B.leading(), static_cast<unsigned long>(dA)));
    for (int i = 0; i < dA - 1; ++i)
        hh /= h;
    if (dA == 0)
        hh *= h;
    hh.canonicalize();
    if (hh.get_den() != 1)
        throw std::logic_error("resultant: non-integral result");
    return s * t * hh.get_num();
}

Int discriminant(IntPolynomial const& p)
{
    int n = p.degree();
    if (n < 1)
        throw InvalidInput("discriminant of constant polynomial");
    Int r = resultant(p, p.derivative());
    Int q;
    mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 == 1)
        q = -q;
    return q;
}

namespace {

std::vector<IntPolynomial> sturm_sequence(IntPolynomial const& p)
{
    std::vector<IntPolynomial> seq{p, p.derivative()};
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        IntPolynomial const& a = seq[seq.size() - 2];
        IntPolynomial const& b = seq.back();
        IntPolynomial r = pseudo_remainder(a, b);
        // prem = lc(b)^k rem; we need -rem up to a positive factor
        int k = a.degree() - b.degree() + 1;
        bool flip = sgn(b.leading()) < 0 && k % 2 == 1;
        if (r.is_zero())
            break;
        Int c = r.content();
        r = divide_exact(r, IntPolynomial::constant(c));
        seq.push_back(flip ? r : -r);
    }
    if (seq.back().is_zero())
        seq.pop_back();
    return seq;
}

int variations(std::vector<IntPolynomial> const& seq, Endpoint const& e)
{
    int v = 0, last = 0;
    for (auto const& q : seq) {
        int s;
        switch (e.kind) {
        case Endpoint::Kind::NegInf: s = q.sign_at_infinity(false); break;
        case Endpoint::Kind::PosInf: s = q.sign_at_infinity(true); break;
        default: s = q.sign_at(e.value);
        }
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

} // namespace

int sturm_count(IntPolynomial const& p, Endpoint const& lo, Endpoint const& hi)
{
    if (p.is_zero())
        throw InvalidInput("sturm_count: zero polynomial");
    if (p.degree() == 0)
        return 0;
    IntPolynomial q = squarefree_part(p);
    auto seq = sturm_sequence(q);
    // V(a) - V(b) counts roots in (a, b]; drop a root sitting at b.
    int c = variations(seq, lo) - variations(seq, hi);
    if (hi.kind == Endpoint::Kind::Finite && q.sign_at(hi.value) == 0)
        --c;
    return std::max(c, 0);
}

int real_root_count(IntPolynomial const& p)
{
    return sturm_count(p, Endpoint::neg_inf(), Endpoint::pos_inf());
}

Rat cauchy_root_bound(IntPolynomial const& p)
{
    if (p.degree() < 1)
        return 1;
    Int m = 0;
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, Int(abs(p.coeff(i))));
    Rat b(m, abs(p.leading()));
    b.canonicalize();
    return b + 1;
}

std::vector<RationalInterval> isolate_real_roots(IntPolynomial const& p, Rat const& max_width)
{
    if (p.is_zero())
        throw InvalidInput("isolate_real_roots: zero polynomial");
    if (max_width <= 0)
        throw InvalidInput("isolate_real_roots: width must be positive");
    std::vector<RationalInterval> out;
    if (p.degree() == 0)
        return out;
    IntPolynomial q = squarefree_part(p);
    auto seq = sturm_sequence(q);
    auto count = [&](Rat const& a, Rat const& b) {
        int c = variations(seq, Endpoint::at(a)) - variations(seq, Endpoint::at(b));
        if (q.sign_at(b) == 0)
            --c;
        return c;
    };
    Rat B = cauchy_root_bound(q);
    struct Job {
        Rat a, b;
    };
    std::vector<Job> stack{{-B, B}};
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        int c = count(j.a, j.b);
        if (c == 0)
            continue;
        bool ends_ok = q.sign_at(j.a) != 0 && q.sign_at(j.b) != 0;
        if (c == 1 && ends_ok && j.b - j.a <= max_width) {
            out.push_back({j.a, j.b});
            continue;
        }
        Rat m = (j.a + j.b) / 2;
        if (q.sign_at(m) == 0)
            out.push_back({m, m});
        stack.push_back({j.a, m});
        stack.push_back({m, j.b});
    }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) { return x.lo < y.lo; });
    return out;
}

} // namespace qms

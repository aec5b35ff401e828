#include "qmsieve/field/number_field.hpp"

#include <sstream>

namespace qms {

FieldElement::FieldElement(NumberField const& K, IntVector num, Int den)
    : K_(&K), num_(std::move(num)), den_(std::move(den))
{
    if (num_.size() != K.degree())
        throw InvalidInput("FieldElement: wrong coordinate count");
    normalize();
}

void FieldElement::normalize()
{
    if (den_ == 0)
        throw std::domain_error("FieldElement: zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_)
            x = -x;
    }
    if (den_ == 1)
        return;
    Int g = den_;
    for (auto const& x : num_) {
        if (g == 1)
            return;
        g = gcd(g, x);
    }
    if (g != 1) {
        den_ /= g;
        for (auto& x : num_)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

bool FieldElement::is_zero() const
{
    for (auto const& x : num_)
        if (x != 0)
            return false;
    return true;
}

bool FieldElement::is_rational() const
{
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0)
            return false;
    return true;
}

Rat FieldElement::as_rational() const
{
    if (!is_rational())
        throw std::domain_error("FieldElement: not rational");
    Rat r(num_[0], den_);
    r.canonicalize();
    return r;
}

FieldElement FieldElement::operator-() const
{
    IntVector v = num_;
    for (auto& x : v)
        x = -x;
    return FieldElement(*K_, std::move(v), den_);
}

FieldElement operator+(FieldElement const& a, FieldElement const& b)
{
    IntVector v(a.num_.size());
    if (a.den_ == b.den_) {
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = a.num_[i] + b.num_[i];
        return FieldElement(*a.K_, std::move(v), a.den_);
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    return FieldElement(*a.K_, std::move(v), a.den_ * b.den_);
}

FieldElement operator-(FieldElement const& a, FieldElement const& b) { return a + (-b); }

FieldElement operator*(FieldElement const& a, FieldElement const& b)
{
    return FieldElement(*a.K_, a.K_->multiply(a.num_, b.num_), a.den_ * b.den_);
}

FieldElement operator*(Rat const& s, FieldElement const& a)
{
    IntVector v = a.num_;
    for (auto& x : v)
        x *= s.get_num();
    return FieldElement(*a.K_, std::move(v), a.den_ * s.get_den());
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw std::domain_error("FieldElement: inverse of zero");
    RatMatrix m = mult_matrix(*this);
    RatVector e(num_.size());
    e[0] = 1;
    RatVector y = solve_left(m, e);
    Int d = 1;
    for (auto const& c : y)
        d = lcm(d, c.get_den());
    IntVector v(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        Rat t = y[i] * Rat(d);
        v[i] = t.get_num();
    }
    return FieldElement(*K_, std::move(v), d);
}

FieldElement operator/(FieldElement const& a, FieldElement const& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(unsigned long e) const
{
    FieldElement r = K_->one(), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

bool FieldElement::operator<(FieldElement const& o) const
{
    if (den_ != o.den_)
        return den_ < o.den_;
    return num_ < o.num_;
}

std::string FieldElement::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < num_.size(); ++i)
        os << (i ? "," : "") << num_[i];
    os << "]";
    if (den_ != 1)
        os << "/" << den_;
    return os.str();
}

json FieldElement::to_json() const
{
    json j;
    j["num"] = ints_to_json(num_);
    j["den"] = int_to_json(den_);
    return j;
}

std::ostream& operator<<(std::ostream& os, FieldElement const& x) { return os << x.to_string(); }

RatMatrix mult_matrix(FieldElement const& x)
{
    NumberField const& K = x.field();
    std::size_t n = K.degree();
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        IntVector r = K.multiply(e, x.num());
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = Rat(r[j], x.den());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j).canonicalize();
    return m;
}

namespace {

IntMatrix int_mult_matrix(NumberField const& K, IntVector const& a)
{
    std::size_t n = K.degree();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a[j] == 0)
                continue;
            IntVector const& t = K.table(i, j);
            for (std::size_t k = 0; k < n; ++k)
                m(i, k) += a[j] * t[k];
        }
    return m;
}

} // namespace

Rat norm(FieldElement const& x)
{
    Int d = determinant(int_mult_matrix(x.field(), x.num()));
    Rat r(d, pow(x.den(), x.field().degree()));
    r.canonicalize();
    return r;
}

Rat trace(FieldElement const& x)
{
    Int t = 0;
    auto const& tv = x.field().trace_vector();
    for (std::size_t i = 0; i < tv.size(); ++i)
        t += x.num()[i] * tv[i];
    Rat r(t, x.den());
    r.canonicalize();
    return r;
}

IntPolynomial char_poly(FieldElement const& x)
{
    IntVector c = charpoly_coefficients(int_mult_matrix(x.field(), x.num()));
    if (x.den() == 1)
        return IntPolynomial(c);
    // roots of the integral polynomial are den * conjugates; substitute t -> den t
    Int s = 1;
    for (auto& ci : c) {
        ci *= s;
        s *= x.den();
    }
    return IntPolynomial(c).primitive_part();
}

bool is_totally_nonneg(FieldElement const& x)
{
    if (x.is_zero())
        return true;
    return sturm_count(char_poly(x), Endpoint::neg_inf(), Endpoint::at(0)) == 0;
}

bool is_totally_neg(FieldElement const& x)
{
    if (x.is_zero())
        return false;
    IntPolynomial cp = char_poly(x);
    IntPolynomial sq = squarefree_part(cp);
    if (sturm_count(sq, Endpoint::neg_inf(), Endpoint::pos_inf()) != sq.degree())
        return false;
    return sturm_count(sq, Endpoint::at(0), Endpoint::pos_inf()) == 0;
}

} // namespace qms

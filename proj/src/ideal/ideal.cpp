#include "qmsieve/ideal/ideal.hpp"

#include "qmsieve/exact/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace qms {

namespace {

std::vector<IntVector> mult_rows(NumberField const& K, IntVector const& y)
{
    std::size_t n = K.degree();
    std::vector<IntVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        rows.push_back(K.multiply(e, y));
    }
    return rows;
}

Int abs_det(IntMatrix const& H)
{
    Int d = 1;
    for (std::size_t i = 0; i < H.rows(); ++i)
        d *= H(i, i);
    return abs(d);
}

/* Ideal from a rational basis-like generating set (rows already closed
 * under the order or about to be HNF-reduced as a Z-module). */
Ideal from_rational_rows(NumberField const& K, RatMatrix const& R)
{
    Int d = 1;
    for (auto const& x : R.data())
        d = lcm(d, x.get_den());
    IntMatrix M(R.rows(), R.cols());
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j)
            M(i, j) = Rat(R(i, j) * Rat(d)).get_num();
    return Ideal(K, hnf_basis(M), d);
}

} // namespace

Ideal::Ideal(NumberField const& K, IntMatrix H, Int den) : K_(&K), H_(std::move(H)), den_(std::move(den))
{
    normalize();
}

void Ideal::normalize()
{
    std::size_t n = K_->degree();
    bool is_hnf = H_.rows() == n && H_.cols() == n;
    for (std::size_t i = 0; is_hnf && i < n; ++i) {
        if (H_(i, i) <= 0)
            is_hnf = false;
        for (std::size_t j = 0; is_hnf && j < i; ++j)
            if (H_(i, j) != 0)
                is_hnf = false;
        for (std::size_t r = 0; is_hnf && r < i; ++r)
            if (H_(r, i) < 0 || H_(r, i) >= H_(i, i))
                is_hnf = false;
    }
    if (!is_hnf)
        H_ = hnf_basis(H_);
    if (H_.rows() != n || H_.cols() != n)
        throw InvalidInput("Ideal: basis matrix must have full rank");
    if (den_ <= 0)
        throw InvalidInput("Ideal: denominator must be positive");
    if (den_ == 1)
        return;
    Int g = den_;
    for (auto const& x : H_.data()) {
        if (g == 1)
            return;
        g = gcd(g, x);
    }
    if (g != 1) {
        den_ /= g;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                H_(i, j) /= g;
    }
}

Ideal Ideal::unit(NumberField const& K) { return Ideal(K, IntMatrix::identity(K.degree())); }

Ideal Ideal::principal(FieldElement const& x)
{
    if (x.is_zero())
        throw InvalidInput("principal ideal of zero");
    return generated_by(x.field(), {x});
}

Ideal Ideal::generated_by(NumberField const& K, std::vector<FieldElement> const& gens)
{
    std::size_t n = K.degree();
    Int d = 1;
    for (auto const& g : gens)
        d = lcm(d, g.den());
    std::vector<IntVector> rows;
    Int D = 0;
    for (auto const& g : gens) {
        if (g.is_zero())
            continue;
        IntVector y = g.num();
        Int s = d / g.den();
        for (auto& c : y)
            c *= s;
        auto r = mult_rows(K, y);
        if (D == 0) {
            IntMatrix M(n, n);
            for (std::size_t i = 0; i < n; ++i)
                M.set_row(i, r[i]);
            D = abs(determinant(M));
        }
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (D == 0)
        throw InvalidInput("ideal generated by zero");
    return Ideal(K, hnf_mod(rows, D, n), d);
}

bool Ideal::is_unit() const { return den_ == 1 && H_ == IntMatrix::identity(K_->degree()); }

Rat Ideal::norm() const
{
    Rat r(abs_det(H_), qms::pow(den_, static_cast<unsigned long>(K_->degree())));
    r.canonicalize();
    return r;
}

bool Ideal::contains(FieldElement const& x) const
{
    IntVector v = x.num();
    for (auto& c : v) {
        c *= den_;
        if (!divides(x.den(), c))
            return false;
        c /= x.den();
    }
    return in_row_lattice(H_, v);
}

bool Ideal::is_subset_of(Ideal const& o) const
{
    for (std::size_t i = 0; i < H_.rows(); ++i)
        if (!o.contains(FieldElement(*K_, H_.row(i), den_)))
            return false;
    return true;
}

Int Ideal::minimum() const
{
    if (den_ != 1)
        throw InvalidInput("Ideal::minimum: ideal is not integral");
    // m e_0 in the lattice iff m * (row 0 of H^-1) is integral
    RatMatrix inv = qms::inverse(to_rat(H_));
    Int m = 1;
    for (std::size_t j = 0; j < inv.cols(); ++j)
        m = lcm(m, inv(0, j).get_den());
    return m;
}

Ideal Ideal::operator*(Ideal const& o) const
{
    std::size_t n = K_->degree();
    std::vector<IntVector> rows;
    rows.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows.push_back(K_->multiply(H_.row(i), o.H_.row(j)));
    Int D = abs_det(H_) * abs_det(o.H_);
    return Ideal(*K_, hnf_mod(rows, D, n), den_ * o.den_);
}

Ideal Ideal::operator+(Ideal const& o) const
{
    std::size_t n = K_->degree();
    Int L = lcm(den_, o.den_);
    Int s1 = L / den_, s2 = L / o.den_;
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector a = H_.row(i), b = o.H_.row(i);
        for (auto& x : a)
            x *= s1;
        for (auto& x : b)
            x *= s2;
        rows.push_back(a);
        rows.push_back(b);
    }
    Int D = abs_det(H_) * qms::pow(s1, static_cast<unsigned long>(n));
    return Ideal(*K_, hnf_mod(rows, D, n), L);
}

Ideal Ideal::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Ideal r = unit(*K_), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

Ideal Ideal::dual() const
{
    // dual basis of H/den under the trace form: den * (H T H^t)^-1 H
    RatMatrix H = to_rat(H_);
    RatMatrix G = H * to_rat(K_->trace_form()) * H.transpose();
    RatMatrix D = qms::inverse(G) * H;
    Rat s(den_);
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            D(i, j) *= s;
    return from_rational_rows(*K_, D);
}

Ideal Ideal::inverse() const
{
    // I^-1 = (I * O^dual)^dual
    return ((*this) * unit(*K_).dual()).dual();
}

Ideal Ideal::scaled(FieldElement const& x) const { return (*this) * principal(x); }

bool Ideal::operator<(Ideal const& o) const
{
    if (den_ != o.den_)
        return den_ < o.den_;
    return H_.data() < o.H_.data();
}

json Ideal::to_json() const
{
    json rows = json::array();
    for (std::size_t i = 0; i < H_.rows(); ++i)
        rows.push_back(ints_to_json(H_.row(i)));
    json j;
    j["field"] = K_->id();
    j["den"] = int_to_json(den_);
    j["hnf"] = rows;
    return j;
}

std::string Ideal::to_string() const
{
    std::ostringstream os;
    os << H_;
    if (den_ != 1)
        os << "/" << den_;
    return os.str();
}

IntVector reduce_mod(Ideal const& I, IntVector const& v0)
{
    IntMatrix const& H = I.hnf();
    IntVector v = v0;
    for (std::size_t c = 0; c < H.rows(); ++c) {
        if (v[c] >= 0 && v[c] < H(c, c))
            continue;
        Int q = floor_div(v[c], H(c, c));
        for (std::size_t j = c; j < H.cols(); ++j)
            v[j] -= q * H(c, j);
    }
    return v;
}

bool PrimeIdeal::operator<(PrimeIdeal const& o) const
{
    if (p != o.p)
        return p < o.p;
    if (f != o.f)
        return f < o.f;
    if (e != o.e)
        return e < o.e;
    return ideal < o.ideal;
}

json PrimeIdeal::to_json() const
{
    json j = ideal.to_json();
    j["p"] = int_to_json(p);
    j["e"] = e;
    j["f"] = f;
    if (two_element)
        j["pi"] = two_element->to_json();
    return j;
}

std::string PrimeIdeal::to_string() const
{
    std::ostringstream os;
    os << "P(" << p << ", e=" << e << ", f=" << f;
    if (two_element)
        os << ", " << two_element->to_string();
    os << ")";
    return os.str();
}

Ideal different(NumberField const& K) { return Ideal::unit(K).dual().inverse(); }

Ideal product(NumberField const& K, IdealFactorization const& fac)
{
    Ideal r = Ideal::unit(K);
    for (auto const& [P, k] : fac)
        r = r * P.ideal.pow(k);
    return r;
}

} // namespace qms

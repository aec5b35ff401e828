#include "qmsieve/field/number_field.hpp"

#include <numeric>
#include <sstream>

namespace qms {

IntVector NumberField::multiply(IntVector const& a, IntVector const& b) const
{
    IntVector r(n_);
    Int s;
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j] == 0)
                continue;
            s = a[i] * b[j];
            IntVector const& t = table_[i * n_ + j];
            for (std::size_t k = 0; k < n_; ++k)
                if (t[k] != 0)
                    r[k] += s * t[k];
        }
    }
    return r;
}

FieldElement NumberField::zero() const { return FieldElement(*this, IntVector(n_)); }

FieldElement NumberField::one() const { return from_rational(Rat(1)); }

FieldElement NumberField::from_rational(Rat const& r) const
{
    IntVector v(n_);
    v[0] = r.get_num();
    return FieldElement(*this, std::move(v), r.get_den());
}

FieldElement NumberField::basis_element(std::size_t i) const
{
    IntVector v(n_);
    v.at(i) = 1;
    return FieldElement(*this, std::move(v));
}

FieldElement NumberField::theta() const
{
    if (n_ == 1)
        return from_rational(Rat(-g_.coeff(0)));
    return FieldElement(*this, Winv_.row(1));
}

FieldElement NumberField::from_theta_coords(RatVector const& c) const
{
    RatVector v = c * to_rat(Winv_);
    Int d = 1;
    for (auto const& x : v)
        d = lcm(d, x.get_den());
    IntVector num(n_);
    for (std::size_t i = 0; i < n_; ++i)
        num[i] = Rat(v[i] * Rat(d)).get_num();
    return FieldElement(*this, std::move(num), d);
}

RatVector NumberField::to_theta_coords(FieldElement const& x) const
{
    RatVector out(n_);
    Int dd = x.den() * Wden_;
    for (std::size_t i = 0; i < n_; ++i) {
        if (x.num()[i] == 0)
            continue;
        for (std::size_t j = 0; j <= i; ++j)
            out[j] += Rat(x.num()[i] * W_(i, j));
    }
    for (auto& c : out) {
        c /= Rat(dd);
        c.canonicalize();
    }
    return out;
}

FieldElement NumberField::from_coords(std::vector<long> const& c) const
{
    IntVector v(n_);
    for (std::size_t i = 0; i < n_ && i < c.size(); ++i)
        v[i] = c[i];
    return FieldElement(*this, std::move(v));
}

FieldElement NumberField::apply(std::size_t aut, FieldElement const& x) const
{
    return FieldElement(*this, x.num() * auts_.at(aut), x.den());
}

FieldElement NumberField::conjugate(FieldElement const& x) const
{
    if (!conj_)
        throw InvalidInput("field " + name() + " has no complex conjugation automorphism");
    return apply(*conj_, x);
}

std::size_t NumberField::compose(std::size_t a, std::size_t b) const
{
    // a(b(x)) = x * M_b * M_a
    IntMatrix m = auts_.at(b) * auts_.at(a);
    for (std::size_t i = 0; i < auts_.size(); ++i)
        if (auts_[i] == m)
            return i;
    throw std::logic_error("automorphism list not closed under composition");
}

int NumberField::aut_order(std::size_t a) const
{
    int k = 1;
    for (std::size_t c = a; c != 0; c = compose(a, c))
        ++k;
    return k;
}

int NumberField::galois_exponent() const
{
    int e = 1;
    for (std::size_t a = 0; a < auts_.size(); ++a)
        e = std::lcm(e, aut_order(a));
    return e;
}

std::string NumberField::name() const
{
    std::ostringstream os;
    switch (spec_.kind) {
    case FieldSpec::Kind::Rationals:
        return "Q";
    case FieldSpec::Kind::RealQuadratic:
        os << "Q(sqrt(" << spec_.m << "))";
        break;
    case FieldSpec::Kind::Multiquadratic:
        os << "Q(";
        for (std::size_t i = 0; i < spec_.gens.size(); ++i)
            os << (i ? ", " : "") << "sqrt(" << spec_.gens[i] << ")";
        os << ")";
        break;
    case FieldSpec::Kind::TotallyRealPoly:
        os << "Q[x]/(" << spec_.poly.to_string() << ")";
        break;
    case FieldSpec::Kind::RelativeQuadratic:
        os << base_->name() << "(sqrt(" << rel_delta_.to_string() << "))";
        break;
    case FieldSpec::Kind::ExplicitOrder:
        os << "Q[x]/(" << g_.to_string() << ")";
        break;
    }
    return os.str();
}

RationalInterval NumberField::theta_enclosure(std::size_t place, Rat const& width) const
{
    std::lock_guard<std::mutex> lock(enc_mutex_);
    auto it = enc_cache_.find(place);
    RationalInterval iv = it != enc_cache_.end() ? it->second : real_roots_.at(place);
    if (iv.width() <= width)
        return iv;
    int slo = g_.sign_at(iv.lo);
    while (iv.width() > width) {
        Rat mid = (iv.lo + iv.hi) / 2;
        int s = g_.sign_at(mid);
        if (s == 0) {
            iv = {mid, mid};
            break;
        }
        if (s == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    enc_cache_[place] = iv;
    return iv;
}

RationalInterval NumberField::real_embedding(FieldElement const& x, std::size_t place, Rat const& width) const
{
    if (place >= static_cast<std::size_t>(r1_))
        throw InvalidInput("real_embedding: place index out of range");
    RatVector c = to_theta_coords(x);
    Rat tw = width;
    for (;;) {
        RationalInterval t = theta_enclosure(place, tw);
        // interval Horner
        RationalInterval acc{c[n_ - 1], c[n_ - 1]};
        for (std::size_t k = n_ - 1; k-- > 0;) {
            Rat a = acc.lo * t.lo, b = acc.lo * t.hi, d = acc.hi * t.lo, e = acc.hi * t.hi;
            acc.lo = std::min({a, b, d, e}) + c[k];
            acc.hi = std::max({a, b, d, e}) + c[k];
        }
        if (acc.width() <= width)
            return acc;
        tw /= 1024;
    }
}

std::optional<FieldElement> NumberField::try_descend(FieldElement const& x) const
{
    if (!base_)
        return std::nullopt;
    std::size_t nb = base_->degree();
    RatVector xc(nb);
    for (std::size_t i = 0; i < nb; ++i)
        xc[i] = Rat(x.num()[base_cols_[i]]);
    RatVector y = xc * base_inv_;
    Int d = 1;
    for (auto const& v : y)
        d = lcm(d, v.get_den());
    IntVector num(nb);
    for (std::size_t i = 0; i < nb; ++i)
        num[i] = Rat(y[i] * Rat(d)).get_num();
    // num * E must reproduce x.num * d
    IntVector back = num * base_emb_;
    for (std::size_t j = 0; j < n_; ++j)
        if (back[j] != x.num()[j] * d)
            return std::nullopt;
    return FieldElement(*base_, std::move(num), d * x.den());
}

bool same_field(NumberField const& a, NumberField const& b)
{
    return a.defining_polynomial() == b.defining_polynomial() && a.basis_numerators() == b.basis_numerators() &&
           a.basis_denominator() == b.basis_denominator();
}

FieldElement lift_from_base(NumberField const& K, FieldElement const& y)
{
    if (!K.has_base())
        throw InvalidInput("field " + K.name() + " has no registered base field");
    return FieldElement(K, y.num() * K.base_embedding(), y.den());
}

FieldElement descend_to_base(NumberField const& K, FieldElement const& x)
{
    auto y = K.try_descend(x);
    if (!y)
        throw InvalidInput("element " + x.to_string() + " does not lie in the base field");
    return *y;
}

FieldElement relative_norm(NumberField const& K, FieldElement const& x)
{
    auto rc = K.relative_conjugation();
    if (!rc)
        throw InvalidInput("field " + K.name() + " has no relative conjugation");
    return descend_to_base(K, x * K.apply(*rc, x));
}

} // namespace qms

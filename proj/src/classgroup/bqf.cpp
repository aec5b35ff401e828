#include "qmsieve/classgroup/bqf.hpp"

#include "qmsieve/exact/factor.hpp"
#include "qmsieve/exact/int_poly.hpp"
#include "qmsieve/exact/modp.hpp"

#include <algorithm>
#include <map>

namespace qms {

bool Form::operator<(Form const& o) const
{
    if (a != o.a)
        return a < o.a;
    if (b != o.b)
        return b < o.b;
    return c < o.c;
}

namespace {

bool squarefree(Int const& m)
{
    Int a = abs(m);
    return a != 0 && squarefree_part(a) == a;
}

} // namespace

bool is_fundamental_discriminant(Int const& D)
{
    Int r = floor_div(D, 4) * 4;
    Int m4 = D - r;
    if (m4 == 1)
        return D != 1 && squarefree(D);
    if (m4 != 0)
        return false;
    Int m = D / 4;
    Int mm = m - floor_div(m, 4) * 4;
    return (mm == 2 || mm == 3) && squarefree(m);
}

Int quadratic_field_discriminant(Int const& m)
{
    Int mm = m - floor_div(m, 4) * 4;
    return mm == 1 ? m : Int(4 * m);
}

Form identity_form(Int const& D)
{
    if (divides(Int(4), D))
        return Form{1, 0, -D / 4};
    return Form{1, 1, (1 - D) / 4};
}

bool is_reduced(Form const& f)
{
    if (!(abs(f.b) <= f.a && f.a <= f.c))
        return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

Form reduce(Form f)
{
    Int D = f.discriminant();
    for (;;) {
        // bring b into (-a, a]
        if (!(-f.a < f.b && f.b <= f.a)) {
            Int r = floor_div(f.a - f.b, 2 * f.a);
            f.b += 2 * r * f.a;
            f.c = (f.b * f.b - D) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

Form compose(Form const& f, Form const& g)
{
    Int D = f.discriminant();
    if (g.discriminant() != D)
        throw InvalidInput("compose: forms of different discriminant");
    Int s = (f.b + g.b) / 2;
    Int d1, x1, y1, d, x2, y2;
    xgcd(d1, x1, y1, f.a, g.a);
    xgcd(d, x2, y2, d1, s);
    Int u = x2 * x1, v = x2 * y1, w = y2;
    Int B = (u * f.a * g.b + v * g.a * f.b + w * ((f.b * g.b + D) / 2)) / d;
    Int A = f.a * g.a / (d * d);
    B -= floor_div(B + A, 2 * A) * 2 * A;
    Int num = B * B - D;
    if (!divides(4 * A, num))
        throw std::logic_error("compose: non-integral third coefficient");
    return reduce(Form{A, B, num / (4 * A)});
}

Form inverse(Form const& f) { return reduce(Form{f.a, -f.b, f.c}); }

std::vector<Form> reduced_forms(Int const& D)
{
    if (D >= 0)
        throw InvalidInput("reduced_forms: discriminant must be negative");
    std::vector<Form> out;
    Int amax = isqrt(-D / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (!divides(4 * a, num))
                continue;
            Int c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (gcd(gcd(a, b), c) != 1)
                continue;
            out.push_back(Form{a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Form> prime_form(Int const& D, Int const& q)
{
    if (divides(q, D))
        return std::nullopt;
    if (q == 2) {
        Int r = D - floor_div(D, 8) * 8;
        if (r != 1)
            return std::nullopt;
        return reduce(Form{2, 1, (1 - D) / 8});
    }
    auto roots = roots_mod_p(IntPolynomial({-D, Int(0), Int(1)}), q);
    if (roots.empty())
        return std::nullopt;
    Int b(static_cast<unsigned long>(roots.front()));
    Int diff = b - D;
    if (!divides(Int(2), diff))
        b += q;
    return reduce(Form{q, b, (b * b - D) / (4 * q)});
}

BqfClassGroup bqf_class_group(Int const& D)
{
    if (!is_fundamental_discriminant(D) || D >= 0)
        throw InvalidInput("bqf_class_group: D must be a negative fundamental discriminant");
    BqfClassGroup G;
    G.D = D;
    G.forms = reduced_forms(D);
    G.h = static_cast<long>(G.forms.size());
    Form e = identity_form(D);

    std::vector<long> orders;
    orders.reserve(G.forms.size());
    for (auto const& f : G.forms) {
        long k = 1;
        Form x = f;
        while (!(x == e)) {
            x = compose(x, f);
            ++k;
            if (k > G.h)
                throw std::logic_error("bqf_class_group: element order exceeds h");
        }
        orders.push_back(k);
    }

    // A finite abelian group is determined by its counts |G[l^k]|.
    std::map<Int, std::vector<long>> parts; // l -> exponents of cyclic l-factors
    for (Int const& l : prime_divisors(Int(G.h))) {
        std::vector<long> s; // s[k] = log_l |G[l^k]|
        Int lk = 1;
        for (int k = 0;; ++k) {
            long cnt = 0;
            for (long o : orders)
                if (divides(Int(o), lk))
                    ++cnt;
            long lg = 0;
            for (Int c = cnt; c > 1; c /= l)
                ++lg;
            s.push_back(lg);
            if (k > 0 && s[k] == s[k - 1])
                break;
            lk *= l;
        }
        std::vector<long> exps;
        for (std::size_t k = 1; k < s.size(); ++k) {
            long ge_k = s[k] - s[k - 1];
            long ge_k1 = k + 1 < s.size() ? s[k + 1] - s[k] : 0;
            for (long t = 0; t < ge_k - ge_k1; ++t)
                exps.push_back(static_cast<long>(k));
        }
        std::sort(exps.rbegin(), exps.rend());
        parts[l] = exps;
    }
    std::size_t rank = 0;
    for (auto const& [l, ex] : parts)
        rank = std::max(rank, ex.size());
    std::vector<Int> inv(rank, Int(1)); // largest first
    for (auto const& [l, ex] : parts)
        for (std::size_t i = 0; i < ex.size(); ++i)
            inv[i] *= pow(l, static_cast<unsigned long>(ex[i]));
    std::reverse(inv.begin(), inv.end());
    G.invariants = IntVector(inv.begin(), inv.end());
    return G;
}

} // namespace qms

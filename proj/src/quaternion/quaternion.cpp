#include "qmsieve/quaternion/quaternion.hpp"

#include "qmsieve/exact/factor.hpp"

#include <algorithm>
#include <set>

namespace qms {

namespace {

constexpr unsigned long long kResidueCap = 20000000ULL;

bool in_ideal(Ideal const& I, IntVector const& v)
{
    IntVector r = reduce_mod(I, v);
    return std::all_of(r.begin(), r.end(), [](Int const& c) { return c == 0; });
}

IntVector one_vector(std::size_t n)
{
    IntVector e(n);
    e[0] = 1;
    return e;
}

/* a^k mod I for an integral ideal I. */
IntVector pow_mod(NumberField const& K, Ideal const& I, IntVector a, Int const& k)
{
    IntVector r = reduce_mod(I, one_vector(K.degree()));
    a = reduce_mod(I, a);
    std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t b = bits; b-- > 0;) {
        r = reduce_mod(I, K.multiply(r, r));
        if (mpz_tstbit(k.get_mpz_t(), b))
            r = reduce_mod(I, K.multiply(r, a));
    }
    return r;
}

/* x^2 = u mod I has a solution; exhaustive over the HNF box of I. */
bool square_mod(NumberField const& K, Ideal const& I, IntVector const& u)
{
    IntMatrix const& H = I.hnf();
    std::size_t n = K.degree();
    Int size = 1;
    for (std::size_t i = 0; i < n; ++i)
        size *= H(i, i);
    if (size > Int(static_cast<unsigned long>(kResidueCap)))
        throw ResourceError("is_local_square: residue ring of size " + size.get_str() + " exceeds cap");
    IntVector target = reduce_mod(I, u);
    IntVector x(n);
    for (;;) {
        if (reduce_mod(I, K.multiply(x, x)) == target)
            return true;
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++x[i] < H(i, i))
                break;
            x[i] = 0;
        }
        if (i == n)
            return false;
    }
}

} // namespace

QuaternionData build_quaternion(FieldPtr F, std::vector<PrimeIdeal> ram)
{
    if (!F->totally_real())
        throw InvalidInput("build_quaternion: base field must be totally real");
    if (ram.empty())
        throw InvalidInput("build_quaternion: empty ramification gives the split algebra");
    if (ram.size() % 2 != 0)
        throw InvalidInput("build_quaternion: ramification set must have even cardinality");
    std::sort(ram.begin(), ram.end());
    for (std::size_t i = 1; i < ram.size(); ++i)
        if (ram[i] == ram[i - 1])
            throw InvalidInput("build_quaternion: repeated ramified prime");
    for (auto const& P : ram)
        if (!same_field(P.ideal.field(), *F))
            throw InvalidInput("build_quaternion: ramified prime of another field");
    return QuaternionData{std::move(F), std::move(ram)};
}

QuaternionData build_quaternion(FieldPtr F, std::vector<std::pair<Int, std::size_t>> const& ram)
{
    std::vector<PrimeIdeal> primes;
    for (auto const& [p, i] : ram) {
        if (!is_prime(p))
            throw InvalidInput("build_quaternion: " + p.get_str() + " is not prime");
        auto above = decompose_prime(*F, p);
        if (i >= above.size())
            throw InvalidInput("build_quaternion: F has only " + std::to_string(above.size()) + " primes above " +
                               p.get_str());
        primes.push_back(above[i]);
    }
    return build_quaternion(std::move(F), std::move(primes));
}

Ideal disc_BF(QuaternionData const& B)
{
    Ideal d = Ideal::unit(*B.F);
    for (auto const& P : B.ram)
        d = d * P.ideal;
    return d;
}

Int delta_prime(QuaternionData const& B)
{
    std::set<Int> ps;
    for (auto const& P : B.ram)
        ps.insert(P.p);
    Int d = 1;
    for (auto const& p : ps)
        d *= p;
    return d;
}

Int delta(QuaternionData const& B)
{
    std::set<Int> ps;
    for (auto const& P : B.ram)
        ps.insert(P.p);
    for (auto const& p : prime_divisors(B.F->discriminant()))
        ps.insert(p);
    Int d = 1;
    for (auto const& p : ps)
        d *= p;
    return d;
}

bool is_local_square(FieldElement const& u_in, PrimeIdeal const& P)
{
    if (u_in.is_zero())
        throw InvalidInput("is_local_square: zero");
    NumberField const& K = u_in.field();
    // u d^2 is integral with the same square class
    Rat d(u_in.den());
    FieldElement u = (d * d) * u_in;
    int v = valuation(u, P);
    if (v % 2 != 0)
        return false;
    // t = b/p has valuation -1 at P and is integral at the other primes
    FieldElement t = Rat(1, P.p) * P.anti_uniformizer;
    FieldElement u0 = u * t.pow(static_cast<unsigned long>(v));
    if (!u0.is_integral() || valuation(u0, P) != 0)
        throw std::logic_error("is_local_square: unit normalization failed");
    if (P.p != 2) {
        Int q = P.norm();
        IntVector r = pow_mod(K, P.ideal, u0.num(), (q - 1) / 2);
        IntVector diff = r;
        diff[0] -= 1;
        return in_ideal(P.ideal, diff);
    }
    return square_mod(K, P.ideal.pow(2 * P.e + 1), u0.num());
}

bool splits_B(QuaternionData const& B, Int const& l)
{
    FieldElement m = B.F->from_rational(Rat(-l));
    for (auto const& P : B.ram)
        if (is_local_square(m, P))
            return false;
    return true;
}

bool sufficient_condition(QuaternionData const& B, NumberField const& k)
{
    if (!k.has_base() || !same_field(*k.base(), *B.F))
        throw InvalidInput("sufficient_condition: k must be a relative quadratic extension of F");
    Ideal dk = relative_discriminant(k);
    Ideal d(*B.F, dk.hnf(), dk.den());
    Ideal D = different(*B.F);
    for (auto const& P : B.ram)
        if (valuation(d, P) == 0 && valuation(D, P) == 0)
            return true;
    return false;
}

json QuaternionData::to_json() const
{
    json j;
    j["field"] = F->id();
    json r = json::array();
    for (auto const& P : ram)
        r.push_back(P.to_json());
    j["ram"] = r;
    return j;
}

QuaternionData QuaternionData::from_json(FieldPtr F, json const& j)
{
    if (j.at("field").get<std::string>() != F->id())
        throw InvalidInput("QuaternionData: serialized algebra belongs to another field");
    std::vector<PrimeIdeal> ram;
    for (auto const& pj : j.at("ram")) {
        Int p = int_from_json(pj.at("p"));
        IntMatrix H(F->degree(), F->degree());
        std::size_t i = 0;
        for (auto const& row : pj.at("hnf"))
            H.set_row(i++, ints_from_json(row));
        Ideal I(*F, H);
        auto above = decompose_prime(*F, p);
        auto it = std::find_if(above.begin(), above.end(), [&](PrimeIdeal const& P) { return P.ideal == I; });
        if (it == above.end())
            throw InvalidInput("QuaternionData: serialized prime is not a prime of F");
        ram.push_back(*it);
    }
    return build_quaternion(std::move(F), std::move(ram));
}

} // namespace qms

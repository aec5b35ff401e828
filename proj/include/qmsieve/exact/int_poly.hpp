#ifndef QMSIEVE_EXACT_INT_POLY_HPP
#define QMSIEVE_EXACT_INT_POLY_HPP

#include "qmsieve/exact/arith.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qms {

/* Univariate polynomial over Z, coefficients lowest degree first.
 * Normalized: no trailing zero coefficients; the zero polynomial is empty. */
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial monomial(Int const& c, int deg);
    static IntPolynomial constant(Int const& c) { return monomial(c, 0); }
    static IntPolynomial x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(int i) const;
    Int const& leading() const;
    std::vector<Int> const& coefficients() const { return c_; }

    Int eval(Int const& x) const;
    Rat eval(Rat const& x) const;
    int sign_at(Rat const& x) const;
    /* Sign as x -> +inf (positive) or -inf (negative). */
    int sign_at_infinity(bool positive) const;

    IntPolynomial derivative() const;
    Int content() const;
    IntPolynomial primitive_part() const;

    IntPolynomial operator-() const;
    friend IntPolynomial operator+(IntPolynomial const& a, IntPolynomial const& b);
    friend IntPolynomial operator-(IntPolynomial const& a, IntPolynomial const& b);
    friend IntPolynomial operator*(IntPolynomial const& a, IntPolynomial const& b);
    friend IntPolynomial operator*(Int const& s, IntPolynomial const& a);
    bool operator==(IntPolynomial const& o) const { return c_ == o.c_; }
    bool operator!=(IntPolynomial const& o) const { return !(*this == o); }

    std::string to_string(char var = 'x') const;

  private:
    void normalize();
    std::vector<Int> c_;
};

std::ostream& operator<<(std::ostream& os, IntPolynomial const& p);

/* Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q * b + r. */
IntPolynomial pseudo_remainder(IntPolynomial const& a, IntPolynomial const& b);

/* Exact division a / b; throws if b does not divide a over Z. */
IntPolynomial divide_exact(IntPolynomial const& a, IntPolynomial const& b);

/* Primitive gcd over Q[x], normalized to positive leading coefficient. */
IntPolynomial gcd(IntPolynomial const& a, IntPolynomial const& b);

/* p / gcd(p, p'), primitive. */
IntPolynomial squarefree_part(IntPolynomial const& p);

/* Resultant via the subresultant algorithm. */
Int resultant(IntPolynomial const& a, IntPolynomial const& b);

Int discriminant(IntPolynomial const& p);

struct RationalInterval {
    Rat lo;
    Rat hi;
    Rat width() const { return hi - lo; }
    bool contains(Rat const& x) const { return lo <= x && x <= hi; }
    bool operator==(RationalInterval const& o) const = default;
};

/* An endpoint in Q or one of the two infinities. */
struct Endpoint {
    enum class Kind { NegInf, Finite, PosInf } kind = Kind::Finite;
    Rat value;
    static Endpoint neg_inf() { return {Kind::NegInf, 0}; }
    static Endpoint pos_inf() { return {Kind::PosInf, 0}; }
    static Endpoint at(Rat const& v) { return {Kind::Finite, v}; }
};

/* Number of distinct real roots of p in the open interval (lo, hi).
 * Throws on the zero polynomial. */
int sturm_count(IntPolynomial const& p, Endpoint const& lo, Endpoint const& hi);
int real_root_count(IntPolynomial const& p);

/* Disjoint closed intervals, one per distinct real root, each of width
 * at most max_width and containing exactly one root. Sorted. */
std::vector<RationalInterval> isolate_real_roots(IntPolynomial const& p, Rat const& max_width);

/* Rational bound B with every complex root of p satisfying |z| < B. */
Rat cauchy_root_bound(IntPolynomial const& p);

} // namespace qms

#endif

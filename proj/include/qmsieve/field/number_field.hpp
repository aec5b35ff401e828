#ifndef QMSIEVE_FIELD_NUMBER_FIELD_HPP
#define QMSIEVE_FIELD_NUMBER_FIELD_HPP

#include "qmsieve/exact/int_poly.hpp"
#include "qmsieve/exact/matrix.hpp"
#include "qmsieve/field/field_spec.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qms {

class NumberField;
using FieldPtr = std::shared_ptr<NumberField const>;

/* Element of a number field as (numerators on the integral basis) / den,
 * den > 0 and gcd(numerators, den) = 1. */
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(NumberField const& K, IntVector num, Int den = 1);

    NumberField const& field() const { return *K_; }
    bool has_field() const { return K_ != nullptr; }
    IntVector const& num() const { return num_; }
    Int const& den() const { return den_; }
    Int const& operator[](std::size_t i) const { return num_[i]; }

    bool is_zero() const;
    bool is_integral() const { return den_ == 1; }
    bool is_rational() const;
    Rat as_rational() const; // requires is_rational()

    FieldElement operator-() const;
    friend FieldElement operator+(FieldElement const& a, FieldElement const& b);
    friend FieldElement operator-(FieldElement const& a, FieldElement const& b);
    friend FieldElement operator*(FieldElement const& a, FieldElement const& b);
    friend FieldElement operator*(Rat const& s, FieldElement const& a);
    friend FieldElement operator/(FieldElement const& a, FieldElement const& b);
    FieldElement inverse() const;
    FieldElement pow(unsigned long e) const;

    bool operator==(FieldElement const& o) const { return den_ == o.den_ && num_ == o.num_; }
    bool operator!=(FieldElement const& o) const { return !(*this == o); }
    /* Canonical order: (den, numerators lexicographically). */
    bool operator<(FieldElement const& o) const;

    std::string to_string() const;
    json to_json() const;

  private:
    void normalize();
    NumberField const* K_ = nullptr;
    IntVector num_;
    Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, FieldElement const& x);

/* Row i = coordinates of w_i * x. */
RatMatrix mult_matrix(FieldElement const& x);
Rat norm(FieldElement const& x);
Rat trace(FieldElement const& x);
/* Characteristic polynomial of den(x) * x scaled back: exact over Q,
 * returned as the primitive integral polynomial with the same roots and
 * multiplicities when x is not integral. */
IntPolynomial char_poly(FieldElement const& x);
/* Every real conjugate >= 0; zero counts as nonnegative. */
bool is_totally_nonneg(FieldElement const& x);
/* Nonzero and every conjugate real and negative. */
bool is_totally_neg(FieldElement const& x);

class NumberField {
  public:
    static FieldPtr build(FieldSpec const& spec);

    FieldSpec const& spec() const { return spec_; }
    std::string const& id() const { return id_; }
    std::string name() const;
    std::size_t degree() const { return n_; }
    Int const& discriminant() const { return disc_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    bool totally_real() const { return r2_ == 0; }
    bool totally_imaginary() const { return r1_ == 0; }

    /* Monic minimal polynomial of the primitive element theta. */
    IntPolynomial const& defining_polynomial() const { return g_; }
    /* w_i = (sum_j W(i,j) theta^j) / W_den, lower triangular, w_0 = 1. */
    IntMatrix const& basis_numerators() const { return W_; }
    Int const& basis_denominator() const { return Wden_; }
    /* Row j = theta^j on the integral basis. */
    IntMatrix const& theta_powers() const { return Winv_; }
    /* [O_K : Z[theta]]. */
    Int const& theta_index() const { return index_; }
    /* Primes at which maximality was established, with the method. */
    std::map<Int, std::string> const& certified_primes() const { return certified_; }

    IntVector const& table(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
    IntVector multiply(IntVector const& a, IntVector const& b) const;
    IntVector const& trace_vector() const { return trace_; }
    IntMatrix const& trace_form() const { return traceform_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(Rat const& r) const;
    FieldElement from_int(long v) const { return from_rational(Rat(v)); }
    FieldElement basis_element(std::size_t i) const;
    FieldElement theta() const;
    FieldElement from_theta_coords(RatVector const& c) const;
    RatVector to_theta_coords(FieldElement const& x) const;
    FieldElement from_coords(std::vector<long> const& c) const;

    /* Automorphisms as matrices, row i = sigma(w_i). Index 0 is the
     * identity; the list is sorted by matrix entries after it. */
    std::vector<IntMatrix> const& automorphisms() const { return auts_; }
    bool galois() const { return galois_; }
    std::optional<std::size_t> complex_conjugation() const { return conj_; }
    FieldElement apply(std::size_t aut, FieldElement const& x) const;
    FieldElement conjugate(FieldElement const& x) const;
    /* Composition index: (a o b)(x) = a(b(x)). */
    std::size_t compose(std::size_t a, std::size_t b) const;
    int aut_order(std::size_t a) const;
    /* Exponent of the automorphism group. */
    int galois_exponent() const;

    /* Registered subfield of index 2 (relative quadratic and multiquadratic
     * constructors); rows of base_embedding() are base w_i on this basis. */
    FieldPtr base() const { return base_; }
    IntMatrix const& base_embedding() const { return base_emb_; }
    /* Nontrivial automorphism over the registered base. */
    std::optional<std::size_t> relative_conjugation() const { return relconj_; }
    /* delta with K = base(sqrt delta), on the base basis. */
    FieldElement const& relative_delta() const { return rel_delta_; }
    /* A fixed square root of relative_delta() in this field. */
    FieldElement const& relative_sqrt_delta() const { return sqrt_delta_; }
    bool has_base() const { return base_ != nullptr; }
    /* Solves y * base_embedding() = x; nullopt when x is not in the base. */
    std::optional<FieldElement> try_descend(FieldElement const& x) const;

    /* Gram matrix of T2(x) = Tr(x * conj(x)) on the integral basis. */
    IntMatrix const& t2_gram() const { return t2_; }

    /* Real embeddings: enclosure of sigma_v(x) for real place v (sorted by
     * the real roots of the defining polynomial), of width <= width. */
    RationalInterval real_embedding(FieldElement const& x, std::size_t place, Rat const& width) const;

  private:
    NumberField() = default;
    friend struct FieldBuilder;

    RationalInterval theta_enclosure(std::size_t place, Rat const& width) const;

    FieldSpec spec_;
    std::string id_;
    std::size_t n_ = 1;
    IntPolynomial g_;
    IntMatrix W_, Winv_;
    Int Wden_ = 1, index_ = 1, disc_ = 1;
    int r1_ = 1, r2_ = 0;
    std::vector<IntVector> table_;
    IntVector trace_;
    IntMatrix traceform_;
    std::map<Int, std::string> certified_;
    std::vector<IntMatrix> auts_;
    bool galois_ = false;
    std::optional<std::size_t> conj_;
    FieldPtr base_;
    IntMatrix base_emb_;
    std::optional<std::size_t> relconj_;
    FieldElement rel_delta_;
    FieldElement sqrt_delta_;
    std::vector<std::size_t> base_cols_;
    RatMatrix base_inv_;
    RatMatrix omega_to_e_; // construction coordinates of the integral basis
    IntMatrix t2_;
    std::vector<RationalInterval> real_roots_;

    mutable std::mutex enc_mutex_;
    mutable std::map<std::size_t, RationalInterval> enc_cache_;
};

/* Same field with the same integral basis. */
bool same_field(NumberField const& a, NumberField const& b);

struct BoxOptions {
    unsigned long long cap = 100000000ULL;
};

/* All x in O_K with |sigma(x)|^2 <= R2 at every archimedean place, sorted
 * by coordinates. Supports totally real and CM fields. */
std::vector<FieldElement> enumerate_box(NumberField const& K, Rat const& R2, BoxOptions const& opt = {});

/* x in O_K with x^2 = m, if any (m integral). Of the two roots, the one
 * whose first nonzero coordinate is positive is returned. */
std::optional<FieldElement> sqrt_in_field(NumberField const& K, FieldElement const& m);

/* Squarefree m != 1 with Q(sqrt m) inside K (K Galois), ascending. */
std::vector<Int> quadratic_subfields(NumberField const& K);

/* Relative norm to the registered base and the inclusion of the base. */
FieldElement relative_norm(NumberField const& K, FieldElement const& x);
FieldElement lift_from_base(NumberField const& K, FieldElement const& y);
/* Coordinates on the base, for an element of K lying in the base. */
FieldElement descend_to_base(NumberField const& K, FieldElement const& x);

} // namespace qms

#endif

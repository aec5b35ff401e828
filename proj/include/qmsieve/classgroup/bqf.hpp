#ifndef QMSIEVE_CLASSGROUP_BQF_HPP
#define QMSIEVE_CLASSGROUP_BQF_HPP

#include "qmsieve/exact/matrix.hpp"

#include <optional>
#include <vector>

namespace qms {

/* Positive definite primitive form a x^2 + b x y + c y^2, D = b^2 - 4ac < 0. */
struct Form {
    Int a, b, c;
    Int discriminant() const { return b * b - 4 * a * c; }
    bool operator==(Form const& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(Form const& o) const;
};

bool is_fundamental_discriminant(Int const& D);
/* Discriminant of Q(sqrt m) for squarefree m != 1. */
Int quadratic_field_discriminant(Int const& m);

Form identity_form(Int const& D);
Form reduce(Form f);
Form compose(Form const& f, Form const& g);
Form inverse(Form const& f);
bool is_reduced(Form const& f);

/* All reduced primitive forms of discriminant D, sorted. */
std::vector<Form> reduced_forms(Int const& D);

/* Reduced form of a prime of Q(sqrt D) above q, for q not dividing D and
 * split in Q(sqrt D); nullopt when q is inert or ramified. */
std::optional<Form> prime_form(Int const& D, Int const& q);

struct BqfClassGroup {
    Int D;
    long h = 0;
    IntVector invariants; // d1 | d2 | ..., all > 1
    std::vector<Form> forms;
};

BqfClassGroup bqf_class_group(Int const& D);

} // namespace qms

#endif

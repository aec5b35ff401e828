#ifndef QMSIEVE_EXACT_NORMAL_FORM_HPP
#define QMSIEVE_EXACT_NORMAL_FORM_HPP

#include "qmsieve/exact/matrix.hpp"

#include <vector>

namespace qms {

/* Row-style Hermite normal form. Nonzero rows come first, pivot columns
 * strictly increase, pivots are positive and every entry above a pivot
 * lies in [0, pivot). Zero rows are kept at the bottom. */
struct HnfResult {
    IntMatrix H;
    IntMatrix U; // unimodular, H = U * m
};

HnfResult hnf(IntMatrix const& m);

/* HNF of the row lattice without transform; returns only the nonzero rows. */
IntMatrix hnf_basis(IntMatrix const& m);

/* HNF of the lattice spanned by `gens` together with D * Z^n.
 * Caller guarantees D * Z^n lies in the lattice (D > 0). Returns an
 * n x n upper triangular HNF. Entries stay bounded by D. */
IntMatrix hnf_mod(std::vector<IntVector> const& gens, Int const& D, std::size_t n);

/* Incremental HNF over Z^n, optionally modulo D (D * Z^n inside the lattice). */
class IncrementalHnf {
  public:
    explicit IncrementalHnf(std::size_t n) : n_(n), rows_(n) {}
    void set_modulus(Int const& D);
    void insert(IntVector v);
    bool full_rank() const;
    std::size_t rank() const;
    /* Product of pivots; meaningful once full rank. */
    Int determinant() const;
    /* Canonical n x n HNF (requires full rank). */
    IntMatrix matrix() const;
    Int const& modulus() const { return D_; }

  private:
    void reduce(IntVector& v) const;
    std::size_t n_;
    Int D_ = 0;
    std::vector<IntVector> rows_; // rows_[c] empty or pivot at column c
};

/* Smith normal form invariant factors d1 | d2 | ... (length min(rows, cols)),
 * zeros last. */
IntVector snf(IntMatrix const& m);

struct SnfResult {
    IntMatrix U; // rows x rows unimodular
    IntMatrix V; // cols x cols unimodular
    IntVector d; // U m V = diag(d)
};

SnfResult snf_with_transforms(IntMatrix const& m);

/* Whether the row lattices of a and b coincide (mutual membership). */
bool same_row_lattice(IntMatrix const& a, IntMatrix const& b);

/* Whether v lies in the row lattice of an HNF basis. */
bool in_row_lattice(IntMatrix const& hnf_rows, IntVector const& v);

} // namespace qms

#endif

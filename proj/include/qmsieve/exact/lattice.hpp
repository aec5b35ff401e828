#ifndef QMSIEVE_EXACT_LATTICE_HPP
#define QMSIEVE_EXACT_LATTICE_HPP

#include "qmsieve/exact/matrix.hpp"

#include <functional>
#include <vector>

namespace qms {

struct LllResult {
    IntMatrix U;   // unimodular; reduced basis = U * old basis
    RatMatrix gram; // U * G * U^T
};

/* LLL reduction of a positive definite Gram matrix (delta = 99/100). */
LllResult lll_gram(RatMatrix const& G);

/* Visits every integer x with x^T G x <= C (G positive definite, exact),
 * zero vector included. The visitor returns false to stop early.
 * Raises ResourceError once more than node_cap tree nodes are expanded. */
void fincke_pohst(RatMatrix const& G, Rat const& C,
                  std::function<bool(IntVector const&)> const& visit,
                  unsigned long long node_cap = 100000000ULL);

/* Floating-point variant for heuristic searches; every result must be
 * re-verified exactly by the caller. Bounds carry a small relative slack. */
void fincke_pohst_approx(std::vector<std::vector<double>> const& G, double C,
                         std::function<bool(std::vector<long> const&)> const& visit,
                         unsigned long long node_cap = 100000000ULL);

std::vector<std::vector<double>> to_double(RatMatrix const& m);

} // namespace qms

#endif

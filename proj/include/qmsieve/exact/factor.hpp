#ifndef QMSIEVE_EXACT_FACTOR_HPP
#define QMSIEVE_EXACT_FACTOR_HPP

#include "qmsieve/exact/arith.hpp"

#include <utility>
#include <vector>

namespace qms {

struct FactorBudget {
    unsigned long trial_limit = 1000000;
    unsigned long rho_iterations = 2000000; // per cofactor, across all seeds
};

/* Prime factorization of |n| (n != 0), ascending by prime. Raises
 * ResourceError naming the cofactor when the budget runs out. */
std::vector<std::pair<Int, int>> factor_integer(Int const& n, FactorBudget const& budget = {});

/* Distinct prime divisors of |n|, ascending. */
std::vector<Int> prime_divisors(Int const& n, FactorBudget const& budget = {});

/* Euler phi for small arguments. */
unsigned long euler_phi(unsigned long m);

} // namespace qms

#endif

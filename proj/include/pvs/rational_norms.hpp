#pragma once

#include <optional>
#include <utility>

#include "pvs/ring.hpp"

namespace pvs {

/// Hilbert symbol (a, b)_v over Q_v; v = 0 denotes the real place, otherwise
/// v must be a prime.  Returns +1 or -1.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const mpz_class& v);

/// True iff beta is a norm from Q(sqrt(D)); decided by the product of local
/// symbols (beta, D)_v over the real place, 2, and the odd primes dividing D
/// or beta.  D must not be a perfect square.
bool is_norm_quadratic_rational(const mpz_class& D, const mpq_class& beta,
                                long bound = kDefaultTrialDivisionBound);

/// Brute-force witness search: (a, b) with beta = a^2 - D b^2, where b ranges
/// over rationals of height <= height and a is recovered by a square test.
std::optional<std::pair<mpq_class, mpq_class>> norm_witness_search(const mpz_class& D,
                                                                   const mpq_class& beta,
                                                                   long height);

} // namespace pvs

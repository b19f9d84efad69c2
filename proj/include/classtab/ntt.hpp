#pragma once

#include <cstddef>
#include <vector>

#include "classtab/prime_basis.hpp"

namespace classtab {

/*
 * Product of a and b modulo prime.p by a radix-2 NTT of length the next power
 * of two >= len(a)+len(b)-1. Inputs must be reduced mod p. The result is cut
 * to out_length coefficients (0 means the full length len(a)+len(b)-1).
 * Throws std::invalid_argument if the transform would exceed 2^L.
 */
std::vector<u64> ntt_mul(std::vector<u64> const & a, std::vector<u64> const & b,
                         ntt_prime const & prime, std::size_t out_length = 0);

/* Reference product mod p, quadratic time. */
std::vector<u64> schoolbook_mul(std::vector<u64> const & a, std::vector<u64> const & b, u64 p);

} // namespace classtab

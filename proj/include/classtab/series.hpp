#pragma once

#include <cstddef>
#include <string>

#include "classtab/coeff_table.hpp"

namespace classtab {

/*
 * Theta-type series used by the class number formulas.
 *
 *   theta3    : 1 + 2 q + 2 q^4 + 2 q^9 + ...        (squares)
 *   nabla     : 1 + q + q^3 + q^6 + ...              (triangular numbers)
 *   nabla_q2  : nabla(q^2), exponents j(j+1)
 *
 * The *_sq kinds are the squares of the base kinds, initialized directly.
 */
enum class series_kind { theta3, nabla, nabla_q2, theta3_sq, nabla_sq, nabla_q2_sq };

std::string to_string(series_kind kind);
bool is_squared(series_kind kind);
series_kind base_of(series_kind kind);

/* Default coefficient width for a kind: 1 byte base, 4 bytes squared. */
unsigned default_width(series_kind kind);

/*
 * First `length` coefficients of `kind`, produced in blocks of
 * `partition_size` coefficients (the last block is cut at `length`).
 * Blocks are independent and may be spread over `threads` workers; the result
 * does not depend on either parameter. Throws std::overflow_error if a squared
 * coefficient exceeds `width` bytes.
 */
coeff_table generate(series_kind kind, std::size_t length, std::size_t partition_size,
                     unsigned width = 0, unsigned threads = 1);

/*
 * Schoolbook product of a and b truncated to out_length coefficients, width 8.
 * Accumulation is exact; a coefficient that does not fit in 64 bits throws.
 */
coeff_table convolve_naive(coeff_table const & a, coeff_table const & b, std::size_t out_length);

} // namespace classtab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "classtab/common.hpp"

namespace classtab {

/*
 * Kronecker-Hurwitz class number relation, all quantities scaled by 12 so
 * they are integers. H12[n] = 12 H(n), H(0) = 0; the square indicator plays
 * both sigma and chi.
 *
 * pointwise, for n >= 1:
 *   12H(4n) + 2 sum_{1<=t<=sqrt(4n)} 12H(4n - t^2)
 *     = 24 sum_{d|n, d>=sqrt n} d - 12 chi(n) sqrt(n) + 2 chi(n)
 */
i128 pointwise_lhs12(u64 n, std::vector<u64> const & H12);
i128 pointwise_rhs12(u64 n);
bool verify_pointwise(u64 n, std::vector<u64> const & H12);

/* number of (t, n), t >= 1, 1 <= n <= X, with t^2 - 8n = delta (delta < 0) */
u64 r_count(i64 delta, u64 X);
u64 r_bruteforce(i64 delta, u64 X);

struct verify_report
{
    u64 X = 0;
    i128 lhs = 0;
    i128 rhs = 0;
    bool pass = false;
    /* smallest even n <= 2X failing the pointwise relation, when the aggregate fails */
    std::optional<u64> first_failing_n;

    std::string to_json() const;
};

/*
 * Aggregate relation over the even arguments 2n, n = 1..X: the left side sums
 * 12H(|Δ|) over |Δ| = 8n plus twice r(Δ, X) 12H(|Δ|) over |Δ| <= 8X; the
 * right side sums the divisor expression by a segmented sieve. H12 must
 * cover 0..8X.
 */
verify_report verify_aggregate(u64 X, std::vector<u64> const & H12, unsigned threads = 1);

/* 24 S(m) - 12 chi(m) sqrt(m) + 2 chi(m) summed over m = 2, 4, ..., 2X by sieve */
i128 aggregate_rhs12(u64 X, unsigned threads = 1);

std::string to_string(i128 v);

} // namespace classtab

#include "classtab/trace_verify.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace classtab {

namespace {

u64 h12_at(std::vector<u64> const & H12, u64 n)
{
    if (n >= H12.size()) {
        throw std::out_of_range("Hurwitz table does not reach n = " + std::to_string(n));
    }
    return H12[n];
}

/* sum of divisors d of n with d >= sqrt(n) */
u64 upper_divisor_sum(u64 n)
{
    u64 s = 0;
    for (u64 k = 1; k * k <= n; ++k) {
        if (n % k == 0) {
            s += n / k;
        }
    }
    return s;
}

i128 rhs_term(u64 m, u64 upper_sum)
{
    i128 v = 24 * static_cast<i128>(upper_sum);
    if (is_square(m)) {
        v += 2 - 12 * static_cast<i128>(isqrt(m));
    }
    return v;
}

} // namespace

std::string to_string(i128 v)
{
    if (v == 0) {
        return "0";
    }
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u != 0) {
        s += static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (neg) {
        s += '-';
    }
    std::reverse(s.begin(), s.end());
    return s;
}

i128 pointwise_lhs12(u64 n, std::vector<u64> const & H12)
{
    u64 m = 4 * n;
    i128 v = h12_at(H12, m);
    for (u64 t = 1; t * t <= m; ++t) {
        v += 2 * static_cast<i128>(h12_at(H12, m - t * t));
    }
    return v;
}

i128 pointwise_rhs12(u64 n)
{
    return rhs_term(n, upper_divisor_sum(n));
}

bool verify_pointwise(u64 n, std::vector<u64> const & H12)
{
    return pointwise_lhs12(n, H12) == pointwise_rhs12(n);
}

u64 r_count(i64 delta, u64 X)
{
    if (delta >= 0) {
        throw std::invalid_argument("r(Δ, X) needs Δ < 0");
    }
    i64 lim = static_cast<i64>(8 * X) + delta;
    if (lim < 0) {
        return 0;
    }
    u64 Y = isqrt(static_cast<u64>(lim));
    switch (((delta % 8) + 8) % 8) {
    case 1:
        return (Y + 1) / 2;
    case 4:
        return (Y + 2) / 4;
    case 0:
        return Y / 4;
    default:
        return 0;
    }
}

u64 r_bruteforce(i64 delta, u64 X)
{
    u64 count = 0;
    for (u64 n = 1; n <= X; ++n) {
        i64 t2 = delta + static_cast<i64>(8 * n);
        if (t2 > 0 && is_square(static_cast<u64>(t2))) {
            ++count;
        }
    }
    return count;
}

i128 aggregate_rhs12(u64 X, unsigned threads)
{
    u64 M = 2 * X; /* arguments m = 2, 4, ..., M */
    u64 const window = u64{1} << 20;
    u64 windows = (M + window) / window;
    std::vector<i128> partial(windows, 0);
    parallel_for(windows, threads, [&](std::size_t w) {
        u64 lo = w * window, hi = std::min(M + 1, lo + window);
        if (lo >= hi) {
            return;
        }
        /* upper[m - lo] = sum over k | m, k^2 <= m of m / k */
        std::vector<u64> upper(hi - lo, 0);
        for (u64 k = 1; k * k < hi; ++k) {
            u64 start = std::max(k * k, (lo + k - 1) / k * k);
            for (u64 m = start; m < hi; m += k) {
                upper[m - lo] += m / k;
            }
        }
        i128 sum = 0;
        for (u64 m = std::max<u64>(lo, 2); m < hi; ++m) {
            if (m % 2 == 0) {
                sum += rhs_term(m, upper[m - lo]);
            }
        }
        partial[w] = sum;
    });
    i128 total = 0;
    for (auto v : partial) {
        total += v;
    }
    return total;
}

verify_report verify_aggregate(u64 X, std::vector<u64> const & H12, unsigned threads)
{
    if (X < 1) {
        throw std::invalid_argument("verification range needs X >= 1");
    }
    if (H12.size() <= 8 * X) {
        throw std::out_of_range("Hurwitz table must cover 8X");
    }
    verify_report rep;
    rep.X = X;
    i128 lhs = 0;
    for (u64 n = 1; n <= X; ++n) {
        lhs += H12[8 * n];
    }
    for (u64 D = 3; D <= 8 * X; ++D) {
        if (D % 4 != 0 && D % 4 != 3) {
            continue;
        }
        u64 r = r_count(-static_cast<i64>(D), X);
        lhs += 2 * static_cast<i128>(r) * H12[D];
    }
    rep.lhs = lhs;
    rep.rhs = aggregate_rhs12(X, threads);
    rep.pass = rep.lhs == rep.rhs;
    if (!rep.pass) {
        for (u64 n = 2; n <= 2 * X; n += 2) {
            if (!verify_pointwise(n, H12)) {
                rep.first_failing_n = n;
                break;
            }
        }
    }
    return rep;
}

std::string verify_report::to_json() const
{
    nlohmann::json j = {
        {"X", X},
        {"lhs", to_string(lhs)},
        {"rhs", to_string(rhs)},
        {"pass", pass},
        {"first_failing_n", first_failing_n ? nlohmann::json(*first_failing_n) : nlohmann::json(nullptr)},
    };
    return j.dump(2);
}

} // namespace classtab

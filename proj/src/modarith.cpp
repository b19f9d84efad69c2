#include "classtab/modarith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace classtab {

u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) {
            result = mulmod(result, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 invmod(u64 a, u64 m)
{
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) {
        throw std::invalid_argument("value is not invertible modulo m");
    }
    if (t < 0) {
        t += m;
    }
    return static_cast<u64>(t);
}

bool is_prime(u64 n)
{
    if (n < 2) {
        return false;
    }
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

u64 next_prime(u64 n)
{
    u64 c = n + 1;
    while (!is_prime(c)) {
        ++c;
    }
    return c;
}

namespace {

u64 pollard_rho(u64 n)
{
    if (n % 2 == 0) {
        return 2;
    }
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
        /* Brent's cycle search with batched gcds */
        u64 q = 1, ys = 0;
        u64 r = 1;
        const u64 batch = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) {
                y = f(y);
            }
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = gcd(q, n);
                k += batch;
            } while (k < r && d == 1);
            r *= 2;
        } while (d == 1);
        if (d == n) {
            do {
                ys = f(ys);
                d = gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) {
            return d;
        }
    }
}

void factor_into(u64 n, std::map<u64, unsigned> & out)
{
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<u64, unsigned>> factor(u64 n)
{
    if (n == 0) {
        throw std::invalid_argument("cannot factor zero");
    }
    std::map<u64, unsigned> found;
    for (u64 p = 2; p <= 1000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++found[p];
            n /= p;
        }
    }
    if (n > 1) {
        if (n < 1000000ULL * 1000000ULL) {
            ++found[n];
        } else {
            factor_into(n, found);
        }
    }
    return {found.begin(), found.end()};
}

int kronecker(i64 d, u64 n)
{
    if (n == 0) {
        return (d == 1 || d == -1) ? 1 : 0;
    }
    int result = 1;
    while ((n & 1) == 0) {
        n >>= 1;
        i64 dm8 = ((d % 8) + 8) % 8;
        if (dm8 % 2 == 0) {
            return 0;
        }
        if (dm8 == 3 || dm8 == 5) {
            result = -result;
        }
    }
    /* Jacobi symbol (d / n), n odd */
    u64 a = static_cast<u64>(((d % static_cast<i64>(n)) + static_cast<i64>(n)) % static_cast<i64>(n));
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 r = n % 8;
            if (r == 3 || r == 5) {
                result = -result;
            }
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) {
            result = -result;
        }
        a %= n;
    }
    return n == 1 ? result : 0;
}

u64 sqrt_mod_prime(u64 a, u64 p)
{
    a %= p;
    if (a == 0 || p == 2) {
        return a;
    }
    if (powmod(a, (p - 1) / 2, p) != 1) {
        throw std::invalid_argument("not a quadratic residue");
    }
    if (p % 4 == 3) {
        return powmod(a, (p + 1) / 4, p);
    }
    /* Tonelli-Shanks */
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) {
        ++z;
    }
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) {
            b = mulmod(b, b, p);
        }
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::vector<u64> primes_below(u64 limit)
{
    std::vector<u64> primes;
    if (limit < 3) {
        return primes;
    }
    std::vector<bool> composite(limit, false);
    for (u64 i = 2; i < limit; ++i) {
        if (composite[i]) {
            continue;
        }
        primes.push_back(i);
        for (u64 j = i * i; j < limit; j += i) {
            composite[j] = true;
        }
    }
    return primes;
}

montgomery::montgomery(u64 m) : m_(m)
{
    if ((m & 1) == 0 || m >= (u64{1} << 62) || m < 3) {
        throw std::invalid_argument("montgomery modulus must be odd and below 2^62");
    }
    u64 inv = m; /* Newton iteration for m^{-1} mod 2^64 */
    for (int i = 0; i < 6; ++i) {
        inv *= 2 - m * inv;
    }
    neg_inv_ = ~inv + 1;
    one_ = static_cast<u64>((static_cast<u128>(1) << 64) % m);
    r2_ = static_cast<u64>(static_cast<u128>(one_) * one_ % m);
}

u64 montgomery::pow(u64 a, u64 e) const
{
    u64 result = one_;
    while (e != 0) {
        if (e & 1) {
            result = mul(result, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

} // namespace classtab

#pragma once

#include <utility>
#include <vector>

#include "classtab/common.hpp"

namespace classtab {

inline u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m)
{
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

u64 powmod(u64 base, u64 exp, u64 m);
u64 invmod(u64 a, u64 m);

/* Deterministic Miller-Rabin for all 64-bit inputs. */
bool is_prime(u64 n);

/* Smallest prime strictly greater than n. */
u64 next_prime(u64 n);

/* Prime factorization, ascending primes: trial division to 10^6, then Pollard rho. */
std::vector<std::pair<u64, unsigned>> factor(u64 n);

/* Kronecker symbol (d / n) for n >= 1. */
int kronecker(i64 d, u64 n);

/* Some r with r^2 = a (mod p), p an odd prime, a a quadratic residue. */
u64 sqrt_mod_prime(u64 a, u64 p);

/* Primes below `limit` by the sieve of Eratosthenes. */
std::vector<u64> primes_below(u64 limit);

/*
 * Montgomery arithmetic modulo an odd m < 2^62. Values in Montgomery form are
 * kept in [0, m).
 */
class montgomery
{
  public:
    explicit montgomery(u64 m);

    u64 modulus() const { return m_; }
    u64 to(u64 a) const { return reduce(static_cast<u128>(a % m_) * r2_); }
    u64 from(u64 a) const { return reduce(a); }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    u64 add(u64 a, u64 b) const
    {
        u64 s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
    u64 one() const { return one_; }
    u64 pow(u64 a, u64 e) const;

    u64 reduce(u128 t) const
    {
        u64 q = static_cast<u64>(t) * neg_inv_;
        u64 r = static_cast<u64>((t + static_cast<u128>(q) * m_) >> 64);
        return r >= m_ ? r - m_ : r;
    }

  private:
    u64 m_;
    u64 neg_inv_; /* -m^{-1} mod 2^64 */
    u64 r2_;      /* 2^128 mod m */
    u64 one_;     /* 2^64 mod m */
};

} // namespace classtab

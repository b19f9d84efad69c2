#pragma once

#include <cstddef>
#include <vector>

#include "classtab/common.hpp"

namespace classtab {

/* An odd prime p with a root of exact order 2^L, where 2^L is the largest power dividing p-1 (capped). */
struct ntt_prime
{
    u64 p = 0;
    u64 root = 0;
    unsigned L = 0;

    static ntt_prime make(u64 p, unsigned max_L = 32);
    /* primitive 2^k-th root of unity, k <= L */
    u64 root_of_order(unsigned k) const;
};

class prime_basis
{
  public:
    prime_basis() = default;
    explicit prime_basis(std::vector<ntt_prime> primes) : primes_(std::move(primes)) {}

    /* Arbitrary distinct odd primes; roots are filled in where 2 | p-1. */
    static prime_basis from_primes(std::vector<u64> const & primes);

    /* The `count` largest primes below 2^62 of the form c*2^L + 1, descending. */
    static prime_basis ntt_primes(std::size_t count, unsigned L = 32);

    /* Shortest prefix of the NTT primes whose product exceeds 2^bits. */
    static prime_basis for_capacity(double bits, unsigned L = 32);

    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    ntt_prime const & operator[](std::size_t i) const { return primes_[i]; }
    std::vector<ntt_prime> const & primes() const { return primes_; }
    std::vector<u64> moduli() const;

    /* sum of log2 p_i */
    double log2_capacity() const;
    /* smallest L over the basis */
    unsigned max_log_length() const;

  private:
    std::vector<ntt_prime> primes_;
};

} // namespace classtab

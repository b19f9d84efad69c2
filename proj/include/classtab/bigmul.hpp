#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "classtab/coeff_table.hpp"
#include "classtab/prime_basis.hpp"

namespace classtab {

/*
 * Kronecker substitution parameters: B coefficients per bundle, s bits per
 * coefficient, N0 bundles. A bundle holds B*s bits; a bundle product
 * coefficient holds (2B-1)*s bits.
 */
struct bundle_params
{
    std::size_t B = 1;
    unsigned s = 1;
    std::size_t N0 = 0;

    std::size_t length() const { return B * N0; }
    unsigned in_bits() const { return static_cast<unsigned>(B * s); }
    unsigned out_bits() const { return static_cast<unsigned>((2 * B - 1) * s); }
    unsigned in_limbs() const { return (in_bits() + 63) / 64; }
    unsigned out_limbs() const { return (out_bits() + 63) / 64; }

    /* B must be a power of two, 1 <= s <= 64; N0 = ceil(length / B). */
    static bundle_params make(std::size_t length, std::size_t B, unsigned s);

    /*
     * Parameters for the first out_length coefficients of f*g with s large
     * enough for any product coefficient: bits(max f * max g * min(len)).
     */
    static bundle_params for_inputs(coeff_table const & f, coeff_table const & g,
                                    std::size_t out_length, std::size_t B);
};

/* Sequence of fixed-limb big integers, little-endian limbs. */
struct big_poly
{
    std::size_t count = 0;
    unsigned limbs = 0;
    std::vector<u64> data;

    big_poly() = default;
    big_poly(std::size_t count, unsigned limbs) : count(count), limbs(limbs), data(count * limbs, 0) {}

    u64 * at(std::size_t i) { return data.data() + i * limbs; }
    u64 const * at(std::size_t i) const { return data.data() + i * limbs; }
    mpz_class value(std::size_t i) const;
    void assign(std::size_t i, mpz_class const & v);

    friend bool operator==(big_poly const &, big_poly const &) = default;
};

/* Bundles [first, first+count) of f, with coefficients past f.length() taken as zero. */
big_poly bundle(coeff_table const & f, bundle_params const & params, std::size_t first,
                std::size_t count);
big_poly bundle(coeff_table const & f, bundle_params const & params);

/*
 * Recovers h_k, k < out_length, from the bundle product H (H.count bundles):
 *   h_k = digit(H_n, j) + digit(H_{n-1}, B + j),  n = k / B, j = k % B,
 * with the second term absent for n = 0 or j = B - 1. A recovered value of s
 * bits or more, or one that does not fit `width` bytes, throws
 * std::overflow_error.
 */
coeff_table unbundle_product(big_poly const & H, std::size_t B, unsigned s,
                             std::size_t out_length, unsigned width = 8);

enum class reduce_method { automatic, direct, tree };

/* residues[i][k] = F[k] mod p_i */
std::vector<std::vector<u64>> reduce_mod_basis(big_poly const & F, std::vector<u64> const & primes,
                                               reduce_method method = reduce_method::automatic);
std::vector<std::vector<u64>> reduce_mod_basis(big_poly const & F, prime_basis const & basis,
                                               reduce_method method = reduce_method::automatic);

/*
 * Unique nonnegative x < prod p_i with x = residues[i][k] (mod p_i), for each
 * k, by a divide-and-conquer product tree. out_limbs = 0 sizes the result to
 * the product of the primes.
 */
big_poly crt_reconstruct(std::vector<std::vector<u64>> const & residues,
                         std::vector<u64> const & primes, unsigned out_limbs = 0);
big_poly crt_reconstruct(std::vector<std::vector<u64>> const & residues,
                         prime_basis const & basis, unsigned out_limbs = 0);

struct staging_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct staging_config
{
    enum class mode { automatic, memory, disk };

    mode where = mode::automatic;
    std::filesystem::path dir;
    /* chunk file count; 0 means 4 per worker */
    std::size_t chunks = 0;
    /* automatic mode stays in memory while the estimate fits */
    std::size_t memory_budget = std::size_t{1} << 30;
    unsigned threads = 1;
    reduce_method reduction = reduce_method::automatic;
};

/*
 * Exact product f*g truncated to out_length coefficients (0 means
 * params.length()), computed by bundling, reduction mod the basis, one NTT
 * product per prime, CRT and extraction. Throws std::invalid_argument when
 * the basis capacity does not exceed (2B-1)s bits, std::overflow_error when
 * an input coefficient exceeds s bits or a recovered coefficient breaks the
 * s-bit or width contract, and staging_error on disk problems.
 */
coeff_table multiply(coeff_table const & f, coeff_table const & g, bundle_params const & params,
                     prime_basis const & basis, staging_config const & staging = {},
                     std::size_t out_length = 0, unsigned width = 8);

/* Convenience: parameters from for_inputs and a capacity-sized NTT basis. */
coeff_table multiply(coeff_table const & f, coeff_table const & g, std::size_t out_length,
                     std::size_t B = 16, staging_config const & staging = {});

} // namespace classtab

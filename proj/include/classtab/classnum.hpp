#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classtab/abelian_group.hpp"
#include "classtab/bigmul.hpp"
#include "classtab/coeff_table.hpp"

namespace classtab {

/* Fundamental discriminants split by Δ mod 16 / mod 8. */
enum class congruence_class { d8mod16, d12mod16, d5mod8, d1mod8 };

std::string to_string(congruence_class cls);
std::optional<congruence_class> parse_congruence_class(std::string const & text);
/* class of Δ = -abs_disc; abs_disc must be 3 mod 4 or 4, 8 mod 16 */
congruence_class class_of(u64 abs_disc);

/* L(1, chi) <= a log|Δ| + b */
struct l_one_bound
{
    long double a;
    long double b;

    static l_one_bound even();
    static l_one_bound odd();
};

enum class disc_parity { even, odd };

/* C_N = floor(1209/275 * sqrt(N)/pi * (a log N + b)); refuses N > 2^40. */
u64 compute_bound(u64 N, disc_parity parity);

/* ceil(log2(C)), ceil(log2(2C)), ceil(log2(3C)) for the three series classes. */
unsigned compute_bit_size(congruence_class cls, u64 N);

/* n = ceil((2B - 1) s / log2 p0) */
u64 compute_prime_count(u64 B, unsigned s, long double log2_p0);
/* least n with sum_{i<n} log2 p_i > (2B - 1) s over the given primes; 0 if none suffices */
u64 compute_prime_count(u64 B, unsigned s, std::vector<u64> const & primes);

/*
 * Fundamentality of -D for D < N by a segmented square-free sieve, plus the
 * number of distinct prime factors of every D < N.
 */
class fundamental_sieve
{
  public:
    explicit fundamental_sieve(u64 N);

    u64 bound() const { return N_; }
    bool is_fundamental(u64 D) const { return D < N_ && fundamental_[D]; }
    unsigned omega(u64 D) const { return omega_.at(D); }
    bool is_squarefree(u64 D) const { return squarefree_.at(D); }
    std::vector<bool> const & bitmap() const { return fundamental_; }
    u64 count() const;

  private:
    u64 N_;
    std::vector<bool> squarefree_;
    std::vector<bool> fundamental_;
    std::vector<std::uint8_t> omega_;
};

enum class provenance { series, enumeration };

std::string to_string(provenance p);

struct class_record
{
    u64 abs_disc = 0;
    u64 h = 0;
    abelian_group group;
    bool resolved = false;
    provenance source = provenance::series;

    friend bool operator==(class_record const &, class_record const &) = default;
};

struct tabulate_options
{
    std::size_t B = 16;
    std::size_t partition = std::size_t{1} << 16;
    unsigned threads = 1;
    staging_config staging;
};

/* Number of table coefficients for the class below N (indices k with |Δ(k)| < N). */
std::size_t table_length(congruence_class cls, u64 N);

/* |Δ| of table index k */
u64 abs_disc_of(congruence_class cls, u64 k);

/* Bundle parameters of the class; s covers every digit the extraction reads. */
bundle_params table_params(congruence_class cls, u64 N, std::size_t B);

/*
 * Coefficient k is F(4k+2), 2F(4k+1) or F(8k+3) for d8mod16, d12mod16, d5mod8,
 * computed by multiply() of the two series of the class. d1mod8 throws.
 */
coeff_table tabulate_F(congruence_class cls, u64 N, tabulate_options const & options = {});

/*
 * Class numbers of the fundamental Δ of the class with |Δ| < N from its
 * F table, ascending. h(-3) = h(-4) = 1; Δ = 5 mod 8 divides by 3 and Δ = 12
 * mod 16 by 2, each asserted exact (std::logic_error otherwise).
 */
std::vector<class_record> extract_class_numbers(congruence_class cls, coeff_table const & F,
                                                fundamental_sieve const & sieve);

/* Δ = 1 mod 8 class numbers by enumeration of reduced forms, ascending. */
std::vector<class_record> enumerate_1mod8(fundamental_sieve const & sieve);

/* All requested classes below N merged in ascending |Δ|; groups unresolved. */
std::vector<class_record> tabulate(u64 N, std::vector<congruence_class> const & classes,
                                   tabulate_options const & options = {});

/*
 * 12 H(n) for n < limit (zero where n is not 0 or 3 mod 4, and at n = 0).
 * Needs a record for every fundamental |Δ| < limit; throws otherwise.
 */
std::vector<u64> build_hurwitz_table(std::vector<class_record> const & records, u64 limit);

} // namespace classtab

#pragma once

#include <map>
#include <string>
#include <vector>

#include "classtab/common.hpp"

namespace classtab {

/*
 * Finite abelian group as its elementary divisor chain d_1 | d_2 | ... | d_k,
 * every d_i > 1. The trivial group has an empty chain.
 */
class abelian_group
{
  public:
    abelian_group() = default;
    /* throws std::invalid_argument unless the list is a chain of values > 1 */
    explicit abelian_group(std::vector<u64> divisors);

    /*
     * Merges per-prime cyclic factors: for each prime p, the exponents of the
     * cyclic p-power factors (any order, zeros ignored).
     */
    static abelian_group from_prime_powers(std::map<u64, std::vector<unsigned>> const & parts);

    std::vector<u64> const & divisors() const { return divisors_; }
    u64 order() const;
    /* number of divisors divisible by p */
    unsigned rank(u64 p) const;
    /* exponents of the p-part, descending */
    std::vector<unsigned> p_part(u64 p) const;
    /* "3x6"; empty for the trivial group */
    std::string to_string() const;
    static abelian_group parse(std::string const & text);

    friend bool operator==(abelian_group const &, abelian_group const &) = default;

  private:
    std::vector<u64> divisors_;
};

} // namespace classtab

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "classtab/classnum.hpp"
#include "classtab/qform.hpp"

namespace classtab {

/* h = prod p_i^e_i, primes ascending */
struct factored_order
{
    std::vector<std::pair<u64, unsigned>> factors;

    static factored_order of(u64 h);
    u64 value() const;
    bool empty() const { return factors.empty(); }

    friend bool operator==(factored_order const &, factored_order const &) = default;
};

/* the (p, e) with e >= 2 */
factored_order noncyclic_part(factored_order const & h);

/*
 * Elementary divisors (ascending powers of p) of the p-Sylow subgroup of
 * Cl(-abs_disc), where p^e exactly divides the class number h. Random forms
 * are projected by x^(h/p^e) and added to an explicit subgroup until it
 * reaches order p^e; the divisors come from the Smith form of the relations.
 * The random stream is a hash of (abs_disc, seed, counter).
 *
 * Throws std::logic_error when the subgroup would exceed p^e or an element
 * has order above p^e (h is wrong), and std::runtime_error when the attempt
 * budget runs out or the subgroup would exceed 2^22 elements.
 */
std::vector<u64> sylow_structure(u64 abs_disc, u64 h, u64 p, unsigned e, u64 seed = 0);

/*
 * Fills record.group from record.h. An h that some element contradicts
 * throws std::logic_error; one whose Sylow subgroup cannot be filled exhausts
 * the sampling budget (std::runtime_error).
 * A known 2-rank (omega(|Δ|) - 1 for fundamental Δ) settles the 2-part
 * without sampling when it is 1 or equals the 2-adic valuation of h.
 */
class_record resolve(class_record record, u64 seed = 0, std::optional<unsigned> two_rank = std::nullopt);

/*
 * Resolves every record on `threads` workers. With a sieve, fundamental
 * records pass their genus 2-rank to resolve() and are checked against it.
 */
void resolve_all(std::vector<class_record> & records, unsigned threads, u64 seed = 0,
                 fundamental_sieve const * genus = nullptr);

} // namespace classtab

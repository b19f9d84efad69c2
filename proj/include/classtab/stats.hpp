#pragma once

#include <array>
#include <map>
#include <vector>

#include "classtab/classnum.hpp"

namespace classtab {

/* L(1, chi) = 2 pi h / (w sqrt|Δ|), w = 6, 4, 2 */
double l_value(u64 abs_disc, u64 h);

struct littlewood_row
{
    u64 abs_disc = 0;
    double L_value = 0;
    double uli = 0;
    double lli = 0;
};

littlewood_row littlewood(u64 abs_disc, u64 h);

/* successive records in ascending |Δ|; 3, 4 and 163 never count */
struct littlewood_extremes_t
{
    std::vector<littlewood_row> uli_max;
    std::vector<littlewood_row> lli_min;
    std::vector<littlewood_row> L_max;
    std::vector<littlewood_row> L_min;
};

littlewood_extremes_t littlewood_extremes(std::vector<class_record> const & records, u64 bound);

/* prod_{i=1..k} (1 - l^-i); k = 0 gives 1 */
long double eta(u64 l, unsigned k);
/* 64 factors; the neglected tail is below 2 l^-64 in relative size */
long double eta_infinity(u64 l);
/* prod_{i>=2} zeta(i) */
long double c_infinity();
long double pr_cyclic();
long double pr_divides(u64 l);
long double pr_rank(u64 l, unsigned r);

inline constexpr std::array<u64, 5> cl_primes{3, 5, 7, 11, 13};
inline constexpr std::array<unsigned, 2> cl_ranks{2, 3};

bool odd_part_cyclic(abelian_group const & g);

/* raw counts over records with |Δ| < x */
struct cl_counts
{
    u64 x = 0;
    u64 total = 0;
    u64 noncyclic = 0;
    std::array<u64, cl_primes.size()> divisible{};
    std::array<std::array<u64, cl_ranks.size()>, cl_primes.size()> rank{};

    friend bool operator==(cl_counts const &, cl_counts const &) = default;
};

struct cl_checkpoint
{
    cl_counts counts;
    double c = 0;
    std::array<double, cl_primes.size()> p_l{};
    std::array<std::array<double, cl_ranks.size()>, cl_primes.size()> p_lr{};
};

/* direct recount for one x */
cl_counts count_below(std::vector<class_record> const & records, u64 x);

/* one ascending pass; records must be sorted and resolved */
std::vector<cl_checkpoint> cohen_lenstra(std::vector<class_record> const & records,
                                         std::vector<u64> const & checkpoints);

/* 10, 100, ... up to bound, plus bound itself */
std::vector<u64> default_checkpoints(u64 bound);

struct first_occurrence
{
    u64 first_even = 0; /* 0: none */
    u64 count_even = 0;
    u64 first_odd = 0;
    u64 count_odd = 0;

    void add(u64 abs_disc);
};

/* (p, e_1 >= e_2 >= ...) for a non-cyclic odd p-Sylow subgroup */
using sylow_signature = std::pair<u64, std::vector<unsigned>>;

struct exotic_report
{
    std::map<sylow_signature, first_occurrence> sylow;
    /* exactly two (three) odd primes with non-cyclic Sylow subgroups */
    std::map<std::vector<u64>, first_occurrence> doubly;
    std::map<std::vector<u64>, first_occurrence> trebly;
};

exotic_report exotic_scan(std::vector<class_record> const & records);

/* records with bound >= |Δ| whose group is trivial or elementary abelian of exponent 2 */
std::vector<u64> idoneal_scan(std::vector<class_record> const & records, u64 bound);
bool all_two_torsion(abelian_group const & g);

/* non-fundamental |Δ| <= bound with an elementary 2-group, by form enumeration */
std::vector<u64> idoneal_nonfundamental(u64 bound, fundamental_sieve const & sieve);

} // namespace classtab

#include "classtab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include <boost/math/special_functions/zeta.hpp>

#include "classtab/modarith.hpp"
#include "classtab/qform.hpp"

namespace classtab {

namespace {

bool excluded(u64 D)
{
    return D == 3 || D == 4 || D == 163;
}

std::size_t lower_index(std::vector<class_record> const & records, u64 x)
{
    auto it = std::lower_bound(records.begin(), records.end(), x,
                               [](class_record const & r, u64 v) { return r.abs_disc < v; });
    return static_cast<std::size_t>(it - records.begin());
}

void accumulate(cl_counts & c, class_record const & r)
{
    if (!r.resolved) {
        throw std::invalid_argument("Cohen-Lenstra counts need resolved groups");
    }
    ++c.total;
    if (!odd_part_cyclic(r.group)) {
        ++c.noncyclic;
    }
    for (std::size_t i = 0; i < cl_primes.size(); ++i) {
        if (r.h % cl_primes[i] == 0) {
            ++c.divisible[i];
        }
        unsigned rk = r.group.rank(cl_primes[i]);
        for (std::size_t j = 0; j < cl_ranks.size(); ++j) {
            if (rk == cl_ranks[j]) {
                ++c.rank[i][j];
            }
        }
    }
}

cl_checkpoint normalize(cl_counts const & c)
{
    cl_checkpoint out;
    out.counts = c;
    if (c.total == 0) {
        return out;
    }
    double n = static_cast<double>(c.total);
    out.c = static_cast<double>(c.total - c.noncyclic) / n / static_cast<double>(pr_cyclic());
    for (std::size_t i = 0; i < cl_primes.size(); ++i) {
        out.p_l[i] = static_cast<double>(c.divisible[i]) / n / static_cast<double>(pr_divides(cl_primes[i]));
        for (std::size_t j = 0; j < cl_ranks.size(); ++j) {
            out.p_lr[i][j] = static_cast<double>(c.rank[i][j]) / n
                             / static_cast<double>(pr_rank(cl_primes[i], cl_ranks[j]));
        }
    }
    return out;
}

/* odd primes whose Sylow subgroup has rank >= 2 */
std::vector<u64> noncyclic_odd_primes(abelian_group const & g)
{
    auto const & d = g.divisors();
    if (d.size() < 2) {
        return {};
    }
    u64 second = d[d.size() - 2];
    while (second % 2 == 0) {
        second /= 2;
    }
    std::vector<u64> ps;
    if (second > 1) {
        for (auto [p, e] : factor(second)) {
            ps.push_back(p);
        }
    }
    return ps;
}

} // namespace

double l_value(u64 abs_disc, u64 h)
{
    double w = abs_disc == 3 ? 6 : abs_disc == 4 ? 4 : 2;
    return 2 * std::numbers::pi * static_cast<double>(h) / (w * std::sqrt(static_cast<double>(abs_disc)));
}

littlewood_row littlewood(u64 abs_disc, u64 h)
{
    double const eg = std::exp(std::numbers::egamma);
    double const pi2 = std::numbers::pi * std::numbers::pi;
    bool even = abs_disc % 2 == 0;
    double c1 = even ? 8 * eg / pi2 : 12 * eg / pi2;
    double c2 = even ? eg : 2 * eg;
    double ll = std::log(std::log(static_cast<double>(abs_disc)));
    littlewood_row r;
    r.abs_disc = abs_disc;
    r.L_value = l_value(abs_disc, h);
    r.uli = r.L_value / (c2 * ll);
    r.lli = r.L_value * c1 * ll;
    return r;
}

littlewood_extremes_t littlewood_extremes(std::vector<class_record> const & records, u64 bound)
{
    littlewood_extremes_t out;
    for (auto const & rec : records) {
        if (rec.abs_disc > bound) {
            break;
        }
        if (excluded(rec.abs_disc)) {
            continue;
        }
        auto row = littlewood(rec.abs_disc, rec.h);
        if (out.uli_max.empty() || row.uli > out.uli_max.back().uli) {
            out.uli_max.push_back(row);
        }
        if (out.lli_min.empty() || row.lli < out.lli_min.back().lli) {
            out.lli_min.push_back(row);
        }
        if (out.L_max.empty() || row.L_value > out.L_max.back().L_value) {
            out.L_max.push_back(row);
        }
        if (out.L_min.empty() || row.L_value < out.L_min.back().L_value) {
            out.L_min.push_back(row);
        }
    }
    return out;
}

long double eta(u64 l, unsigned k)
{
    long double p = 1, li = 1;
    for (unsigned i = 1; i <= k; ++i) {
        li /= static_cast<long double>(l);
        p *= 1 - li;
    }
    return p;
}

long double eta_infinity(u64 l)
{
    if (l < 2) {
        throw std::invalid_argument("eta needs l >= 2");
    }
    return eta(l, 64);
}

long double c_infinity()
{
    /* zeta(i) - 1 < 2^(1-i); stopping at i = 80 leaves a relative tail below 2^-78 */
    long double p = 1;
    for (int i = 2; i <= 80; ++i) {
        p *= boost::math::zeta(static_cast<long double>(i));
    }
    return p;
}

long double pr_cyclic()
{
    long double pi = std::numbers::pi_v<long double>;
    return 315 * boost::math::zeta(3.0L) / (6 * pi * pi * pi * pi * eta_infinity(2) * c_infinity());
}

long double pr_divides(u64 l)
{
    return 1 - eta_infinity(l);
}

long double pr_rank(u64 l, unsigned r)
{
    long double er = eta(l, r);
    return eta_infinity(l) / (std::pow(static_cast<long double>(l), static_cast<long double>(r) * r) * er * er);
}

bool odd_part_cyclic(abelian_group const & g)
{
    auto const & d = g.divisors();
    if (d.size() < 2) {
        return true;
    }
    u64 second = d[d.size() - 2];
    return (second & (second - 1)) == 0;
}

cl_counts count_below(std::vector<class_record> const & records, u64 x)
{
    cl_counts c;
    c.x = x;
    for (auto const & r : records) {
        if (r.abs_disc < x) {
            accumulate(c, r);
        }
    }
    return c;
}

std::vector<cl_checkpoint> cohen_lenstra(std::vector<class_record> const & records,
                                         std::vector<u64> const & checkpoints)
{
    std::vector<u64> xs = checkpoints;
    std::sort(xs.begin(), xs.end());
    std::vector<cl_checkpoint> out;
    cl_counts run;
    std::size_t i = 0;
    for (u64 x : xs) {
        std::size_t end = lower_index(records, x);
        for (; i < end; ++i) {
            accumulate(run, records[i]);
        }
        run.x = x;
        out.push_back(normalize(run));
    }
    return out;
}

std::vector<u64> default_checkpoints(u64 bound)
{
    std::vector<u64> xs;
    for (u64 x = 10; x < bound; x *= 10) {
        xs.push_back(x);
    }
    xs.push_back(bound);
    return xs;
}

void first_occurrence::add(u64 abs_disc)
{
    if (abs_disc % 2 == 0) {
        if (count_even++ == 0 || abs_disc < first_even) {
            first_even = abs_disc;
        }
    } else {
        if (count_odd++ == 0 || abs_disc < first_odd) {
            first_odd = abs_disc;
        }
    }
}

exotic_report exotic_scan(std::vector<class_record> const & records)
{
    exotic_report out;
    for (auto const & r : records) {
        if (!r.resolved) {
            throw std::invalid_argument("exotic scan needs resolved groups");
        }
        auto ps = noncyclic_odd_primes(r.group);
        for (u64 p : ps) {
            out.sylow[{p, r.group.p_part(p)}].add(r.abs_disc);
        }
        if (ps.size() == 2) {
            out.doubly[ps].add(r.abs_disc);
        } else if (ps.size() == 3) {
            out.trebly[ps].add(r.abs_disc);
        }
    }
    return out;
}

bool all_two_torsion(abelian_group const & g)
{
    return std::all_of(g.divisors().begin(), g.divisors().end(), [](u64 d) { return d == 2; });
}

std::vector<u64> idoneal_scan(std::vector<class_record> const & records, u64 bound)
{
    std::vector<u64> out;
    for (auto const & r : records) {
        if (r.abs_disc > bound) {
            break;
        }
        if (!r.resolved) {
            throw std::invalid_argument("idoneal scan needs resolved groups");
        }
        if (all_two_torsion(r.group)) {
            out.push_back(r.abs_disc);
        }
    }
    return out;
}

std::vector<u64> idoneal_nonfundamental(u64 bound, fundamental_sieve const & sieve)
{
    if (sieve.bound() <= bound) {
        throw std::invalid_argument("sieve does not cover the idoneal bound");
    }
    std::vector<u64> out;
    for (u64 D = 3; D <= bound; ++D) {
        if ((D % 4 != 0 && D % 4 != 3) || sieve.is_fundamental(D)) {
            continue;
        }
        u64 h = count_classes(D);
        if ((h & (h - 1)) != 0) {
            continue;
        }
        if (all_two_torsion(group_table(D))) {
            out.push_back(D);
        }
    }
    return out;
}

} // namespace classtab

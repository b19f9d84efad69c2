#include "classtab/abelian_group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace classtab {

abelian_group::abelian_group(std::vector<u64> divisors) : divisors_(std::move(divisors))
{
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        if (divisors_[i] < 2) {
            throw std::invalid_argument("elementary divisors must exceed 1");
        }
        if (i > 0 && divisors_[i] % divisors_[i - 1] != 0) {
            throw std::invalid_argument("elementary divisors must form a divisibility chain");
        }
    }
}

abelian_group abelian_group::from_prime_powers(std::map<u64, std::vector<unsigned>> const & parts)
{
    std::size_t k = 0;
    std::map<u64, std::vector<unsigned>> sorted;
    for (auto const & [p, exps] : parts) {
        std::vector<unsigned> e;
        for (unsigned x : exps) {
            if (x > 0) {
                e.push_back(x);
            }
        }
        std::sort(e.begin(), e.end(), std::greater<>());
        k = std::max(k, e.size());
        sorted[p] = std::move(e);
    }
    /* largest divisor collects the largest power of every prime, and so on */
    std::vector<u64> divs(k, 1);
    for (auto const & [p, e] : sorted) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (unsigned t = 0; t < e[i]; ++t) {
                divs[k - 1 - i] *= p;
            }
        }
    }
    return abelian_group(std::move(divs));
}

u64 abelian_group::order() const
{
    u64 n = 1;
    for (u64 d : divisors_) {
        n *= d;
    }
    return n;
}

unsigned abelian_group::rank(u64 p) const
{
    unsigned r = 0;
    for (u64 d : divisors_) {
        r += d % p == 0;
    }
    return r;
}

std::vector<unsigned> abelian_group::p_part(u64 p) const
{
    std::vector<unsigned> out;
    for (auto it = divisors_.rbegin(); it != divisors_.rend(); ++it) {
        unsigned e = 0;
        for (u64 d = *it; d % p == 0; d /= p) {
            ++e;
        }
        if (e > 0) {
            out.push_back(e);
        }
    }
    return out;
}

std::string abelian_group::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        if (i > 0) {
            out += 'x';
        }
        out += std::to_string(divisors_[i]);
    }
    return out;
}

abelian_group abelian_group::parse(std::string const & text)
{
    std::vector<u64> divs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, 'x')) {
        if (item.empty()) {
            continue;
        }
        divs.push_back(std::stoull(item));
    }
    return abelian_group(std::move(divs));
}

} // namespace classtab

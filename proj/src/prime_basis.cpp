#include "classtab/prime_basis.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "classtab/modarith.hpp"

namespace classtab {

ntt_prime ntt_prime::make(u64 p, unsigned max_L)
{
    if (p < 3 || (p & 1) == 0 || !is_prime(p)) {
        throw std::invalid_argument("NTT modulus must be an odd prime");
    }
    ntt_prime out;
    out.p = p;
    unsigned L = static_cast<unsigned>(__builtin_ctzll(p - 1));
    out.L = std::min(L, max_L);

    auto fac = factor(p - 1);
    u64 g = 2;
    for (;; ++g) {
        bool generator = true;
        for (auto [q, e] : fac) {
            (void)e;
            if (powmod(g, (p - 1) / q, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) {
            break;
        }
    }
    out.root = powmod(g, (p - 1) >> out.L, p);
    return out;
}

u64 ntt_prime::root_of_order(unsigned k) const
{
    if (k > L) {
        throw std::invalid_argument("transform length exceeds 2^L for this prime");
    }
    u64 r = root;
    for (unsigned i = k; i < L; ++i) {
        r = mulmod(r, r, p);
    }
    return r;
}

prime_basis prime_basis::from_primes(std::vector<u64> const & primes)
{
    std::vector<ntt_prime> out;
    for (u64 p : primes) {
        for (auto const & q : out) {
            if (q.p == p) {
                throw std::invalid_argument("prime basis entries must be distinct");
            }
        }
        out.push_back(ntt_prime::make(p));
    }
    return prime_basis(std::move(out));
}

namespace {

/* descending NTT primes, shared and extended on demand */
std::vector<u64> ntt_prime_cache(std::size_t count, unsigned L)
{
    static std::mutex lock;
    static unsigned cached_L = 0;
    static std::vector<u64> cache;
    static u64 next_c = 0;
    std::lock_guard<std::mutex> guard(lock);
    if (cached_L != L) {
        cached_L = L;
        cache.clear();
        next_c = ((u64{1} << 62) - 1) >> L;
    }
    while (cache.size() < count) {
        if (next_c == 0) {
            throw std::runtime_error("ran out of NTT primes below 2^62");
        }
        u64 p = (next_c << L) + 1;
        --next_c;
        if (is_prime(p)) {
            cache.push_back(p);
        }
    }
    return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(count)};
}

} // namespace

prime_basis prime_basis::ntt_primes(std::size_t count, unsigned L)
{
    if (L < 1 || L > 40) {
        throw std::invalid_argument("unsupported NTT log-length");
    }
    std::vector<ntt_prime> out;
    for (u64 p : ntt_prime_cache(count, L)) {
        out.push_back(ntt_prime::make(p, L));
    }
    return prime_basis(std::move(out));
}

prime_basis prime_basis::for_capacity(double bits, unsigned L)
{
    std::size_t n = 1;
    for (;;) {
        auto ps = ntt_prime_cache(n, L);
        double total = 0;
        for (u64 p : ps) {
            total += std::log2(static_cast<double>(p));
        }
        /* the margin absorbs rounding in the double-precision logs */
        if (total > bits + 1e-6) {
            return ntt_primes(n, L);
        }
        ++n;
    }
}

std::vector<u64> prime_basis::moduli() const
{
    std::vector<u64> out;
    out.reserve(primes_.size());
    for (auto const & p : primes_) {
        out.push_back(p.p);
    }
    return out;
}

double prime_basis::log2_capacity() const
{
    double total = 0;
    for (auto const & p : primes_) {
        total += std::log2(static_cast<double>(p.p));
    }
    return total;
}

unsigned prime_basis::max_log_length() const
{
    unsigned L = 64;
    for (auto const & p : primes_) {
        L = std::min(L, p.L);
    }
    return primes_.empty() ? 0 : L;
}

} // namespace classtab

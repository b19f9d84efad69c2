#include "classtab/ntt.hpp"

#include <stdexcept>

#include "classtab/modarith.hpp"

namespace classtab {

namespace {

/* powers w^0..w^{n/2-1} of a primitive n-th root, Montgomery form */
std::vector<u64> twiddles(montgomery const & mg, u64 w, std::size_t n)
{
    std::vector<u64> tw(n / 2);
    u64 wm = mg.to(w);
    u64 cur = mg.one();
    for (auto & t : tw) {
        t = cur;
        cur = mg.mul(cur, wm);
    }
    return tw;
}

/* Gentleman-Sande: natural order in, bit-reversed out */
void forward(std::vector<u64> & a, montgomery const & mg, std::vector<u64> const & tw)
{
    std::size_t n = a.size();
    for (std::size_t len = n / 2, stride = 1; len >= 1; len /= 2, stride *= 2) {
        for (std::size_t i = 0; i < n; i += 2 * len) {
            for (std::size_t j = 0; j < len; ++j) {
                u64 u = a[i + j];
                u64 v = a[i + j + len];
                a[i + j] = mg.add(u, v);
                a[i + j + len] = mg.mul(mg.sub(u, v), tw[j * stride]);
            }
        }
    }
}

/* Cooley-Tukey: bit-reversed in, natural order out */
void inverse(std::vector<u64> & a, montgomery const & mg, std::vector<u64> const & tw_inv)
{
    std::size_t n = a.size();
    for (std::size_t len = 1, stride = n / 2; len < n; len *= 2, stride /= 2) {
        for (std::size_t i = 0; i < n; i += 2 * len) {
            for (std::size_t j = 0; j < len; ++j) {
                u64 u = a[i + j];
                u64 v = mg.mul(a[i + j + len], tw_inv[j * stride]);
                a[i + j] = mg.add(u, v);
                a[i + j + len] = mg.sub(u, v);
            }
        }
    }
}

} // namespace

std::vector<u64> ntt_mul(std::vector<u64> const & a, std::vector<u64> const & b,
                         ntt_prime const & prime, std::size_t out_length)
{
    if (a.empty() || b.empty()) {
        return std::vector<u64>(out_length, 0);
    }
    std::size_t full = a.size() + b.size() - 1;
    if (out_length == 0) {
        out_length = full;
    }
    std::size_t n = 1;
    unsigned k = 0;
    while (n < full) {
        n *= 2;
        ++k;
    }
    if (k > prime.L) {
        throw std::invalid_argument("product length exceeds the transform size of the prime");
    }
    u64 p = prime.p;
    std::vector<u64> out(out_length, 0);
    if (n == 1) {
        out[0] = mulmod(a[0], b[0], p);
        return out;
    }
    montgomery mg(p);
    u64 w = prime.root_of_order(k);
    auto tw = twiddles(mg, w, n);
    auto tw_inv = twiddles(mg, invmod(w, p), n);

    std::vector<u64> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        fa[i] = mg.to(a[i]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        fb[i] = mg.to(b[i]);
    }
    forward(fa, mg, tw);
    forward(fb, mg, tw);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = mg.mul(fa[i], fb[i]);
    }
    inverse(fa, mg, tw_inv);
    u64 scale = mg.to(invmod(n % p, p));
    for (std::size_t i = 0; i < std::min(out_length, full); ++i) {
        out[i] = mg.from(mg.mul(fa[i], scale));
    }
    return out;
}

std::vector<u64> schoolbook_mul(std::vector<u64> const & a, std::vector<u64> const & b, u64 p)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    std::vector<u64> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], p), p);
        }
    }
    return out;
}

} // namespace classtab

#include "classtab/classnum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "classtab/modarith.hpp"
#include "classtab/qform.hpp"
#include "classtab/series.hpp"

namespace classtab {

std::string to_string(congruence_class cls)
{
    switch (cls) {
    case congruence_class::d8mod16:
        return "8mod16";
    case congruence_class::d12mod16:
        return "12mod16";
    case congruence_class::d5mod8:
        return "5mod8";
    case congruence_class::d1mod8:
        return "1mod8";
    }
    return "unknown";
}

std::optional<congruence_class> parse_congruence_class(std::string const & text)
{
    for (auto cls : {congruence_class::d8mod16, congruence_class::d12mod16, congruence_class::d5mod8,
                     congruence_class::d1mod8}) {
        if (text == to_string(cls)) {
            return cls;
        }
    }
    return std::nullopt;
}

congruence_class class_of(u64 D)
{
    if (D % 16 == 8) {
        return congruence_class::d8mod16;
    }
    if (D % 16 == 4) {
        return congruence_class::d12mod16;
    }
    if (D % 8 == 3) {
        return congruence_class::d5mod8;
    }
    if (D % 8 == 7) {
        return congruence_class::d1mod8;
    }
    throw std::invalid_argument("|Δ| = " + std::to_string(D) + " is not in a fundamental congruence class");
}

std::string to_string(provenance p)
{
    return p == provenance::series ? "series" : "enumeration";
}

l_one_bound l_one_bound::even()
{
    return {0.25L, 1.25L - std::log(3.0L) / 2};
}

l_one_bound l_one_bound::odd()
{
    return {0.5L, 2.5L - std::log(6.0L)};
}

u64 compute_bound(u64 N, disc_parity parity)
{
    if (N > (u64{1} << 40)) {
        throw std::invalid_argument("the divisor-sum constant is only established for N <= 2^40");
    }
    if (N < 2) {
        throw std::invalid_argument("bound needs N >= 2");
    }
    auto [a, b] = parity == disc_parity::even ? l_one_bound::even() : l_one_bound::odd();
    long double n = static_cast<long double>(N);
    long double c = 1209.0L / 275.0L / std::numbers::pi_v<long double> * std::sqrt(n) * (a * std::log(n) + b);
    return static_cast<u64>(std::floor(c));
}

unsigned compute_bit_size(congruence_class cls, u64 N)
{
    u64 mult = 0;
    disc_parity parity = disc_parity::even;
    switch (cls) {
    case congruence_class::d8mod16:
        mult = 1;
        break;
    case congruence_class::d12mod16:
        mult = 2;
        break;
    case congruence_class::d5mod8:
        mult = 3;
        parity = disc_parity::odd;
        break;
    case congruence_class::d1mod8:
        throw std::invalid_argument("no series formula for Δ = 1 mod 8");
    }
    u64 bound = mult * compute_bound(N, parity);
    unsigned s = 0;
    while ((u64{1} << s) < bound) {
        ++s;
    }
    return s;
}

u64 compute_prime_count(u64 B, unsigned s, long double log2_p0)
{
    if (B == 0 || s == 0 || log2_p0 <= 0) {
        throw std::invalid_argument("B, s and log2 p0 must be positive");
    }
    return static_cast<u64>(std::ceil(static_cast<long double>(2 * B - 1) * s / log2_p0));
}

u64 compute_prime_count(u64 B, unsigned s, std::vector<u64> const & primes)
{
    long double need = static_cast<long double>(2 * B - 1) * s;
    long double total = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        total += std::log2(static_cast<long double>(primes[i]));
        if (total > need) {
            return i + 1;
        }
    }
    return 0;
}

fundamental_sieve::fundamental_sieve(u64 N) : N_(N)
{
    squarefree_.assign(N, true);
    if (N > 0) {
        squarefree_[0] = false;
    }
    auto small = primes_below(isqrt(N) + 2);
    u64 const segment = u64{1} << 20;
    for (u64 lo = 0; lo < N; lo += segment) {
        u64 hi = std::min(N, lo + segment);
        for (u64 p : small) {
            u64 q = p * p;
            if (q >= hi) {
                break;
            }
            for (u64 m = (lo + q - 1) / q * q; m < hi; m += q) {
                squarefree_[m] = false;
            }
        }
    }

    omega_.assign(N, 0);
    for (u64 p : primes_below(N)) {
        for (u64 m = p; m < N; m += p) {
            ++omega_[m];
        }
    }

    fundamental_.assign(N, false);
    for (u64 D = 3; D < N; ++D) {
        if (D % 4 == 3) {
            fundamental_[D] = squarefree_[D];
        } else if (D % 4 == 0) {
            u64 m = D / 4;
            fundamental_[D] = (m % 4 == 1 || m % 4 == 2) && squarefree_[m];
        }
    }
}

u64 fundamental_sieve::count() const
{
    return static_cast<u64>(std::count(fundamental_.begin(), fundamental_.end(), true));
}

std::size_t table_length(congruence_class cls, u64 N)
{
    switch (cls) {
    case congruence_class::d8mod16:
        return N > 8 ? (N - 8 + 15) / 16 : 0;
    case congruence_class::d12mod16:
        return N > 4 ? (N - 4 + 15) / 16 : 0;
    case congruence_class::d5mod8:
        return N > 3 ? (N - 3 + 7) / 8 : 0;
    case congruence_class::d1mod8:
        break;
    }
    throw std::invalid_argument("no series table for Δ = 1 mod 8");
}

u64 abs_disc_of(congruence_class cls, u64 k)
{
    switch (cls) {
    case congruence_class::d8mod16:
        return 16 * k + 8;
    case congruence_class::d12mod16:
        return 16 * k + 4;
    case congruence_class::d5mod8:
        return 8 * k + 3;
    case congruence_class::d1mod8:
        return 8 * k + 7;
    }
    return 0;
}

bundle_params table_params(congruence_class cls, u64 N, std::size_t B)
{
    std::size_t L = std::max<std::size_t>(table_length(cls, N), 1);
    std::size_t N0 = (L + B - 1) / B;
    /* carry digits reach coefficient (N0 + 1) B - 2 */
    u64 cover = abs_disc_of(cls, (N0 + 1) * B) + 1;
    unsigned s = std::max(compute_bit_size(cls, cover), 1u);
    return bundle_params::make(L, B, s);
}

coeff_table tabulate_F(congruence_class cls, u64 N, tabulate_options const & options)
{
    series_kind fk, gk;
    switch (cls) {
    case congruence_class::d8mod16:
        fk = series_kind::nabla_q2_sq;
        gk = series_kind::theta3;
        break;
    case congruence_class::d12mod16:
        fk = series_kind::theta3_sq;
        gk = series_kind::nabla_q2;
        break;
    case congruence_class::d5mod8:
        fk = series_kind::nabla_sq;
        gk = series_kind::nabla;
        break;
    default:
        throw std::invalid_argument("no series formula for Δ = 1 mod 8");
    }
    std::size_t L = table_length(cls, N);
    if (L == 0) {
        return coeff_table(0, 4);
    }
    auto params = table_params(cls, N, options.B);
    auto f = generate(fk, params.length(), options.partition, 0, options.threads);
    auto g = generate(gk, params.length(), options.partition, 0, options.threads);
    auto basis = prime_basis::for_capacity(params.out_bits());
    staging_config staging = options.staging;
    staging.threads = options.threads;
    if (!staging.dir.empty()) {
        staging.dir /= to_string(cls);
    }
    return multiply(f, g, params, basis, staging, L, params.s <= 32 ? 4 : 8);
}

std::vector<class_record> extract_class_numbers(congruence_class cls, coeff_table const & F,
                                                fundamental_sieve const & sieve)
{
    std::vector<class_record> out;
    std::size_t L = std::min<std::size_t>(F.length(), table_length(cls, sieve.bound()));
    std::size_t step = std::size_t{1} << 20;
    for (std::size_t first = 0; first < L; first += step) {
        auto vals = F.values(first, std::min(step, L - first));
        for (std::size_t i = 0; i < vals.size(); ++i) {
            u64 D = abs_disc_of(cls, first + i);
            if (!sieve.is_fundamental(D)) {
                continue;
            }
            u64 v = vals[i];
            u64 h = v;
            if (cls == congruence_class::d12mod16) {
                if (D == 4) {
                    h = 1;
                } else if (v % 2 != 0) {
                    throw std::logic_error("odd 2F coefficient at |Δ| = " + std::to_string(D));
                } else {
                    h = v / 2;
                }
            } else if (cls == congruence_class::d5mod8) {
                if (D == 3) {
                    h = 1;
                } else if (v % 3 != 0) {
                    throw std::logic_error("F coefficient not divisible by 3 at |Δ| = " + std::to_string(D));
                } else {
                    h = v / 3;
                }
            }
            if (h == 0) {
                throw std::logic_error("zero class number at |Δ| = " + std::to_string(D));
            }
            class_record r;
            r.abs_disc = D;
            r.h = h;
            r.source = provenance::series;
            out.push_back(r);
        }
    }
    return out;
}

std::vector<class_record> enumerate_1mod8(fundamental_sieve const & sieve)
{
    auto h = class_numbers_upto(sieve.bound(), &sieve.bitmap(), true);
    std::vector<class_record> out;
    for (u64 D = 7; D < sieve.bound(); D += 8) {
        if (!sieve.is_fundamental(D)) {
            continue;
        }
        class_record r;
        r.abs_disc = D;
        r.h = h[D];
        r.source = provenance::enumeration;
        out.push_back(r);
    }
    return out;
}

std::vector<class_record> tabulate(u64 N, std::vector<congruence_class> const & classes,
                                   tabulate_options const & options)
{
    fundamental_sieve sieve(N);
    std::vector<class_record> all;
    for (auto cls : classes) {
        std::vector<class_record> part;
        if (cls == congruence_class::d1mod8) {
            part = enumerate_1mod8(sieve);
        } else {
            part = extract_class_numbers(cls, tabulate_F(cls, N, options), sieve);
        }
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end(),
              [](class_record const & x, class_record const & y) { return x.abs_disc < y.abs_disc; });
    return all;
}

std::vector<u64> build_hurwitz_table(std::vector<class_record> const & records, u64 limit)
{
    std::vector<u64> h(limit, 0);
    for (auto const & r : records) {
        if (r.abs_disc < limit) {
            h[r.abs_disc] = r.h;
        }
    }
    fundamental_sieve sieve(limit);

    /* smallest prime factors for conductors */
    u64 fmax = isqrt(limit) + 1;
    std::vector<u64> spf(fmax + 1, 0);
    for (u64 i = 2; i <= fmax; ++i) {
        if (spf[i] == 0) {
            for (u64 j = i; j <= fmax; j += i) {
                if (spf[j] == 0) {
                    spf[j] = i;
                }
            }
        }
    }

    std::vector<u64> H(limit, 0);
    std::vector<bool> seen(limit, false);
    for (u64 D1 = 3; D1 < limit; ++D1) {
        if (!sieve.is_fundamental(D1)) {
            continue;
        }
        if (h[D1] == 0) {
            throw std::invalid_argument("missing class record for fundamental |Δ| = " + std::to_string(D1));
        }
        u64 base = D1 == 3 ? 4 : D1 == 4 ? 6 : 12 * h[D1];
        i64 delta = -static_cast<i64>(D1);
        for (u64 f = 1; D1 * f * f < limit; ++f) {
            /* sum over d | f of prod_{p^k || d} p^(k-1) (p - chi(p)) */
            u64 sum = 1;
            for (u64 m = f; m > 1;) {
                u64 p = spf[m];
                unsigned k = 0;
                while (m % p == 0) {
                    m /= p;
                    ++k;
                }
                i64 chi = kronecker(delta, p);
                u64 term = static_cast<u64>(static_cast<i64>(p) - chi);
                u64 local = 1, pk = 1;
                for (unsigned j = 1; j <= k; ++j) {
                    local += pk * term;
                    pk *= p;
                }
                sum *= local;
            }
            u64 n = D1 * f * f;
            H[n] = base * sum;
            seen[n] = true;
        }
    }
    for (u64 n = 3; n < limit; ++n) {
        if ((n % 4 == 0 || n % 4 == 3) && !seen[n]) {
            throw std::logic_error("no fundamental decomposition for n = " + std::to_string(n));
        }
    }
    return H;
}

} // namespace classtab

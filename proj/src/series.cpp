#include "classtab/series.hpp"

#include <stdexcept>

namespace classtab {

namespace {

u64 term_index(series_kind base, u64 k)
{
    switch (base) {
    case series_kind::theta3:
        return k * k;
    case series_kind::nabla:
        return k * (k + 1) / 2;
    case series_kind::nabla_q2:
        return k * (k + 1);
    default:
        throw std::logic_error("not a base series kind");
    }
}

u64 term_coeff(series_kind base, u64 k)
{
    return base == series_kind::theta3 && k != 0 ? 2 : 1;
}

/* smallest k with term_index(base, k) >= x */
u64 first_term_at_least(series_kind base, u64 x)
{
    u64 k = 0;
    switch (base) {
    case series_kind::theta3:
        k = isqrt(x);
        break;
    case series_kind::nabla:
        k = isqrt(2 * x);
        break;
    case series_kind::nabla_q2:
        k = isqrt(x);
        break;
    default:
        throw std::logic_error("not a base series kind");
    }
    while (k > 0 && term_index(base, k - 1) >= x) {
        --k;
    }
    while (term_index(base, k) < x) {
        ++k;
    }
    return k;
}

void fill_base_block(series_kind base, u64 first, u64 end, coeff_table & out)
{
    for (u64 k = first_term_at_least(base, first);; ++k) {
        u64 idx = term_index(base, k);
        if (idx >= end) {
            break;
        }
        out.set(idx, term_coeff(base, k));
    }
}

/* two nested loops over the terms whose indices sum into [first, end) */
void fill_squared_block(series_kind base, u64 first, u64 end, coeff_table & out)
{
    std::vector<u64> acc(end - first, 0);
    for (u64 k1 = 0;; ++k1) {
        u64 i1 = term_index(base, k1);
        if (i1 >= end) {
            break;
        }
        u64 c1 = term_coeff(base, k1);
        u64 lo = first > i1 ? first - i1 : 0;
        for (u64 k2 = first_term_at_least(base, lo);; ++k2) {
            u64 i2 = term_index(base, k2);
            if (i1 + i2 >= end) {
                break;
            }
            acc[i1 + i2 - first] += c1 * term_coeff(base, k2);
        }
    }
    for (u64 i = 0; i < acc.size(); ++i) {
        if (acc[i] != 0) {
            out.set(first + i, acc[i]);
        }
    }
}

} // namespace

std::string to_string(series_kind kind)
{
    switch (kind) {
    case series_kind::theta3:
        return "theta3";
    case series_kind::nabla:
        return "nabla";
    case series_kind::nabla_q2:
        return "nabla_q2";
    case series_kind::theta3_sq:
        return "theta3_sq";
    case series_kind::nabla_sq:
        return "nabla_sq";
    case series_kind::nabla_q2_sq:
        return "nabla_q2_sq";
    }
    return "unknown";
}

bool is_squared(series_kind kind)
{
    return kind == series_kind::theta3_sq || kind == series_kind::nabla_sq
        || kind == series_kind::nabla_q2_sq;
}

series_kind base_of(series_kind kind)
{
    switch (kind) {
    case series_kind::theta3_sq:
        return series_kind::theta3;
    case series_kind::nabla_sq:
        return series_kind::nabla;
    case series_kind::nabla_q2_sq:
        return series_kind::nabla_q2;
    default:
        return kind;
    }
}

unsigned default_width(series_kind kind)
{
    return is_squared(kind) ? 4 : 1;
}

coeff_table generate(series_kind kind, std::size_t length, std::size_t partition_size,
                     unsigned width, unsigned threads)
{
    if (length == 0) {
        throw std::invalid_argument("series length must be at least 1");
    }
    if (partition_size == 0) {
        throw std::invalid_argument("partition size must be positive");
    }
    coeff_table out(length, width == 0 ? default_width(kind) : width);
    std::size_t blocks = (length + partition_size - 1) / partition_size;
    series_kind base = base_of(kind);
    bool squared = is_squared(kind);
    parallel_for(blocks, threads, [&](std::size_t b) {
        u64 first = b * partition_size;
        u64 end = std::min<u64>(first + partition_size, length);
        if (squared) {
            fill_squared_block(base, first, end, out);
        } else {
            fill_base_block(base, first, end, out);
        }
    });
    return out;
}

coeff_table convolve_naive(coeff_table const & a, coeff_table const & b, std::size_t out_length)
{
    if (a.length() == 0 || b.length() == 0 || out_length > a.length() + b.length() - 1) {
        throw std::invalid_argument("out_length exceeds the full product length");
    }
    auto av = a.values();
    auto bv = b.values();
    std::vector<u128> acc(out_length, 0);
    for (std::size_t i = 0; i < av.size() && i < out_length; ++i) {
        if (av[i] == 0) {
            continue;
        }
        std::size_t jmax = std::min(bv.size(), out_length - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            u128 term = static_cast<u128>(av[i]) * bv[j];
            if (__builtin_add_overflow(acc[i + j], term, &acc[i + j])) {
                throw std::overflow_error("naive convolution accumulator overflow");
            }
        }
    }
    coeff_table out(out_length, 8);
    for (std::size_t k = 0; k < out_length; ++k) {
        if (acc[k] > ~u64{0}) {
            throw std::overflow_error("convolution coefficient exceeds 64 bits");
        }
        out.set(k, static_cast<u64>(acc[k]));
    }
    return out;
}

} // namespace classtab

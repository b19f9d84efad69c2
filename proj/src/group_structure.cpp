#include "classtab/group_structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "classtab/modarith.hpp"

namespace classtab {

namespace {

u64 splitmix64(u64 x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

u64 ipow(u64 p, unsigned e)
{
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= p;
    }
    return r;
}

u64 form_key(qform const & f)
{
    return (static_cast<u64>(f.a) << 32) ^ static_cast<std::uint32_t>(f.b);
}

/* prime forms (q, b, c) for the split or ramified primes q, on demand */
class prime_form_pool
{
  public:
    explicit prime_form_pool(u64 D) : D_(D) {}

    /* forms with q <= limit, stopping early once `want` forms exist */
    std::vector<qform> const & up_to(u64 limit, std::size_t want = ~std::size_t{0})
    {
        while (next_q_ <= limit && forms_.size() < want) {
            u64 q = next_q_;
            next_q_ = next_prime(q);
            if (auto f = make(q)) {
                forms_.push_back(*f);
            }
        }
        return forms_;
    }

  private:
    std::optional<qform> make(u64 q) const
    {
        i64 b = 0;
        if (q == 2) {
            if (D_ % 8 == 3) {
                return std::nullopt;
            }
            b = D_ % 8 == 7 ? 1 : D_ % 8 == 4 ? 2 : 0;
        } else {
            i64 delta = -static_cast<i64>(D_);
            if (kronecker(delta, q) == -1) {
                return std::nullopt;
            }
            u64 r = sqrt_mod_prime((q - D_ % q) % q, q);
            if (r == 0) {
                r = D_ % 2 == 0 ? 0 : q;
            } else if (r % 2 != D_ % 2) {
                r = q - r;
            }
            b = static_cast<i64>(r);
        }
        u64 num = static_cast<u64>(b * b) + D_;
        if (num % (4 * q) != 0) {
            throw std::logic_error("prime form construction failed");
        }
        u64 c = num / (4 * q);
        /* q dividing the conductor can give an imprimitive form */
        if (gcd(q, gcd(static_cast<u64>(b), c)) != 1) {
            return std::nullopt;
        }
        return reduce(qform{static_cast<i64>(q), b, static_cast<i64>(c)});
    }

    u64 D_;
    u64 next_q_ = 2;
    std::vector<qform> forms_;
};

/* Smith form valuations of an integer matrix whose lattice has index p^e */
std::vector<unsigned> snf_valuations(std::vector<std::vector<i64>> M, u64 p, unsigned e)
{
    std::size_t r = M.size();
    u64 P = ipow(p, e + 1);
    std::vector<std::vector<u64>> A(r, std::vector<u64>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            i64 v = M[i][j] % static_cast<i64>(P);
            A[i][j] = static_cast<u64>(v < 0 ? v + static_cast<i64>(P) : v);
        }
    }
    auto val = [p](u64 x) {
        unsigned v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    std::vector<unsigned> out;
    for (std::size_t t = 0; t < r; ++t) {
        std::size_t bi = r, bj = r;
        unsigned best = ~0u;
        for (std::size_t i = t; i < r; ++i) {
            for (std::size_t j = t; j < r; ++j) {
                if (A[i][j] != 0 && val(A[i][j]) < best) {
                    best = val(A[i][j]);
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == r) {
            throw std::logic_error("relation lattice has index above p^e");
        }
        std::swap(A[t], A[bi]);
        for (auto & row : A) {
            std::swap(row[t], row[bj]);
        }
        u64 pv = ipow(p, best);
        u64 unit_inv = invmod(A[t][t] / pv, P);
        for (auto & x : A[t]) {
            x = mulmod(x, unit_inv, P);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == t || A[i][t] == 0) {
                continue;
            }
            u64 factor = A[i][t] / pv;
            for (std::size_t j = 0; j < r; ++j) {
                A[i][j] = (A[i][j] + P - mulmod(factor, A[t][j], P)) % P;
            }
        }
        for (std::size_t j = t + 1; j < r; ++j) {
            A[t][j] = 0;
        }
        out.push_back(best);
    }
    return out;
}

} // namespace

factored_order factored_order::of(u64 h)
{
    factored_order f;
    if (h > 1) {
        f.factors = factor(h);
    }
    return f;
}

u64 factored_order::value() const
{
    u64 v = 1;
    for (auto [p, e] : factors) {
        v *= ipow(p, e);
    }
    return v;
}

factored_order noncyclic_part(factored_order const & h)
{
    factored_order out;
    for (auto [p, e] : h.factors) {
        if (e >= 2) {
            out.factors.emplace_back(p, e);
        }
    }
    return out;
}

std::vector<u64> sylow_with_pool(u64 D, u64 h, u64 p, unsigned e, u64 seed, prime_form_pool & pool)
{
    if (e == 0) {
        return {};
    }
    if (e == 1) {
        return {p};
    }
    u64 pe = ipow(p, e);
    if (h % pe != 0 || (h / pe) % p == 0) {
        throw std::invalid_argument("p^e must exactly divide h");
    }
    u64 const cap = u64{1} << 22;
    if (pe > cap) {
        throw std::runtime_error("p-Sylow subgroup exceeds the explicit table cap");
    }
    u64 cof = h / pe;
    qform id = principal_form(D);

    std::vector<qform> elems{id};
    std::unordered_map<u64, std::uint32_t> index{{form_key(id), 0}};
    std::vector<u64> orders;                 /* m_i */
    std::vector<std::vector<i64>> relations; /* rows of the relation matrix */

    double lg = std::log(static_cast<double>(D));
    u64 small_limit = std::max<u64>(30, static_cast<u64>(6 * lg * lg));
    u64 full_limit = isqrt(D / 3) + 1;
    std::size_t const budget = 2000;

    auto decode = [&](std::uint32_t idx) {
        std::vector<i64> k(orders.size());
        u64 x = idx;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            k[i] = static_cast<i64>(x % orders[i]);
            x /= orders[i];
        }
        return k;
    };

    for (std::size_t attempt = 0; elems.size() < pe; ++attempt) {
        if (attempt >= budget) {
            throw std::runtime_error("random element budget exhausted for |Δ| = " + std::to_string(D));
        }
        /* every reduced form is a product of prime forms with q <= sqrt(D/3) */
        auto const & forms = attempt < 16    ? pool.up_to(std::min(small_limit, full_limit), 12)
                             : attempt < budget / 4 ? pool.up_to(std::min(small_limit, full_limit))
                                                    : pool.up_to(full_limit);
        if (forms.empty()) {
            throw std::runtime_error("no prime forms available");
        }
        qform x = id;
        for (u64 t = 0; t < 3; ++t) {
            u64 r = splitmix64(splitmix64(D ^ splitmix64(seed)) + attempt * 3 + t);
            qform const & f = forms[r % forms.size()];
            x = compose(x, (r >> 32) & 1 ? inverse(f) : f);
        }
        qform y = power(x, cof);
        if (power(y, pe) != id) {
            throw std::logic_error("element order exceeds p^e; class number is wrong");
        }
        qform z = y;
        unsigned j = 0;
        auto hit = index.find(form_key(z));
        while (hit == index.end()) {
            z = power(z, p);
            ++j;
            hit = index.find(form_key(z));
        }
        if (j == 0) {
            continue;
        }
        u64 m = ipow(p, j);
        if (pe % (elems.size() * m) != 0 || elems.size() * m > pe) {
            throw std::logic_error("subgroup order overshoots p^e");
        }
        /* relation y^m = prod g_i^k_i */
        std::vector<i64> row = decode(hit->second);
        for (auto & v : row) {
            v = -v;
        }
        row.push_back(static_cast<i64>(m));
        for (auto & old : relations) {
            old.push_back(0);
        }
        relations.push_back(row);

        std::size_t base = elems.size();
        elems.reserve(base * m);
        qform yt = id;
        for (u64 t = 1; t < m; ++t) {
            yt = compose(yt, y);
            for (std::size_t i = 0; i < base; ++i) {
                qform g = compose(elems[i], yt);
                if (!index.emplace(form_key(g), static_cast<std::uint32_t>(elems.size())).second) {
                    throw std::logic_error("subgroup extension produced a duplicate element");
                }
                elems.push_back(g);
            }
        }
        orders.push_back(m);
    }

    std::vector<u64> divisors;
    unsigned total = 0;
    for (unsigned v : snf_valuations(relations, p, e)) {
        if (v > 0) {
            divisors.push_back(ipow(p, v));
            total += v;
        }
    }
    if (total != e) {
        throw std::logic_error("Smith form does not account for p^e");
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

std::vector<u64> sylow_structure(u64 D, u64 h, u64 p, unsigned e, u64 seed)
{
    prime_form_pool pool(D);
    return sylow_with_pool(D, h, p, e, seed, pool);
}

class_record resolve(class_record record, u64 seed, std::optional<unsigned> two_rank)
{
    if (record.h == 0) {
        throw std::invalid_argument("class number must be positive");
    }
    std::map<u64, std::vector<unsigned>> parts;
    prime_form_pool pool(record.abs_disc);
    for (auto [p, e] : factored_order::of(record.h).factors) {
        if (p == 2 && two_rank && (*two_rank == e || *two_rank == 1)) {
            /* elementary or cyclic 2-part, read off the genus count */
            if (*two_rank == 1) {
                parts[2].push_back(e);
            } else {
                parts[2].assign(e, 1);
            }
            continue;
        }
        for (u64 d : sylow_with_pool(record.abs_disc, record.h, p, e, seed, pool)) {
            unsigned v = 0;
            for (u64 x = d; x > 1; x /= p) {
                ++v;
            }
            parts[p].push_back(v);
        }
    }
    record.group = abelian_group::from_prime_powers(parts);
    if (record.group.order() != record.h) {
        throw std::logic_error("resolved group order differs from h");
    }
    record.resolved = true;
    return record;
}

void resolve_all(std::vector<class_record> & records, unsigned threads, u64 seed,
                 fundamental_sieve const * genus)
{
    std::size_t block = 1024;
    std::size_t blocks = (records.size() + block - 1) / block;
    parallel_for(blocks, threads, [&](std::size_t b) {
        std::size_t end = std::min(records.size(), (b + 1) * block);
        for (std::size_t i = b * block; i < end; ++i) {
            std::optional<unsigned> two_rank;
            if (genus && genus->is_fundamental(records[i].abs_disc)) {
                two_rank = genus->omega(records[i].abs_disc) - 1;
            }
            records[i] = resolve(records[i], seed, two_rank);
            if (two_rank) {
                unsigned expect = *two_rank;
                if (records[i].group.rank(2) != expect) {
                    throw std::logic_error("2-rank contradicts genus theory at |Δ| = "
                                           + std::to_string(records[i].abs_disc));
                }
            }
        }
    });
}

} // namespace classtab

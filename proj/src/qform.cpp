#include "classtab/qform.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "classtab/modarith.hpp"

namespace classtab {

namespace {

/* floor division and nonnegative remainder for b > 0 */
template <class T>
T fdiv(T const & a, T const & b)
{
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        q -= 1;
    }
    return q;
}

mpz_class fdiv(mpz_class const & a, mpz_class const & b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

template <class T>
T fmod_pos(T const & a, T const & b)
{
    T r = a % b;
    return r < 0 ? r + b : r;
}

mpz_class fmod_pos(mpz_class const & a, mpz_class const & b)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/* g = u*a + v*b, g >= 0 */
template <class T>
std::tuple<T, T, T> xgcd(T a, T b)
{
    T u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        T q = a / b;
        T r = a - q * b;
        a = b;
        b = r;
        T u2 = u0 - q * u1;
        T v2 = v0 - q * v1;
        u0 = u1;
        v0 = v1;
        u1 = u2;
        v1 = v2;
    }
    if (a < 0) {
        return {-a, -u0, -v0};
    }
    return {a, u0, v0};
}

template <class T>
struct form3
{
    T a, b, c;
};

/* b into (-a, a] by x -> x - qy */
template <class T>
void normalize(form3<T> & f)
{
    if (-f.a < f.b && f.b <= f.a) {
        return;
    }
    T two_a = 2 * f.a;
    T q = fdiv(T(f.b + f.a - 1), two_a);
    T b_old = f.b;
    f.b = b_old - q * two_a;
    f.c = f.c - q * (b_old - f.a * q);
}

template <class T>
form3<T> reduce_t(form3<T> f)
{
    normalize(f);
    while (f.a > f.c) {
        T t = f.a;
        f.a = f.c;
        f.c = t;
        f.b = -f.b;
        normalize(f);
    }
    if (f.a == f.c && f.b < 0) {
        f.b = -f.b;
    }
    return f;
}

/* Gauss composition of two forms of equal discriminant, reduced result */
template <class T>
form3<T> compose_t(form3<T> f1, form3<T> f2)
{
    if (f1.a > f2.a) {
        std::swap(f1, f2);
    }
    T s = (f1.b + f2.b) / 2;
    T n = f2.b - s;
    T y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        auto [g, u, v] = xgcd(f2.a, f1.a);
        (void)v;
        y1 = u;
        d = g;
    }
    T x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto [g, u, v] = xgcd(s, d);
        x2 = u;
        y2 = -v;
        d1 = g;
    }
    T v1 = f1.a / d1;
    T v2 = f2.a / d1;
    T r = fmod_pos(T(fmod_pos(T(y1 * y2), v1) * fmod_pos(n, v1) - fmod_pos(T(x2 * fmod_pos(f2.c, v1)), v1)), v1);
    form3<T> out;
    out.b = f2.b + 2 * v2 * r;
    out.a = v1 * v2;
    out.c = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
    return reduce_t(out);
}

template <class T>
bool reduced_t(form3<T> const & f)
{
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) {
        return false;
    }
    return !(f.a == f.c && f.b < 0);
}

bool fits_i64(qform const & f)
{
    i128 d = -f.disc();
    i64 lim_ab = i64{1} << 20;
    i64 lim_c = i64{1} << 38;
    return d < (i128{1} << 38) && f.a < lim_ab && f.b < lim_ab && f.b > -lim_ab && f.c < lim_c;
}

form3<i64> to64(qform const & f)
{
    return {f.a, f.b, f.c};
}

form3<i128> to128(qform const & f)
{
    return {f.a, f.b, f.c};
}

qform from(form3<i64> const & f)
{
    return {f.a, f.b, f.c};
}

qform from(form3<i128> const & f)
{
    if (f.c > std::numeric_limits<i64>::max() || f.b > std::numeric_limits<i64>::max()
        || f.b < std::numeric_limits<i64>::min()) {
        throw std::overflow_error("form coefficient exceeds 64 bits");
    }
    return {static_cast<i64>(f.a), static_cast<i64>(f.b), static_cast<i64>(f.c)};
}

void check_form(qform const & f)
{
    if (f.a <= 0) {
        throw std::invalid_argument("form must have a > 0");
    }
    i128 d = f.disc();
    if (d >= 0) {
        throw std::invalid_argument("form must have negative discriminant");
    }
    if (-d >= static_cast<i128>(qform_word_limit)) {
        throw std::invalid_argument("discriminant outside the word range; use qform_z");
    }
}

void check_form(qform_z const & f)
{
    if (f.a <= 0) {
        throw std::invalid_argument("form must have a > 0");
    }
    if (f.disc() >= 0) {
        throw std::invalid_argument("form must have negative discriminant");
    }
}

} // namespace

bool qform::is_reduced() const
{
    return reduced_t(to64(*this));
}

std::string qform::to_string() const
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool qform_z::is_reduced() const
{
    return reduced_t(form3<mpz_class>{a, b, c});
}

qform principal_form(u64 abs_disc)
{
    if (abs_disc % 4 != 0 && abs_disc % 4 != 3) {
        throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    }
    i64 b = abs_disc % 2;
    return {1, b, static_cast<i64>((abs_disc + static_cast<u64>(b)) / 4)};
}

qform_z principal_form_z(mpz_class const & abs_disc)
{
    mpz_class b = abs_disc % 2;
    return {1, b, (abs_disc + b) / 4};
}

qform reduce(qform f)
{
    check_form(f);
    if (fits_i64(f)) {
        return from(reduce_t(to64(f)));
    }
    return from(reduce_t(to128(f)));
}

qform_z reduce(qform_z f)
{
    check_form(f);
    auto r = reduce_t(form3<mpz_class>{f.a, f.b, f.c});
    return {r.a, r.b, r.c};
}

qform compose(qform const & f, qform const & g)
{
    if (f.disc() != g.disc()) {
        throw std::invalid_argument("cannot compose forms of different discriminants");
    }
    qform x = f.is_reduced() ? f : reduce(f);
    qform y = g.is_reduced() ? g : reduce(g);
    check_form(x);
    if (fits_i64(x) && fits_i64(y)) {
        return from(compose_t(to64(x), to64(y)));
    }
    return from(compose_t(to128(x), to128(y)));
}

qform_z compose(qform_z const & f, qform_z const & g)
{
    if (f.disc() != g.disc()) {
        throw std::invalid_argument("cannot compose forms of different discriminants");
    }
    auto x = reduce(f);
    auto y = reduce(g);
    auto r = compose_t(form3<mpz_class>{x.a, x.b, x.c}, form3<mpz_class>{y.a, y.b, y.c});
    return {r.a, r.b, r.c};
}

qform inverse(qform const & f)
{
    return reduce(qform{f.a, -f.b, f.c});
}

qform_z inverse(qform_z const & f)
{
    return reduce(qform_z{f.a, -f.b, f.c});
}

qform square(qform const & f)
{
    return compose(f, f);
}

qform power(qform const & f, u64 e)
{
    qform base = reduce(f);
    qform result = principal_form(static_cast<u64>(-base.disc()));
    while (e != 0) {
        if (e & 1) {
            result = compose(result, base);
        }
        e >>= 1;
        if (e != 0) {
            base = compose(base, base);
        }
    }
    return result;
}

qform_z power(qform_z const & f, mpz_class e)
{
    if (e < 0) {
        throw std::invalid_argument("negative exponent");
    }
    qform_z base = reduce(f);
    qform_z result = principal_form_z(-base.disc());
    while (e != 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            result = compose(result, base);
        }
        e /= 2;
        if (e != 0) {
            base = compose(base, base);
        }
    }
    return result;
}

std::vector<qform> reduced_forms(u64 D)
{
    if (D % 4 != 0 && D % 4 != 3) {
        throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    }
    std::vector<qform> out;
    for (u64 b = D % 2; 3 * b * b <= D; b += 2) {
        u64 m = (b * b + D) / 4;
        for (u64 a = std::max<u64>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) {
                continue;
            }
            u64 c = m / a;
            if (gcd(gcd(a, b), c) != 1) {
                continue;
            }
            auto ia = static_cast<i64>(a), ib = static_cast<i64>(b), ic = static_cast<i64>(c);
            out.push_back({ia, ib, ic});
            if (b != 0 && a != b && a != c) {
                out.push_back({ia, -ib, ic});
            }
        }
    }
    return out;
}

u64 count_classes(u64 D)
{
    if (D % 4 != 0 && D % 4 != 3) {
        throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    }
    u64 h = 0;
    for (u64 b = D % 2; 3 * b * b <= D; b += 2) {
        u64 m = (b * b + D) / 4;
        for (u64 a = std::max<u64>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) {
                continue;
            }
            u64 c = m / a;
            if (gcd(gcd(a, b), c) != 1) {
                continue;
            }
            h += (b == 0 || a == b || a == c) ? 1 : 2;
        }
    }
    return h;
}

u64 hurwitz12(u64 D)
{
    if (D == 0) {
        return 0;
    }
    if (D % 4 != 0 && D % 4 != 3) {
        return 0;
    }
    u64 total = 0;
    for (u64 b = D % 2; 3 * b * b <= D; b += 2) {
        u64 m = (b * b + D) / 4;
        for (u64 a = std::max<u64>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) {
                continue;
            }
            u64 c = m / a;
            if (b == 0) {
                total += a == c ? 6 : 12;
            } else if (b == a) {
                total += a == c ? 4 : 12;
            } else {
                total += a == c ? 12 : 24;
            }
        }
    }
    return total;
}

std::vector<std::uint32_t> class_numbers_upto(u64 N, std::vector<bool> const * fundamental,
                                              bool only_7mod8)
{
    if (fundamental && fundamental->size() < N) {
        throw std::invalid_argument("fundamental bitmap shorter than the bound");
    }
    std::vector<std::uint32_t> h(N, 0);
    for (u64 a = 1; 3 * a * a < N; ++a) {
        for (u64 b = only_7mod8 ? 1 : 0; b <= a; b += only_7mod8 ? 2 : 1) {
            u64 c0 = a, step = 1;
            if (only_7mod8 && a % 2 == 1) {
                /* D = 7 mod 8 needs b odd and ac even */
                c0 = a + 1;
                step = 2;
            }
            u64 bb = b * b;
            for (u64 c = c0;; c += step) {
                u64 D = 4 * a * c - bb;
                if (D >= N) {
                    break;
                }
                if (fundamental) {
                    if (!(*fundamental)[D]) {
                        continue;
                    }
                } else if (gcd(gcd(a, b), c) != 1) {
                    continue;
                }
                h[D] += (b == 0 || b == a || a == c) ? 1 : 2;
            }
        }
    }
    return h;
}

std::vector<std::uint32_t> hurwitz12_upto(u64 N)
{
    std::vector<std::uint32_t> H(N, 0);
    for (u64 a = 1; 3 * a * a < N; ++a) {
        for (u64 b = 0; b <= a; ++b) {
            u64 bb = b * b;
            for (u64 c = a;; ++c) {
                u64 D = 4 * a * c - bb;
                if (D >= N) {
                    break;
                }
                if (b == 0) {
                    H[D] += a == c ? 6 : 12;
                } else if (b == a) {
                    H[D] += a == c ? 4 : 12;
                } else {
                    H[D] += a == c ? 12 : 24;
                }
            }
        }
    }
    return H;
}

abelian_group group_table(u64 D)
{
    auto forms = reduced_forms(D);
    u64 h = forms.size();
    if (h > 100000) {
        throw std::invalid_argument("class number too large for the enumeration oracle");
    }
    qform id = principal_form(D);
    std::map<u64, std::vector<unsigned>> parts;
    for (auto [p, e] : factor(h == 0 ? 1 : h)) {
        /* torsion[t] = #{x : x^(p^t) = 1} */
        std::vector<u64> torsion(e + 1, 0);
        for (auto const & x : forms) {
            qform y = x;
            for (unsigned t = 0; t <= e; ++t) {
                if (y == id) {
                    for (unsigned u = t; u <= e; ++u) {
                        ++torsion[u];
                    }
                    break;
                }
                y = power(y, p);
            }
        }
        /* rank[t] = number of cyclic factors of order >= p^t */
        std::vector<unsigned> rank(e + 2, 0);
        for (unsigned t = 1; t <= e; ++t) {
            u64 ratio = torsion[t] / torsion[t - 1];
            if (torsion[t] % torsion[t - 1] != 0) {
                throw std::logic_error("inconsistent torsion counts");
            }
            while (ratio > 1) {
                if (ratio % p != 0) {
                    throw std::logic_error("torsion ratio is not a power of p");
                }
                ratio /= p;
                ++rank[t];
            }
        }
        for (unsigned t = 1; t <= e; ++t) {
            for (unsigned k = rank[t + 1]; k < rank[t]; ++k) {
                parts[p].push_back(t);
            }
        }
    }
    auto g = abelian_group::from_prime_powers(parts);
    if (g.order() != h) {
        throw std::logic_error("group table order disagrees with the class count");
    }
    return g;
}

} // namespace classtab

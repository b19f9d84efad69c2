#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "classtab/abelian_group.hpp"
#include "classtab/common.hpp"

namespace classtab {

/*
 * Positive definite binary quadratic form a x^2 + b xy + c y^2 with
 * discriminant b^2 - 4ac < 0. Machine-word version; valid for |disc| < 2^59.
 * Arithmetic runs in 64-bit integers for |disc| < 2^38 and 128-bit integers
 * above that.
 */
struct qform
{
    i64 a = 1, b = 0, c = 1;

    i128 disc() const { return static_cast<i128>(b) * b - static_cast<i128>(4) * a * c; }
    bool is_reduced() const;
    std::string to_string() const;

    friend bool operator==(qform const &, qform const &) = default;
};

/* Arbitrary-precision forms for discriminants beyond the word range. */
struct qform_z
{
    mpz_class a = 1, b = 0, c = 1;

    mpz_class disc() const { return b * b - 4 * a * c; }
    bool is_reduced() const;

    friend bool operator==(qform_z const & x, qform_z const & y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

inline constexpr u64 qform_word_limit = u64{1} << 59;

/* Principal form of discriminant -abs_disc (abs_disc = 0 or 3 mod 4). */
qform principal_form(u64 abs_disc);
qform_z principal_form_z(mpz_class const & abs_disc);

/* Reduced representative; throws std::invalid_argument for a <= 0 or disc >= 0. */
qform reduce(qform f);
qform_z reduce(qform_z f);

/* Reduced composition; throws std::invalid_argument on mismatched discriminants. */
qform compose(qform const & f, qform const & g);
qform_z compose(qform_z const & f, qform_z const & g);

qform inverse(qform const & f);
qform_z inverse(qform_z const & f);

qform square(qform const & f);
qform power(qform const & f, u64 e);
qform_z power(qform_z const & f, mpz_class e);

/* Reduced primitive forms of discriminant -abs_disc, in enumeration order. */
std::vector<qform> reduced_forms(u64 abs_disc);

/* Number of reduced primitive forms of discriminant -abs_disc. */
u64 count_classes(u64 abs_disc);

/* 12 * H(abs_disc): all reduced forms, (a,0,a) weighted 6 and (a,a,a) weighted 4. */
u64 hurwitz12(u64 abs_disc);

/*
 * Class numbers for every abs_disc < N in one sweep over reduced forms.
 *   fundamental: if non-null, only indices marked true are counted and the
 *                primitivity test is skipped (a form of fundamental
 *                discriminant is always primitive);
 *   only_7mod8:  restrict the sweep to abs_disc = 7 (mod 8).
 * Entries not counted are 0.
 */
std::vector<std::uint32_t> class_numbers_upto(u64 N, std::vector<bool> const * fundamental = nullptr,
                                              bool only_7mod8 = false);

/* 12 * H(n) for every n < N. */
std::vector<std::uint32_t> hurwitz12_upto(u64 N);

/* Structure of Cl(-abs_disc) from the explicit element list; refuses h > 10^5. */
abelian_group group_table(u64 abs_disc);

} // namespace classtab

#include <doctest.h>

#include <mpfr.h>

#include "classtab/classnum.hpp"
#include "classtab/qform.hpp"
#include "classtab/series.hpp"
#include "oracle.hpp"

using namespace classtab;

namespace {

/* floor(1209/275/pi sqrt(N) (a log N + b)) at 256 bits */
u64 bound_mpfr(u64 N, bool even)
{
    mpfr_t t, u, pi, l;
    mpfr_inits2(256, t, u, pi, l, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_ui(l, N, MPFR_RNDN);
    mpfr_log(l, l, MPFR_RNDN);
    /* u = a log N + b */
    mpfr_set_ui(u, even ? 3 : 6, MPFR_RNDN);
    mpfr_log(u, u, MPFR_RNDN);
    if (even) {
        mpfr_div_ui(u, u, 2, MPFR_RNDN);
        mpfr_ui_sub(u, 0, u, MPFR_RNDN);
        mpfr_add_d(u, u, 1.25, MPFR_RNDN);
        mpfr_div_ui(t, l, 4, MPFR_RNDN);
    } else {
        mpfr_ui_sub(u, 0, u, MPFR_RNDN);
        mpfr_add_d(u, u, 2.5, MPFR_RNDN);
        mpfr_div_ui(t, l, 2, MPFR_RNDN);
    }
    mpfr_add(u, u, t, MPFR_RNDN);
    mpfr_set_ui(t, N, MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    mpfr_mul(u, u, t, MPFR_RNDN);
    mpfr_mul_ui(u, u, 1209, MPFR_RNDN);
    mpfr_div_ui(u, u, 275, MPFR_RNDN);
    mpfr_div(u, u, pi, MPFR_RNDN);
    mpfr_floor(u, u);
    u64 r = mpfr_get_ui(u, MPFR_RNDN);
    mpfr_clears(t, u, pi, l, static_cast<mpfr_ptr>(nullptr));
    return r;
}

std::vector<congruence_class> const all_classes{congruence_class::d8mod16, congruence_class::d12mod16,
                                                congruence_class::d5mod8, congruence_class::d1mod8};

} // namespace

TEST_CASE("congruence class names")
{
    for (auto c : all_classes) {
        CHECK(parse_congruence_class(to_string(c)) == c);
    }
    CHECK_FALSE(parse_congruence_class("3mod4"));
    CHECK(class_of(8) == congruence_class::d8mod16);
    CHECK(class_of(4) == congruence_class::d12mod16);
    CHECK(class_of(3) == congruence_class::d5mod8);
    CHECK(class_of(7) == congruence_class::d1mod8);
}

TEST_CASE("parameter table at 2^40")
{
    u64 const N = u64{1} << 40;
    CHECK(compute_bound(N, disc_parity::even) == 11199314);
    CHECK(compute_bound(N, disc_parity::odd) == 21381515);
    CHECK(compute_bit_size(congruence_class::d8mod16, N) == 24);
    CHECK(compute_bit_size(congruence_class::d12mod16, N) == 25);
    CHECK(compute_bit_size(congruence_class::d5mod8, N) == 26);
    CHECK(compute_prime_count(2048, 24, 62.0L) == 1586);
    CHECK(compute_prime_count(2048, 25, 62.0L) == 1652);
    CHECK(compute_prime_count(4096, 26, 62.0L) == 3435);
    CHECK_THROWS(compute_bound(N + 1, disc_parity::even));
    CHECK_THROWS(compute_bound(1, disc_parity::even));
}

TEST_CASE("bound agrees with high-precision evaluation")
{
    for (auto const & [key, v] : oracle()["bounds"].items()) {
        u64 N = std::stoull(key.substr(0, key.find('_')));
        bool even = key.find("even") != std::string::npos;
        CAPTURE(key);
        CHECK(compute_bound(N, even ? disc_parity::even : disc_parity::odd) == v.get<u64>());
        CHECK(bound_mpfr(N, even) == v.get<u64>());
    }
    for (u64 N : {u64{8}, u64{1000}, u64{1} << 20, u64{123456789}, u64{1} << 40}) {
        CHECK(compute_bound(N, disc_parity::even) == bound_mpfr(N, true));
        CHECK(compute_bound(N, disc_parity::odd) == bound_mpfr(N, false));
    }
}

TEST_CASE("bound covers every Hurwitz class number below N")
{
    auto H = oracle()["hurwitz12"].get<std::vector<u64>>();
    u64 N = H.size();
    u64 ce = compute_bound(N, disc_parity::even), co = compute_bound(N, disc_parity::odd);
    for (u64 n = 3; n < N; ++n) {
        if (H[n] == 0) {
            continue;
        }
        REQUIRE(H[n] < 12 * (n % 2 == 0 ? ce : co));
    }
}

TEST_CASE("prime count over the actual basis")
{
    auto basis = prime_basis::ntt_primes(40);
    auto primes = basis.moduli();
    u64 n = compute_prime_count(16, 20, primes);
    REQUIRE(n > 0);
    double cap = 0;
    for (u64 i = 0; i < n; ++i) {
        cap += std::log2(static_cast<double>(primes[i]));
    }
    CHECK(cap > 31 * 20);
    CHECK(cap - std::log2(static_cast<double>(primes[n - 1])) <= 31 * 20);
    CHECK(compute_prime_count(1 << 20, 64, primes) == 0);
}

TEST_CASE("fundamental discriminant sieve")
{
    fundamental_sieve sv(100000);
    for (auto const & [key, v] : oracle()["fundamental_count"].items()) {
        u64 x = std::stoull(key);
        u64 c = 0;
        for (u64 D = 0; D < x; ++D) {
            c += sv.is_fundamental(D);
        }
        CHECK(c == v.get<u64>());
    }
    CHECK(sv.count() == 30392);
    CHECK(sv.is_fundamental(3));
    CHECK(sv.is_fundamental(4));
    CHECK(sv.is_fundamental(8));
    CHECK_FALSE(sv.is_fundamental(12));
    CHECK_FALSE(sv.is_fundamental(16));
    CHECK_FALSE(sv.is_fundamental(27));
    CHECK(sv.omega(5460) == 5);
    for (auto const & [key, chain] : oracle()["groups"].items()) {
        REQUIRE(sv.is_fundamental(std::stoull(key)));
    }
}

TEST_CASE("F tables equal the series products")
{
    struct row
    {
        congruence_class cls;
        char const * name;
    };
    for (auto [cls, name] : {row{congruence_class::d8mod16, "8mod16"}, row{congruence_class::d12mod16, "12mod16"},
                             row{congruence_class::d5mod8, "5mod8"}}) {
        CAPTURE(name);
        auto want = oracle()["products"][name].get<std::vector<u64>>();
        u64 N = abs_disc_of(cls, want.size() - 1) + 1;
        auto F = tabulate_F(cls, N);
        REQUIRE(F.length() == want.size());
        CHECK(F.values() == want);
    }
    CHECK_THROWS(tabulate_F(congruence_class::d1mod8, 1000));
}

TEST_CASE("table index and discriminant")
{
    CHECK(abs_disc_of(congruence_class::d8mod16, 0) == 8);
    CHECK(abs_disc_of(congruence_class::d12mod16, 0) == 4);
    CHECK(abs_disc_of(congruence_class::d5mod8, 0) == 3);
    CHECK(table_length(congruence_class::d8mod16, 9) == 1);
    CHECK(table_length(congruence_class::d8mod16, 8) == 0);
    CHECK(table_length(congruence_class::d5mod8, 12) == 2);
}

TEST_CASE("bundle size covers the largest coefficient read")
{
    for (auto cls : {congruence_class::d8mod16, congruence_class::d12mod16, congruence_class::d5mod8}) {
        for (u64 N : {u64{100}, u64{5000}, u64{100000}}) {
            auto p = table_params(cls, N, 16);
            auto F = tabulate_F(cls, N);
            u64 m = 0;
            for (u64 v : F.values()) {
                m = std::max(m, v);
            }
            CHECK(m < (u64{1} << p.s));
        }
    }
}

TEST_CASE("class numbers from the pipeline match the oracle")
{
    u64 const N = 20000;
    auto recs = tabulate(N, all_classes);
    auto const & want = oracle()["class_numbers"];
    fundamental_sieve sv(N);
    CHECK(recs.size() == sv.count());
    u64 prev = 0;
    for (auto const & r : recs) {
        REQUIRE(r.abs_disc > prev);
        prev = r.abs_disc;
        REQUIRE(sv.is_fundamental(r.abs_disc));
        REQUIRE(r.h == want[std::to_string(r.abs_disc)].get<u64>());
        CHECK((r.source == provenance::enumeration) == (r.abs_disc % 8 == 7));
        CHECK_FALSE(r.resolved);
    }
}

TEST_CASE("smallest bound")
{
    auto recs = tabulate(8, all_classes);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].abs_disc == 3);
    CHECK(recs[1].abs_disc == 4);
    CHECK(recs[2].abs_disc == 7);
    for (auto const & r : recs) {
        CHECK(r.h == 1);
    }
}

TEST_CASE("tabulation does not depend on workers, block size or staging")
{
    auto ref = tabulate(60000, all_classes);
    tabulate_options opt;
    opt.threads = 3;
    opt.partition = 1000;
    opt.B = 64;
    opt.staging.where = staging_config::mode::disk;
    opt.staging.dir = std::filesystem::temp_directory_path() / "classtab_tab_stage";
    std::filesystem::remove_all(opt.staging.dir);
    CHECK(tabulate(60000, all_classes, opt) == ref);
    std::filesystem::remove_all(opt.staging.dir);
}

TEST_CASE("theta3 cubed from the three F tables")
{
    auto r3 = oracle()["theta3_cubed"].get<std::vector<u64>>();
    u64 const N = 4 * r3.size() + 16;
    auto c8 = tabulate_F(congruence_class::d8mod16, N).values();
    auto c12 = tabulate_F(congruence_class::d12mod16, N).values();
    auto c5 = tabulate_F(congruence_class::d5mod8, N).values();
    for (u64 n = 1; n < r3.size(); ++n) {
        u64 m = n;
        while (m % 4 == 0) {
            m /= 4;
        }
        u64 v = m % 4 == 2 ? 12 * c8[(m - 2) / 4]
              : m % 4 == 1 ? 6 * c12[(m - 1) / 4]
              : m % 8 == 3 ? 8 * c5[(m - 3) / 8]
                           : 0;
        REQUIRE(v == r3[n]);
    }
}

TEST_CASE("Hurwitz table from class records")
{
    auto want = oracle()["hurwitz12"].get<std::vector<u64>>();
    auto recs = tabulate(want.size(), all_classes);
    CHECK(build_hurwitz_table(recs, want.size()) == want);
    recs.erase(recs.begin() + 10);
    CHECK_THROWS(build_hurwitz_table(recs, want.size()));
}

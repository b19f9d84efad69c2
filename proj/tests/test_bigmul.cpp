#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "classtab/bigmul.hpp"
#include "classtab/series.hpp"

using namespace classtab;
namespace fs = std::filesystem;

namespace {

/* values below 2^bits, so naive sums stay inside 64 bits */
coeff_table random_table(std::size_t n, unsigned width, unsigned bits, std::mt19937_64 & rng)
{
    coeff_table t(n, width);
    for (std::size_t i = 0; i < n; ++i) {
        t.set(i, rng() & t.max_value() & ((u64{1} << bits) - 1));
    }
    return t;
}

fs::path fresh_dir(char const * name)
{
    auto d = fs::temp_directory_path() / name;
    fs::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("bundle parameters")
{
    auto p = bundle_params::make(100, 16, 24);
    CHECK(p.N0 == 7);
    CHECK(p.in_bits() == 384);
    CHECK(p.out_bits() == 31 * 24);
    CHECK_THROWS(bundle_params::make(100, 12, 24));
    CHECK_THROWS(bundle_params::make(100, 16, 0));
    CHECK_THROWS(bundle_params::make(100, 16, 65));
}

TEST_CASE("bundle packs s-bit digits")
{
    auto f = coeff_table::from_values(std::vector<u64>{1, 2, 3, 4, 5}, 1);
    auto p = bundle_params::make(5, 2, 8);
    auto F = bundle(f, p);
    REQUIRE(F.count == 3);
    CHECK(F.value(0) == 1 + 2 * 256);
    CHECK(F.value(1) == 3 + 4 * 256);
    CHECK(F.value(2) == 5);
    CHECK_THROWS_AS(bundle(coeff_table::from_values(std::vector<u64>{256}, 2), bundle_params::make(1, 2, 8)),
                    std::overflow_error);
}

TEST_CASE("product-tree CRT matches direct reduction")
{
    std::mt19937_64 rng(9);
    auto basis = prime_basis::ntt_primes(70);
    big_poly F(50, 66);
    for (auto & x : F.data) {
        x = rng();
    }
    for (std::size_t i = 0; i < F.count; ++i) {
        F.at(i)[65] &= (u64{1} << 40) - 1; /* stay below the product of 70 primes */
    }
    auto direct = reduce_mod_basis(F, basis, reduce_method::direct);
    auto tree = reduce_mod_basis(F, basis, reduce_method::tree);
    CHECK(direct == tree);
    auto back = crt_reconstruct(tree, basis, 66);
    CHECK(back == F);
}

TEST_CASE("multiply equals naive convolution on random tables")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + rng() % 600, m = 1 + rng() % 600;
        unsigned w = 1u << (rng() % 3);
        auto f = random_table(n, w, 26, rng), g = random_table(m, w, 26, rng);
        std::size_t out = 1 + rng() % (n + m);
        std::size_t B = std::size_t{1} << (rng() % 6);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(B);
        CHECK(multiply(f, g, out, B) == convolve_naive(f, g, out));
    }
}

TEST_CASE("s too small is reported, not truncated")
{
    auto f = coeff_table::from_values(std::vector<u64>{255, 255, 255, 255}, 1);
    auto p = bundle_params::make(8, 4, 9);
    auto basis = prime_basis::for_capacity(p.out_bits());
    CHECK_THROWS_AS(multiply(f, f, p, basis, {}, 7), std::overflow_error);
}

TEST_CASE("too few primes is a configuration error")
{
    auto f = coeff_table::from_values(std::vector<u64>{1, 2, 3}, 1);
    auto p = bundle_params::make(3, 16, 20);
    CHECK_THROWS(multiply(f, f, p, prime_basis::ntt_primes(2), {}, 5));
}

TEST_CASE("disk staging gives the in-memory product and resumes")
{
    auto dir = fresh_dir("classtab_bigmul_stage");
    auto f = generate(series_kind::nabla_q2_sq, 20000, 4096);
    auto g = generate(series_kind::theta3, 20000, 4096);
    auto p = bundle_params::for_inputs(f, g, 20000, 16);
    auto basis = prime_basis::for_capacity(p.out_bits());
    auto mem = multiply(f, g, p, basis, {}, 20000);

    staging_config disk;
    disk.where = staging_config::mode::disk;
    disk.dir = dir;
    disk.chunks = 5;
    disk.threads = 2;
    CHECK(multiply(f, g, p, basis, disk, 20000) == mem);
    CHECK(fs::exists(dir / "run.json"));
    /* all stages recorded: a second call reuses them */
    CHECK(multiply(f, g, p, basis, disk, 20000) == mem);

    /* a damaged stage file is detected */
    for (auto const & e : fs::directory_iterator(dir)) {
        if (e.path().filename().string().rfind("prod", 0) == 0) {
            std::fstream io(e.path(), std::ios::in | std::ios::out | std::ios::binary);
            io.seekg(static_cast<std::streamoff>(fs::file_size(e.path()) / 2));
            char byte = 0;
            io.get(byte);
            io.seekp(static_cast<std::streamoff>(fs::file_size(e.path()) / 2));
            io.put(static_cast<char>(byte ^ 0x5a));
            break;
        }
    }
    CHECK_THROWS_AS(multiply(f, g, p, basis, disk, 20000), staging_error);

    /* a different input starts over instead of mixing runs */
    auto g2 = generate(series_kind::nabla_q2, 20000, 4096);
    auto dir2 = fresh_dir("classtab_bigmul_stage2");
    disk.dir = dir2;
    CHECK(multiply(f, g2, p, basis, disk, 20000) == convolve_naive(f, g2, 20000));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("automatic staging spills once the budget is exceeded")
{
    auto dir = fresh_dir("classtab_bigmul_auto");
    auto f = generate(series_kind::nabla_sq, 5000, 1024);
    auto g = generate(series_kind::nabla, 5000, 1024);
    staging_config cfg;
    cfg.dir = dir;
    cfg.memory_budget = 1;
    CHECK(multiply(f, g, 5000, 16, cfg) == convolve_naive(f, g, 5000));
    CHECK(fs::exists(dir / "run.json"));
    fs::remove_all(dir);
}

TEST_CASE("worker count does not change the product")
{
    auto f = generate(series_kind::theta3_sq, 30000, 4096);
    auto g = generate(series_kind::nabla_q2, 30000, 4096);
    auto p = bundle_params::for_inputs(f, g, 30000, 8);
    auto basis = prime_basis::for_capacity(p.out_bits());
    staging_config one, four;
    four.threads = 4;
    CHECK(multiply(f, g, p, basis, one, 30000) == multiply(f, g, p, basis, four, 30000));
}

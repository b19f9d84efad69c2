#include <doctest.h>

#include <filesystem>
#include <random>

#include "classtab/series.hpp"
#include "oracle.hpp"

using namespace classtab;

namespace {

std::vector<u64> expected(std::string const & name, std::size_t n)
{
    auto v = oracle()["series"][name].get<std::vector<u64>>();
    v.resize(n);
    return v;
}

} // namespace

TEST_CASE("coeff_table widths and overflow")
{
    coeff_table t(10, 1);
    t.set(3, 255);
    CHECK(t.get(3) == 255);
    CHECK_THROWS_AS(t.set(4, 256), std::overflow_error);
    CHECK_THROWS_AS(t.add(3, 1), std::overflow_error);
    CHECK(width_for(255) == 1);
    CHECK(width_for(256) == 2);
    CHECK(width_for(u64{1} << 32) == 8);
    CHECK_THROWS(coeff_table(4, 3));
}

TEST_CASE("chunk files round trip")
{
    auto dir = std::filesystem::temp_directory_path() / "classtab_chunks_test";
    std::filesystem::remove_all(dir);
    std::vector<u64> v(1000);
    std::mt19937_64 rng(5);
    for (auto & x : v) {
        x = rng() & 0xffff;
    }
    auto t = coeff_table::from_values(v, 2);
    auto copy = t;
    auto paths = t.spill(dir, "probe", 300);
    CHECK(paths.size() == 4);
    CHECK_FALSE(t.in_memory());
    CHECK(t.values() == v);
    CHECK(t.read_chunk(3).size() == 100);
    auto reopened = coeff_table::open_chunks(dir, "probe", 2, 1000, 300);
    CHECK(reopened.values() == v);
    reopened.load();
    CHECK(reopened == copy);
    std::filesystem::resize_file(paths[2], 10);
    CHECK_THROWS(coeff_table::open_chunks(dir, "probe", 2, 1000, 300));
    std::filesystem::remove_all(dir);
}

TEST_CASE("series coefficients match direct expansion")
{
    for (auto kind : {series_kind::theta3, series_kind::nabla, series_kind::nabla_q2, series_kind::theta3_sq,
                      series_kind::nabla_sq, series_kind::nabla_q2_sq}) {
        CAPTURE(to_string(kind));
        CHECK(generate(kind, 400, 64).values() == expected(to_string(kind), 400));
    }
}

TEST_CASE("block size and worker count do not change a series")
{
    for (auto kind : {series_kind::theta3, series_kind::nabla_q2, series_kind::theta3_sq, series_kind::nabla_sq}) {
        auto ref = generate(kind, 5000, 5000);
        for (std::size_t part : {1, 7, 64, 1000, 4999}) {
            for (unsigned threads : {1u, 3u}) {
                CHECK(generate(kind, 5000, part, 0, threads) == ref);
            }
        }
    }
}

TEST_CASE("squared kinds agree with naive squaring")
{
    for (auto kind : {series_kind::theta3_sq, series_kind::nabla_sq, series_kind::nabla_q2_sq}) {
        auto base = generate(base_of(kind), 3000, 512);
        CHECK(generate(kind, 3000, 512).values() == convolve_naive(base, base, 3000).values());
    }
}

TEST_CASE("explicit width does not change the values")
{
    /* r2(n) stays below 256 for n < 10^5 */
    CHECK(generate(series_kind::theta3_sq, 100000, 4096, 1).values()
          == generate(series_kind::theta3_sq, 100000, 4096).values());
}

TEST_CASE("naive products match direct expansion")
{
    auto check = [](series_kind a, series_kind b, char const * name) {
        auto p = convolve_naive(generate(a, 400, 400), generate(b, 400, 400), 400);
        auto want = oracle()["products"][name].get<std::vector<u64>>();
        CHECK(p.values() == want);
    };
    check(series_kind::nabla_q2_sq, series_kind::theta3, "8mod16");
    check(series_kind::theta3_sq, series_kind::nabla_q2, "12mod16");
    check(series_kind::nabla_sq, series_kind::nabla, "5mod8");
}

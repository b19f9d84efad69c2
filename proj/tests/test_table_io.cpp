#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "classtab/digest.hpp"
#include "classtab/pipeline.hpp"
#include "classtab/qform.hpp"

using namespace classtab;
namespace fs = std::filesystem;

namespace {

std::vector<class_record> sample()
{
    std::vector<class_record> v(4);
    v[0] = {3, 1, abelian_group(), true, provenance::series};
    v[1] = {7, 1, abelian_group(), true, provenance::enumeration};
    v[2] = {3299, 27, abelian_group({3, 9}), true, provenance::series};
    v[3] = {5460, 16, abelian_group(), false, provenance::series};
    return v;
}

fs::path fresh(char const * name)
{
    auto d = fs::temp_directory_path() / name;
    fs::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("SHA-256 digests")
{
    std::string abc = "abc";
    CHECK(sha256_hex({reinterpret_cast<std::uint8_t const *>(abc.data()), abc.size()})
          == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    sha256 inc;
    inc.update("a", 1);
    inc.update("bc", 2);
    CHECK(inc.hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("binary and CSV tables round trip")
{
    for (auto f : {table_format::bin, table_format::csv}) {
        auto bytes = encode_table(sample(), f);
        CHECK(decode_table(bytes, f) == sample());
        CHECK(parse_table_format(to_string(f)) == f);
    }
    auto csv = encode_table(sample(), table_format::csv);
    CHECK(csv == "abs_disc,h,group\n3,1,1\n7,1,1\n3299,27,3x9\n5460,16,-\n");
    auto bin = encode_table(sample(), table_format::bin);
    CHECK(bin.size() == 4 * 17 + 2 * 8);
    CHECK_THROWS(decode_table(bin.substr(0, bin.size() - 3), table_format::bin));
    CHECK_THROWS(decode_table("nonsense\n", table_format::csv));
}

TEST_CASE("configuration checks")
{
    run_config c;
    c.out = "x";
    c.bound = 7;
    CHECK_THROWS_AS(validate(c), config_error);
    c.bound = 8;
    CHECK_NOTHROW(validate(c));
    c.memory_budget = 1000;
    CHECK_THROWS_AS(validate(c), config_error);
    c.memory_budget = min_memory_budget;
    c.threads = 0;
    CHECK_THROWS_AS(validate(c), config_error);
    c.threads = 1;
    c.B = 12;
    CHECK_THROWS_AS(validate(c), config_error);
    c.B = 16;
    c.classes.clear();
    CHECK_THROWS_AS(validate(c), config_error);
}

TEST_CASE("runs are reproducible and resumable")
{
    auto dir = fresh("classtab_run_a");
    run_config c;
    c.bound = 50000;
    c.out = dir;
    auto first = run_tabulate(c);
    CHECK(first.reused.empty());
    CHECK(first.records.size() == fundamental_sieve(50000).count());
    for (auto const & r : first.records) {
        REQUIRE(r.resolved);
        REQUIRE(r.group.order() == r.h);
    }

    auto again = run_tabulate(c);
    CHECK(again.reused == std::vector<std::string>{"tabulate", "resolve"});
    CHECK(again.sha256 == first.sha256);
    CHECK(again.records == first.records);
    CHECK(load_run(dir) == first.records);

    /* a recorded stage whose file vanished is an error, not a silent rerun */
    fs::remove(dir / "table.bin");
    CHECK_THROWS_AS(run_tabulate(c), staging_error);

    /* a corrupted stage file is refused */
    auto dir2 = fresh("classtab_run_b");
    c.out = dir2;
    run_tabulate(c);
    {
        std::fstream io(dir2 / "classnum.bin", std::ios::in | std::ios::out | std::ios::binary);
        io.seekp(100);
        io.put('\x7f');
    }
    fs::remove(dir2 / "table.bin");
    CHECK_THROWS_AS(run_tabulate(c), staging_error);

    /* different worker counts, same bytes */
    auto dir3 = fresh("classtab_run_c");
    c.out = dir3;
    c.threads = 3;
    c.format = table_format::bin;
    auto threaded = run_tabulate(c);
    CHECK(threaded.sha256 == first.sha256);

    /* a changed configuration starts over */
    c.bound = 40000;
    auto smaller = run_tabulate(c);
    CHECK(smaller.reused.empty());
    CHECK(smaller.records.size() == fundamental_sieve(40000).count());

    for (auto const & d : {dir, dir2, dir3}) {
        fs::remove_all(d);
    }
}

TEST_CASE("staging directory from the environment")
{
    auto dir = fresh("classtab_run_env");
    auto stage = fresh("classtab_env_stage");
    setenv(staging_env, stage.c_str(), 1);
    run_config c;
    /* large enough for the 5 mod 8 product to exceed a 1 MiB budget */
    c.bound = 400000;
    c.classes = {congruence_class::d5mod8};
    c.out = dir;
    c.memory_budget = min_memory_budget;
    c.format = table_format::csv;
    auto res = run_tabulate(c);
    unsetenv(staging_env);
    CHECK(fs::exists(stage / "5mod8" / "run.json"));
    CHECK(res.records.size() > 30000);
    CHECK(res.table.extension() == ".csv");
    CHECK(read_table(res.table, table_format::csv) == res.records);
    fs::remove_all(dir);
    fs::remove_all(stage);
}

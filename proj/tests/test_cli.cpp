#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct result
{
    int code = -1;
    std::string out;
};

result run(std::string const & args)
{
    std::string cmd = std::string(CLASSTAB_BIN) + " " + args + " 2>/dev/null";
    result r;
    FILE * p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        r.out.append(buf.data(), n);
    }
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path fresh(char const * name)
{
    auto d = fs::temp_directory_path() / name;
    fs::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("oracle subcommand")
{
    CHECK(run("oracle --delta 23").out == "h=3 [3]\n");
    CHECK(run("oracle --delta -23").out == "h=3 [3]\n");
    CHECK(run("oracle --delta 3299").out == "h=27 [3x9]\n");
    CHECK(run("oracle --delta 7392").out == "h=16 [2x2x2x2]\n");
    CHECK(run("oracle --delta 3").out == "h=1 [1]\n");
    CHECK(run("oracle --delta 22").code == 2);
}

TEST_CASE("tabulate, verify and rerun")
{
    auto dir = fresh("classtab_cli_run");
    auto first = run("tabulate --bound 10^5 --out " + dir.string());
    REQUIRE(first.code == 0);
    CHECK(first.out.find("30392 records") != std::string::npos);
    auto second = run("--threads 2 tabulate --bound 100000 --out " + dir.string());
    CHECK(second.code == 0);
    CHECK(second.out.find("reused: tabulate resolve") != std::string::npos);
    CHECK(first.out.substr(0, first.out.find("\n", first.out.find("sha256")))
          == second.out.substr(0, second.out.find("\n", second.out.find("sha256"))));

    auto v = run("verify --table " + dir.string());
    CHECK(v.code == 0);
    auto j = nlohmann::json::parse(v.out);
    CHECK(j["pass"] == true);
    CHECK(j["X"] == 12499);

    auto bad = run("verify --table " + dir.string() + " --perturb 23");
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.out)["pass"] == false);

    auto idoneal = run("stats --table " + dir.string() + " --report idoneal");
    CHECK(idoneal.code == 0);
    CHECK(idoneal.out.find("\n5460,1,2x2x2x2\n") != std::string::npos);
    CHECK(idoneal.out.find("\n7392,0,2x2x2x2\n") != std::string::npos);

    auto lw = run("stats --table " + dir.string() + " --report littlewood --out " + (dir / "lw.csv").string());
    CHECK(lw.code == 0);
    CHECK(fs::exists(dir / "lw.csv"));
    CHECK(run("stats --table " + dir.string() + " --report exotic").out.find("sylow,3:1.1,3896,") != std::string::npos);
    CHECK(run("stats --table " + dir.string() + " --report cohen-lenstra").out.find("\n100000,30392,") != std::string::npos);

    /* damaged output is an I/O error on resume */
    {
        std::FILE * f = std::fopen((dir / "table.bin").c_str(), "ab");
        std::fputc(0, f);
        std::fclose(f);
    }
    CHECK(run("tabulate --bound 100000 --out " + dir.string()).code == 3);
    fs::remove_all(dir);
}

TEST_CASE("in-memory stats from a bound")
{
    auto r = run("stats --report idoneal --bound 10^4");
    CHECK(r.code == 0);
    CHECK(r.out.find("\n5460,1,") != std::string::npos);
    CHECK(run("verify --bound 10^4").code == 0);
}

TEST_CASE("configuration errors")
{
    auto dir = fresh("classtab_cli_bad");
    CHECK(run("tabulate --bound 7 --out " + dir.string()).code == 2);
    CHECK(run("tabulate --bound banana --out " + dir.string()).code == 2);
    CHECK(run("tabulate --bound 1000 --out " + dir.string() + " --classes 3mod4").code == 2);
    CHECK(run("tabulate --bound 1000 --out " + dir.string() + " --memory-budget 10").code == 2);
    CHECK(run("tabulate --bound 1000").code == 2);
    CHECK(run("--threads 0 tabulate --bound 1000 --out " + dir.string()).code == 2);
    CHECK(run("stats --report nope --bound 1000").code == 2);
    CHECK(run("verify").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("verify --table /nonexistent/classtab").code == 3);
    fs::remove_all(dir);
}

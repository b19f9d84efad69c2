#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "classtab/group_structure.hpp"
#include "classtab/pipeline.hpp"
#include "classtab/qform.hpp"
#include "classtab/stats.hpp"
#include "classtab/trace_verify.hpp"

using namespace classtab;
namespace fs = std::filesystem;

namespace {

enum exit_code { ok = 0, verify_failed = 1, bad_config = 2, io_failure = 3 };

/* "1000000", "10^6", "2^20" or "1e6" */
u64 parse_bound(std::string const & text)
{
    auto caret = text.find('^');
    try {
        if (caret != std::string::npos) {
            u64 base = std::stoull(text.substr(0, caret));
            unsigned e = static_cast<unsigned>(std::stoul(text.substr(caret + 1)));
            u64 v = 1;
            for (unsigned i = 0; i < e; ++i) {
                if (v > (~u64{0}) / base) {
                    throw config_error("bound overflows 64 bits: " + text);
                }
                v *= base;
            }
            return v;
        }
        if (text.find_first_of("eE") != std::string::npos) {
            double d = std::stod(text);
            if (d < 0 || d > 1.8e19 || d != std::floor(d)) {
                throw config_error("bad bound: " + text);
            }
            return static_cast<u64>(d);
        }
        std::size_t used = 0;
        u64 v = std::stoull(text, &used);
        if (used != text.size()) {
            throw config_error("bad bound: " + text);
        }
        return v;
    } catch (std::logic_error const &) {
        throw config_error("bad bound: " + text);
    }
}

std::vector<congruence_class> parse_classes(std::vector<std::string> const & names)
{
    std::vector<congruence_class> out;
    for (auto const & n : names) {
        auto c = parse_congruence_class(n);
        if (!c) {
            throw config_error("unknown congruence class " + n + " (8mod16, 12mod16, 5mod8, 1mod8)");
        }
        out.push_back(*c);
    }
    return out;
}

/* records from a finished run directory, or computed in memory up to bound */
std::vector<class_record> obtain_records(std::string const & table_dir, std::string const & bound_text,
                                         unsigned threads, u64 seed, u64 & bound)
{
    if (!table_dir.empty()) {
        auto recs = load_run(table_dir);
        auto manifest = nlohmann::json::parse(read_file(fs::path(table_dir) / "manifest.json"));
        bound = manifest["config"]["bound"].get<u64>();
        if (!bound_text.empty()) {
            u64 b = parse_bound(bound_text);
            if (b > bound) {
                throw config_error("table only covers |Δ| < " + std::to_string(bound));
            }
            bound = b;
        }
        return recs;
    }
    if (bound_text.empty()) {
        throw config_error("need --table or --bound");
    }
    bound = parse_bound(bound_text);
    run_config c;
    c.bound = bound;
    c.threads = threads;
    c.out = ".";
    validate(c);
    tabulate_options opt;
    opt.threads = threads;
    auto recs = tabulate(bound, c.classes, opt);
    fundamental_sieve sieve(bound);
    resolve_all(recs, threads, seed, &sieve);
    return recs;
}

std::string fmt(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string chain_text(abelian_group const & g)
{
    return g.divisors().empty() ? "1" : g.to_string();
}

std::string littlewood_csv(std::vector<class_record> const & recs, u64 bound)
{
    auto ex = littlewood_extremes(recs, bound);
    std::string out = "kind,abs_disc,L,uli,lli\n";
    auto rows = [&](char const * kind, std::vector<littlewood_row> const & v) {
        for (auto const & r : v) {
            out += std::string(kind) + "," + std::to_string(r.abs_disc) + "," + fmt(r.L_value) + ","
                   + fmt(r.uli) + "," + fmt(r.lli) + "\n";
        }
    };
    rows("uli_max", ex.uli_max);
    rows("lli_min", ex.lli_min);
    rows("L_max", ex.L_max);
    rows("L_min", ex.L_min);
    return out;
}

std::string cohen_lenstra_csv(std::vector<class_record> const & recs, u64 bound)
{
    std::string out = "x,total,noncyclic,c";
    for (u64 l : cl_primes) {
        out += ",div" + std::to_string(l) + ",p" + std::to_string(l);
    }
    for (u64 l : cl_primes) {
        for (unsigned r : cl_ranks) {
            out += ",rank" + std::to_string(l) + "_" + std::to_string(r) + ",p" + std::to_string(l) + "_"
                   + std::to_string(r);
        }
    }
    out += "\n";
    for (auto const & cp : cohen_lenstra(recs, default_checkpoints(bound))) {
        auto const & c = cp.counts;
        out += std::to_string(c.x) + "," + std::to_string(c.total) + "," + std::to_string(c.noncyclic) + ","
               + fmt(cp.c);
        for (std::size_t i = 0; i < cl_primes.size(); ++i) {
            out += "," + std::to_string(c.divisible[i]) + "," + fmt(cp.p_l[i]);
        }
        for (std::size_t i = 0; i < cl_primes.size(); ++i) {
            for (std::size_t j = 0; j < cl_ranks.size(); ++j) {
                out += "," + std::to_string(c.rank[i][j]) + "," + fmt(cp.p_lr[i][j]);
            }
        }
        out += "\n";
    }
    return out;
}

std::string exotic_csv(std::vector<class_record> const & recs, u64 bound)
{
    std::vector<class_record> below;
    for (auto const & r : recs) {
        if (r.abs_disc < bound) {
            below.push_back(r);
        }
    }
    auto rep = exotic_scan(below);
    std::string out = "kind,key,first_even,count_even,first_odd,count_odd\n";
    auto row = [&](std::string const & kind, std::string const & key, first_occurrence const & f) {
        out += kind + "," + key + "," + std::to_string(f.first_even) + "," + std::to_string(f.count_even) + ","
               + std::to_string(f.first_odd) + "," + std::to_string(f.count_odd) + "\n";
    };
    for (auto const & [sig, f] : rep.sylow) {
        std::string key = std::to_string(sig.first) + ":";
        for (std::size_t i = 0; i < sig.second.size(); ++i) {
            key += (i ? "." : "") + std::to_string(sig.second[i]);
        }
        row("sylow", key, f);
    }
    auto joined = [](std::vector<u64> const & ps) {
        std::string k;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            k += (i ? "x" : "") + std::to_string(ps[i]);
        }
        return k;
    };
    for (auto const & [ps, f] : rep.doubly) {
        row("doubly", joined(ps), f);
    }
    for (auto const & [ps, f] : rep.trebly) {
        row("trebly", joined(ps), f);
    }
    return out;
}

std::string idoneal_csv(std::vector<class_record> const & recs, u64 bound, u64 nonfundamental_bound)
{
    std::string out = "abs_disc,fundamental,group\n";
    std::map<u64, class_record const *> by_disc;
    for (auto const & r : recs) {
        by_disc[r.abs_disc] = &r;
    }
    std::map<u64, std::string> rows;
    for (u64 D : idoneal_scan(recs, bound)) {
        rows[D] = std::to_string(D) + ",1," + chain_text(by_disc[D]->group) + "\n";
    }
    if (nonfundamental_bound > 0) {
        fundamental_sieve sieve(nonfundamental_bound + 1);
        for (u64 D : idoneal_nonfundamental(nonfundamental_bound, sieve)) {
            rows[D] = std::to_string(D) + ",0," + chain_text(group_table(D)) + "\n";
        }
    }
    for (auto const & [D, line] : rows) {
        out += line;
    }
    return out;
}

void emit(std::string const & text, std::string const & path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Class numbers and class groups of imaginary quadratic fields"};
    app.require_subcommand(1);
    unsigned threads = 1;
    u64 seed = 0;
    app.add_option("--threads,-j", threads, "worker count")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed of the group-structure sampler");

    auto * tab = app.add_subcommand("tabulate", "class numbers and groups for fundamental |Δ| < N");
    std::string bound_text, out_dir, staging_dir, format_text = "bin";
    std::vector<std::string> class_names;
    std::size_t memory_budget = std::size_t{1} << 30, B = 16;
    tab->add_option("--bound,-N", bound_text, "N, e.g. 1000000 or 10^6")->required();
    tab->add_option("--out,-o", out_dir, "run directory")->required();
    tab->add_option("--classes", class_names, "subset of 8mod16 12mod16 5mod8 1mod8");
    tab->add_option("--staging", staging_dir, std::string("disk staging directory (default $") + staging_env + ")");
    tab->add_option("--memory-budget", memory_budget, "bytes before spilling to disk")
        ->transform(CLI::AsSizeValue(false));
    tab->add_option("--format", format_text, "bin or csv")->check(CLI::IsMember({"bin", "csv"}));
    tab->add_option("--block", B, "bundling block size B");

    auto * ver = app.add_subcommand("verify", "trace-formula check of a table");
    std::string table_dir, X_text;
    std::vector<u64> perturb;
    ver->add_option("--bound,-N", bound_text, "verify with X = (N - 1) / 8");
    ver->add_option("--table", table_dir, "finished run directory");
    ver->add_option("--X", X_text, "explicit X");
    ver->add_option("--perturb", perturb, "lower 12H(n) by one (fault injection)");

    auto * st = app.add_subcommand("stats", "statistics over a table");
    std::string report, stats_out;
    u64 nonfundamental_bound = 10000;
    st->add_option("--table", table_dir, "finished run directory");
    st->add_option("--bound,-N", bound_text, "restrict to |Δ| <= N, or tabulate to N");
    st->add_option("--report", report, "littlewood, cohen-lenstra, exotic or idoneal")
        ->required()
        ->check(CLI::IsMember({"littlewood", "cohen-lenstra", "exotic", "idoneal"}));
    st->add_option("--out", stats_out, "CSV path (default stdout)");
    st->add_option("--nonfundamental-bound", nonfundamental_bound, "idoneal: oracle scan of non-fundamental |Δ|");

    auto * orc = app.add_subcommand("oracle", "class group of one discriminant by form enumeration");
    i64 delta = 0;
    orc->add_option("--delta,-d", delta, "Δ or |Δ|")->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : bad_config;
    }

    try {
        if (*tab) {
            run_config c;
            c.bound = parse_bound(bound_text);
            if (!class_names.empty()) {
                c.classes = parse_classes(class_names);
            }
            c.out = out_dir;
            c.staging = staging_dir;
            c.memory_budget = memory_budget;
            c.threads = threads;
            c.seed = seed;
            c.format = *parse_table_format(format_text);
            c.B = B;
            auto res = run_tabulate(c);
            std::cout << res.records.size() << " records -> " << res.table.string() << "\nsha256 " << res.sha256
                      << "\n";
            if (!res.reused.empty()) {
                std::cout << "reused:";
                for (auto const & s : res.reused) {
                    std::cout << ' ' << s;
                }
                std::cout << "\n";
            }
        } else if (*ver) {
            u64 bound = 0;
            auto recs = obtain_records(table_dir, bound_text, threads, seed, bound);
            u64 X = X_text.empty() ? (bound - 1) / 8 : parse_bound(X_text);
            if (X < 1 || 8 * X + 1 > bound) {
                throw config_error("X must satisfy 1 <= X and 8X < N");
            }
            auto H = build_hurwitz_table(recs, 8 * X + 1);
            for (u64 n : perturb) {
                if (n >= H.size() || H[n] == 0) {
                    throw config_error("cannot perturb 12H(" + std::to_string(n) + ")");
                }
                --H[n];
            }
            auto rep = verify_aggregate(X, H, threads);
            std::cout << rep.to_json() << "\n";
            return rep.pass ? ok : verify_failed;
        } else if (*st) {
            u64 bound = 0;
            auto recs = obtain_records(table_dir, bound_text, threads, seed, bound);
            std::string text;
            if (report == "littlewood") {
                text = littlewood_csv(recs, bound);
            } else if (report == "cohen-lenstra") {
                text = cohen_lenstra_csv(recs, bound);
                std::cerr << "C_inf " << fmt(static_cast<double>(c_infinity()), 10) << "  Pr(cyclic) "
                          << fmt(static_cast<double>(pr_cyclic()), 8) << "\n";
            } else if (report == "exotic") {
                text = exotic_csv(recs, bound);
            } else {
                text = idoneal_csv(recs, bound, std::min(nonfundamental_bound, bound));
            }
            emit(text, stats_out);
        } else if (*orc) {
            u64 D = static_cast<u64>(delta < 0 ? -delta : delta);
            if (D < 3 || (D % 4 != 0 && D % 4 != 3)) {
                throw config_error("-|Δ| must be 0 or 1 mod 4 with |Δ| >= 3");
            }
            class_record r;
            r.abs_disc = D;
            r.h = count_classes(D);
            r.group = r.h <= 100000 ? group_table(D) : resolve(r, seed).group;
            std::cout << "h=" << r.h << " [" << chain_text(r.group) << "]\n";
        }
    } catch (config_error const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_config;
    } catch (std::invalid_argument const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_config;
    } catch (std::logic_error const & e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return verify_failed;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return io_failure;
    }
    return ok;
}

#include "classtab/pipeline.hpp"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "classtab/digest.hpp"
#include "classtab/group_structure.hpp"

namespace classtab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json identity(run_config const & c)
{
    std::vector<std::string> classes;
    for (auto cls : c.classes) {
        classes.push_back(to_string(cls));
    }
    return {{"bound", c.bound}, {"classes", classes}, {"B", c.B}, {"seed", c.seed}, {"format", to_string(c.format)}};
}

json load_manifest(fs::path const & path)
{
    if (!fs::exists(path)) {
        return json::object();
    }
    try {
        return json::parse(read_file(path));
    } catch (json::exception const &) {
        throw staging_error("unreadable manifest " + path.string());
    }
}

void save_manifest(fs::path const & path, json const & m)
{
    write_file(path, m.dump(2) + "\n");
}

/* the stage's records when a previous run finished it, else nothing */
std::optional<std::vector<class_record>> reload(json const & manifest, std::string const & stage,
                                               fs::path const & file, table_format f)
{
    if (!manifest.contains("stages") || !manifest["stages"].contains(stage)) {
        return std::nullopt;
    }
    std::string expect = manifest["stages"][stage]["sha256"];
    if (!fs::exists(file)) {
        throw staging_error("stage " + stage + " is recorded but " + file.string() + " is missing");
    }
    std::string bytes = read_file(file);
    if (sha256_hex({reinterpret_cast<std::uint8_t const *>(bytes.data()), bytes.size()}) != expect) {
        throw staging_error("checksum mismatch on resume: " + file.string());
    }
    return decode_table(bytes, f);
}

} // namespace

void validate(run_config const & c)
{
    if (c.bound < 8) {
        throw config_error("bound must be at least 8");
    }
    if (c.memory_budget < min_memory_budget) {
        throw config_error("memory budget must be at least 1 MiB");
    }
    if (c.threads < 1) {
        throw config_error("worker count must be at least 1");
    }
    if (c.classes.empty()) {
        throw config_error("no congruence class selected");
    }
    if (c.B < 2 || (c.B & (c.B - 1)) != 0) {
        throw config_error("B must be a power of two");
    }
    if (c.out.empty()) {
        throw config_error("output directory required");
    }
}

run_result run_tabulate(run_config const & config)
{
    validate(config);
    fs::create_directories(config.out);
    std::string ext = file_extension(config.format);
    fs::path manifest_path = config.out / "manifest.json";
    fs::path classnum_path = config.out / ("classnum" + ext);
    run_result res;
    res.table = config.out / ("table" + ext);

    json manifest = load_manifest(manifest_path);
    if (!manifest.contains("config") || manifest["config"] != identity(config)) {
        manifest = {{"config", identity(config)}, {"stages", json::object()}};
    }

    if (auto done = reload(manifest, "resolve", res.table, config.format)) {
        res.records = std::move(*done);
        res.sha256 = manifest["stages"]["resolve"]["sha256"];
        res.reused = {"tabulate", "resolve"};
        return res;
    }

    std::vector<class_record> records;
    if (auto done = reload(manifest, "tabulate", classnum_path, config.format)) {
        records = std::move(*done);
        res.reused.push_back("tabulate");
    } else {
        tabulate_options opt;
        opt.B = config.B;
        opt.threads = config.threads;
        opt.staging.memory_budget = config.memory_budget;
        opt.staging.dir = config.staging;
        if (opt.staging.dir.empty()) {
            char const * env = std::getenv(staging_env);
            opt.staging.dir = env && *env ? fs::path(env) : config.out / "staging";
        }
        records = tabulate(config.bound, config.classes, opt);
        manifest["stages"]["tabulate"] = {{"file", classnum_path.filename().string()},
                                          {"sha256", write_table(classnum_path, records, config.format)},
                                          {"records", records.size()}};
        save_manifest(manifest_path, manifest);
    }

    fundamental_sieve sieve(config.bound);
    resolve_all(records, config.threads, config.seed, &sieve);
    res.sha256 = write_table(res.table, records, config.format);
    manifest["stages"]["resolve"] = {{"file", res.table.filename().string()},
                                     {"sha256", res.sha256},
                                     {"records", records.size()}};
    save_manifest(manifest_path, manifest);
    res.records = std::move(records);
    return res;
}

std::vector<class_record> load_run(fs::path const & dir)
{
    json manifest = load_manifest(dir / "manifest.json");
    if (!manifest.contains("config")) {
        throw staging_error("no run manifest in " + dir.string());
    }
    auto f = parse_table_format(manifest["config"]["format"].get<std::string>());
    if (!f) {
        throw staging_error("unknown table format in manifest");
    }
    if (auto done = reload(manifest, "resolve", dir / ("table" + file_extension(*f)), *f)) {
        return std::move(*done);
    }
    throw staging_error("run in " + dir.string() + " has not finished resolving");
}

} // namespace classtab

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "classtab/classnum.hpp"
#include "classtab/table_io.hpp"

namespace classtab {

struct config_error : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

inline constexpr char const * staging_env = "CLASSTAB_STAGING";
inline constexpr std::size_t min_memory_budget = std::size_t{1} << 20;

struct run_config
{
    u64 bound = 0;
    std::vector<congruence_class> classes{congruence_class::d8mod16, congruence_class::d12mod16,
                                          congruence_class::d5mod8, congruence_class::d1mod8};
    std::filesystem::path out;
    /* empty: $CLASSTAB_STAGING, else <out>/staging */
    std::filesystem::path staging;
    std::size_t memory_budget = std::size_t{1} << 30;
    unsigned threads = 1;
    u64 seed = 0;
    table_format format = table_format::bin;
    std::size_t B = 16;
};

/* throws config_error: N >= 8, budget >= 1 MiB, threads >= 1, classes non-empty */
void validate(run_config const & config);

struct run_result
{
    std::vector<class_record> records;
    std::filesystem::path table;
    std::string sha256;
    /* stages taken from a previous run with the same configuration */
    std::vector<std::string> reused;
};

/*
 * tabulate -> resolve, writing <out>/classnum.<ext>, <out>/table.<ext> and
 * <out>/manifest.json. A manifest with the same configuration lets finished
 * stages be reloaded; a finished stage whose file no longer matches its
 * recorded SHA-256 throws staging_error. Worker count is not part of the
 * configuration: it never changes the output.
 */
run_result run_tabulate(run_config const & config);

/* table.<ext> of a finished run directory, format taken from its manifest */
std::vector<class_record> load_run(std::filesystem::path const & dir);

} // namespace classtab

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "classtab/classnum.hpp"

namespace classtab {

enum class table_format { bin, csv };

std::string to_string(table_format f);
std::optional<table_format> parse_table_format(std::string const & text);
std::string file_extension(table_format f);

/*
 * bin: per record, little-endian u64 |Δ|, u64 h, u8 k, then k u64 divisors
 *      (k = 255 marks an unresolved group).
 * csv: header "abs_disc,h,group", group as "3x6", "1" when trivial, "-" when
 *      unresolved.
 */
std::string encode_table(std::vector<class_record> const & records, table_format f);
std::vector<class_record> decode_table(std::string const & bytes, table_format f);

/* writes through a temporary file and rename; returns the SHA-256 of the contents */
std::string write_table(std::filesystem::path const & path, std::vector<class_record> const & records,
                        table_format f);
std::vector<class_record> read_table(std::filesystem::path const & path, table_format f);

std::string read_file(std::filesystem::path const & path);
/* atomic replace of `path` */
void write_file(std::filesystem::path const & path, std::string const & contents);

} // namespace classtab

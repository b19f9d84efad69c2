#include "classtab/table_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "classtab/digest.hpp"

namespace classtab {

namespace {

constexpr std::uint8_t unresolved_marker = 255;

void put_u64(std::string & out, u64 v)
{
    for (int i = 0; i < 8; ++i) {
        out += static_cast<char>((v >> (8 * i)) & 0xff);
    }
}

u64 get_u64(std::string const & in, std::size_t & pos)
{
    if (pos + 8 > in.size()) {
        throw std::runtime_error("truncated table file");
    }
    u64 v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<u64>(static_cast<std::uint8_t>(in[pos + i])) << (8 * i);
    }
    pos += 8;
    return v;
}

provenance source_of(u64 abs_disc)
{
    return abs_disc % 8 == 7 ? provenance::enumeration : provenance::series;
}

} // namespace

std::string to_string(table_format f)
{
    return f == table_format::bin ? "bin" : "csv";
}

std::optional<table_format> parse_table_format(std::string const & text)
{
    if (text == "bin") {
        return table_format::bin;
    }
    if (text == "csv") {
        return table_format::csv;
    }
    return std::nullopt;
}

std::string file_extension(table_format f)
{
    return f == table_format::bin ? ".bin" : ".csv";
}

std::string encode_table(std::vector<class_record> const & records, table_format f)
{
    std::string out;
    if (f == table_format::bin) {
        out.reserve(records.size() * 25);
        for (auto const & r : records) {
            put_u64(out, r.abs_disc);
            put_u64(out, r.h);
            if (!r.resolved) {
                out += static_cast<char>(unresolved_marker);
                continue;
            }
            auto const & d = r.group.divisors();
            if (d.size() >= unresolved_marker) {
                throw std::length_error("divisor chain too long for the binary format");
            }
            out += static_cast<char>(d.size());
            for (u64 x : d) {
                put_u64(out, x);
            }
        }
        return out;
    }
    out = "abs_disc,h,group\n";
    for (auto const & r : records) {
        out += std::to_string(r.abs_disc);
        out += ',';
        out += std::to_string(r.h);
        out += ',';
        if (!r.resolved) {
            out += '-';
        } else if (r.group.divisors().empty()) {
            out += '1';
        } else {
            out += r.group.to_string();
        }
        out += '\n';
    }
    return out;
}

std::vector<class_record> decode_table(std::string const & bytes, table_format f)
{
    std::vector<class_record> out;
    if (f == table_format::bin) {
        std::size_t pos = 0;
        while (pos < bytes.size()) {
            class_record r;
            r.abs_disc = get_u64(bytes, pos);
            r.h = get_u64(bytes, pos);
            r.source = source_of(r.abs_disc);
            if (pos >= bytes.size()) {
                throw std::runtime_error("truncated table file");
            }
            auto k = static_cast<std::uint8_t>(bytes[pos++]);
            if (k != unresolved_marker) {
                std::vector<u64> d(k);
                for (auto & x : d) {
                    x = get_u64(bytes, pos);
                }
                r.group = abelian_group(std::move(d));
                r.resolved = true;
            }
            out.push_back(std::move(r));
        }
        return out;
    }
    std::istringstream in(bytes);
    std::string line;
    if (!std::getline(in, line) || line != "abs_disc,h,group") {
        throw std::runtime_error("missing CSV table header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("malformed CSV table row: " + line);
        }
        class_record r;
        r.abs_disc = std::stoull(line.substr(0, c1));
        r.h = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
        r.source = source_of(r.abs_disc);
        std::string g = line.substr(c2 + 1);
        if (g != "-") {
            r.group = g == "1" ? abelian_group() : abelian_group::parse(g);
            r.resolved = true;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string read_file(std::filesystem::path const & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(std::filesystem::path const & path, std::string const & contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string write_table(std::filesystem::path const & path, std::vector<class_record> const & records,
                        table_format f)
{
    std::string bytes = encode_table(records, f);
    write_file(path, bytes);
    return sha256_hex({reinterpret_cast<std::uint8_t const *>(bytes.data()), bytes.size()});
}

std::vector<class_record> read_table(std::filesystem::path const & path, table_format f)
{
    return decode_table(read_file(path), f);
}

} // namespace classtab

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "classtab/common.hpp"

namespace classtab {

/*
 * Fixed-width unsigned coefficient array of a truncated power series.
 *
 * Coefficients are stored little-endian, `width` bytes each (1, 2, 4 or 8).
 * Storage is either an in-memory buffer or an ordered list of chunk files
 * named `<kind>.<width>b.<i>.chunk`, chunk i holding coefficients
 * [i*chunk_size, (i+1)*chunk_size). Writing a value that does not fit in
 * `width` bytes throws std::overflow_error.
 */
class coeff_table
{
  public:
    coeff_table() = default;
    coeff_table(std::size_t length, unsigned width);

    static coeff_table from_values(std::span<const u64> values, unsigned width);

    std::size_t length() const { return length_; }
    unsigned width() const { return width_; }
    u64 max_value() const { return width_ == 8 ? ~u64{0} : (u64{1} << (8 * width_)) - 1; }

    u64 get(std::size_t i) const;
    void set(std::size_t i, u64 v);
    /* adds v to coefficient i, failing on overflow of the width */
    void add(std::size_t i, u64 v);

    std::vector<u64> values() const;
    std::vector<u64> values(std::size_t first, std::size_t count) const;

    bool in_memory() const { return chunk_size_ == 0; }
    std::size_t chunk_size() const { return chunk_size_; }
    std::size_t chunk_count() const;
    std::vector<u64> read_chunk(std::size_t i) const;
    std::filesystem::path chunk_path(std::size_t i) const;

    /* Moves the coefficients into chunk files under dir; returns their paths. */
    std::vector<std::filesystem::path> spill(std::filesystem::path const & dir,
                                             std::string const & kind,
                                             std::size_t chunk_size);
    /* Opens an existing chunk-file table. Missing or truncated chunks throw. */
    static coeff_table open_chunks(std::filesystem::path const & dir,
                                   std::string const & kind, unsigned width,
                                   std::size_t length, std::size_t chunk_size);
    /* Brings a chunk-file table back into memory. */
    void load();

    std::span<const std::uint8_t> bytes() const { return data_; }

    friend bool operator==(coeff_table const & x, coeff_table const & y);

  private:
    static void check_width(unsigned width);

    std::size_t length_ = 0;
    unsigned width_ = 1;
    std::vector<std::uint8_t> data_;

    std::filesystem::path dir_;
    std::string kind_;
    std::size_t chunk_size_ = 0;
};

/* Smallest width in bytes (1, 2, 4, 8) that holds v. */
unsigned width_for(u64 v);

} // namespace classtab

#include "classtab/coeff_table.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace classtab {

static_assert(std::endian::native == std::endian::little,
              "chunk files are raw little-endian images of the buffer");

namespace {

u64 load_le(std::uint8_t const * p, unsigned width)
{
    u64 v = 0;
    std::memcpy(&v, p, width);
    return v;
}

void store_le(std::uint8_t * p, unsigned width, u64 v)
{
    std::memcpy(p, &v, width);
}

} // namespace

void coeff_table::check_width(unsigned width)
{
    if (width != 1 && width != 2 && width != 4 && width != 8) {
        throw std::invalid_argument("coefficient width must be 1, 2, 4 or 8 bytes");
    }
}

unsigned width_for(u64 v)
{
    if (v <= 0xff) {
        return 1;
    }
    if (v <= 0xffff) {
        return 2;
    }
    if (v <= 0xffffffffULL) {
        return 4;
    }
    return 8;
}

coeff_table::coeff_table(std::size_t length, unsigned width)
    : length_(length), width_(width)
{
    check_width(width);
    data_.assign(length * width, 0);
}

coeff_table coeff_table::from_values(std::span<const u64> values, unsigned width)
{
    coeff_table t(values.size(), width);
    for (std::size_t i = 0; i < values.size(); ++i) {
        t.set(i, values[i]);
    }
    return t;
}

u64 coeff_table::get(std::size_t i) const
{
    if (i >= length_) {
        throw std::out_of_range("coefficient index out of range");
    }
    if (in_memory()) {
        return load_le(data_.data() + i * width_, width_);
    }
    std::ifstream in(chunk_path(i / chunk_size_), std::ios::binary);
    in.seekg(static_cast<std::streamoff>((i % chunk_size_) * width_));
    std::uint8_t buf[8] = {};
    in.read(reinterpret_cast<char *>(buf), width_);
    if (!in) {
        throw std::runtime_error("short read from chunk file");
    }
    return load_le(buf, width_);
}

void coeff_table::set(std::size_t i, u64 v)
{
    if (!in_memory()) {
        throw std::logic_error("chunk-file tables are read-only; load() first");
    }
    if (i >= length_) {
        throw std::out_of_range("coefficient index out of range");
    }
    if (v > max_value()) {
        throw std::overflow_error("coefficient " + std::to_string(v) + " does not fit in "
                                  + std::to_string(width_) + " bytes");
    }
    store_le(data_.data() + i * width_, width_, v);
}

void coeff_table::add(std::size_t i, u64 v)
{
    u64 cur = get(i);
    u64 sum = cur + v;
    if (sum < cur || sum > max_value()) {
        throw std::overflow_error("coefficient overflow at index " + std::to_string(i));
    }
    set(i, sum);
}

std::vector<u64> coeff_table::values() const
{
    return values(0, length_);
}

std::vector<u64> coeff_table::values(std::size_t first, std::size_t count) const
{
    if (first > length_ || count > length_ - first) {
        throw std::out_of_range("coefficient range out of range");
    }
    std::vector<u64> out(count);
    if (in_memory()) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = load_le(data_.data() + (first + i) * width_, width_);
        }
        return out;
    }
    std::size_t done = 0;
    while (done < count) {
        std::size_t idx = first + done;
        std::size_t c = idx / chunk_size_;
        auto chunk = read_chunk(c);
        std::size_t off = idx - c * chunk_size_;
        std::size_t take = std::min(count - done, chunk.size() - off);
        std::copy_n(chunk.begin() + static_cast<std::ptrdiff_t>(off), take,
                    out.begin() + static_cast<std::ptrdiff_t>(done));
        done += take;
    }
    return out;
}

std::size_t coeff_table::chunk_count() const
{
    if (in_memory()) {
        return length_ == 0 ? 0 : 1;
    }
    return (length_ + chunk_size_ - 1) / chunk_size_;
}

std::filesystem::path coeff_table::chunk_path(std::size_t i) const
{
    return dir_ / (kind_ + "." + std::to_string(width_) + "b." + std::to_string(i) + ".chunk");
}

std::vector<u64> coeff_table::read_chunk(std::size_t i) const
{
    if (in_memory()) {
        if (i != 0) {
            throw std::out_of_range("in-memory table has a single chunk");
        }
        return values();
    }
    std::size_t first = i * chunk_size_;
    if (first >= length_) {
        throw std::out_of_range("chunk index out of range");
    }
    std::size_t count = std::min(chunk_size_, length_ - first);
    auto path = chunk_path(i);
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint8_t> raw(count * width_);
    in.read(reinterpret_cast<char *>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) {
        throw std::runtime_error("truncated chunk file " + path.string());
    }
    std::vector<u64> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = load_le(raw.data() + k * width_, width_);
    }
    return out;
}

std::vector<std::filesystem::path> coeff_table::spill(std::filesystem::path const & dir,
                                                      std::string const & kind,
                                                      std::size_t chunk_size)
{
    if (!in_memory()) {
        throw std::logic_error("table already lives in chunk files");
    }
    if (chunk_size == 0) {
        throw std::invalid_argument("chunk size must be positive");
    }
    std::filesystem::create_directories(dir);
    dir_ = dir;
    kind_ = kind;
    chunk_size_ = chunk_size;
    std::vector<std::filesystem::path> paths;
    for (std::size_t c = 0; c < chunk_count(); ++c) {
        std::size_t first = c * chunk_size;
        std::size_t count = std::min(chunk_size, length_ - first);
        auto path = chunk_path(c);
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out.write(reinterpret_cast<char const *>(data_.data() + first * width_),
                      static_cast<std::streamsize>(count * width_));
            if (!out) {
                throw std::runtime_error("failed writing chunk file " + path.string());
            }
        }
        if (std::filesystem::file_size(path) != count * width_) {
            throw std::runtime_error("chunk file size mismatch after write: " + path.string());
        }
        paths.push_back(path);
    }
    data_.clear();
    data_.shrink_to_fit();
    return paths;
}

coeff_table coeff_table::open_chunks(std::filesystem::path const & dir, std::string const & kind,
                                     unsigned width, std::size_t length, std::size_t chunk_size)
{
    check_width(width);
    if (chunk_size == 0) {
        throw std::invalid_argument("chunk size must be positive");
    }
    coeff_table t;
    t.length_ = length;
    t.width_ = width;
    t.dir_ = dir;
    t.kind_ = kind;
    t.chunk_size_ = chunk_size;
    for (std::size_t c = 0; c < t.chunk_count(); ++c) {
        std::size_t count = std::min(chunk_size, length - c * chunk_size);
        auto path = t.chunk_path(c);
        if (!std::filesystem::exists(path) || std::filesystem::file_size(path) != count * width) {
            throw std::runtime_error("missing or truncated chunk file " + path.string());
        }
    }
    return t;
}

void coeff_table::load()
{
    if (in_memory()) {
        return;
    }
    std::vector<std::uint8_t> data(length_ * width_);
    for (std::size_t c = 0; c < chunk_count(); ++c) {
        auto vals = read_chunk(c);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            store_le(data.data() + (c * chunk_size_ + k) * width_, width_, vals[k]);
        }
    }
    data_ = std::move(data);
    chunk_size_ = 0;
    dir_.clear();
    kind_.clear();
}

bool operator==(coeff_table const & x, coeff_table const & y)
{
    if (x.length_ != y.length_) {
        return false;
    }
    if (x.in_memory() && y.in_memory() && x.width_ == y.width_) {
        return x.data_ == y.data_;
    }
    return x.values() == y.values();
}

} // namespace classtab

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>

namespace classtab {

/* Incremental SHA-256 (OpenSSL EVP). */
class sha256
{
  public:
    sha256();
    ~sha256();
    sha256(sha256 const &) = delete;
    sha256 & operator=(sha256 const &) = delete;

    void update(void const * data, std::size_t n);
    std::string hex();

  private:
    struct impl;
    std::unique_ptr<impl> impl_;
};

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_file(std::filesystem::path const & path);

} // namespace classtab

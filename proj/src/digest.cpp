#include "classtab/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <stdexcept>

namespace classtab {

struct sha256::impl
{
    EVP_MD_CTX * ctx = nullptr;
};

sha256::sha256() : impl_(std::make_unique<impl>())
{
    impl_->ctx = EVP_MD_CTX_new();
    if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 init failed");
    }
}

sha256::~sha256()
{
    EVP_MD_CTX_free(impl_->ctx);
}

void sha256::update(void const * data, std::size_t n)
{
    if (EVP_DigestUpdate(impl_->ctx, data, n) != 1) {
        throw std::runtime_error("sha256 update failed");
    }
}

std::string sha256::hex()
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    if (EVP_DigestFinal_ex(impl_->ctx, md.data(), &len) != 1) {
        throw std::runtime_error("sha256 final failed");
    }
    static char const digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += digits[md[i] >> 4];
        out += digits[md[i] & 15];
    }
    return out;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes)
{
    sha256 ctx;
    ctx.update(bytes.data(), bytes.size());
    return ctx.hex();
}

std::string sha256_file(std::filesystem::path const & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    sha256 ctx;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        ctx.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return ctx.hex();
}

} // namespace classtab

#include "extsleuth/common/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace extsleuth {

struct Sha256::Impl {
    EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256()
    : impl_(std::make_unique<Impl>())
{
    impl_->ctx = EVP_MD_CTX_new();
    if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: EVP init failed");
}

Sha256::~Sha256()
{
    if (impl_ && impl_->ctx)
        EVP_MD_CTX_free(impl_->ctx);
}

void Sha256::update(std::string_view data)
{
    EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
}

std::array<std::uint8_t, 32> Sha256::finish()
{
    std::array<std::uint8_t, 32> out {};
    unsigned int len = 0;
    EVP_DigestFinal_ex(impl_->ctx, out.data(), &len);
    return out;
}

std::string Sha256::finish_hex()
{
    auto d = finish();
    return to_hex(d.data(), d.size());
}

std::string sha256_hex(std::string_view data)
{
    Sha256 h;
    h.update(data);
    return h.finish_hex();
}

std::string to_hex(const std::uint8_t* data, std::size_t size)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(size * 2);
    for (std::size_t i = 0; i < size; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xF]);
    }
    return out;
}

} // namespace extsleuth

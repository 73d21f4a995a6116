#include "bpfourier/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace bpf {

BitString BitString::ones(std::size_t n) {
    BitString b(n);
    for (auto& w : b.words_) w = ~std::uint64_t(0);
    if (n % 64) b.words_.back() = (std::uint64_t(1) << (n % 64)) - 1;
    return b;
}

BitString BitString::from_u64(std::size_t n, std::uint64_t v) {
    if (n > 64) throw std::invalid_argument("from_u64: n > 64");
    BitString b(n);
    if (n) b.words_[0] = (n == 64) ? v : (v & ((std::uint64_t(1) << n) - 1));
    return b;
}

BitString BitString::from_string(std::string_view s) {
    BitString b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') b.set(i, true);
        else if (s[i] != '0') throw std::invalid_argument("from_string: expected '0' or '1'");
    }
    return b;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: invalid hex digit");
}

BitString BitString::from_hex(std::size_t n, std::string_view hex) {
    std::size_t bytes = (n + 7) / 8;
    if (hex.size() < 2 * bytes) throw std::invalid_argument("from_hex: hex string too short");
    BitString b(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t byte = i / 8;
        int v = hex_val(hex[2 * byte]) * 16 + hex_val(hex[2 * byte + 1]);
        if ((v >> (i % 8)) & 1) b.set(i, true);
    }
    return b;
}

std::size_t BitString::weight() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

std::uint64_t BitString::to_u64() const {
    if (n_ > 64) throw std::invalid_argument("to_u64: n > 64");
    return words_.empty() ? 0 : words_[0];
}

std::string BitString::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitString::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t bytes = (n_ + 7) / 8;
    std::string s(2 * bytes, '0');
    for (std::size_t b = 0; b < bytes; ++b) {
        int v = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            std::size_t i = 8 * b + j;
            if (i < n_ && get(i)) v |= 1 << j;
        }
        s[2 * b] = digits[v >> 4];
        s[2 * b + 1] = digits[v & 15];
    }
    return s;
}

BitString BitString::operator^(const BitString& o) const {
    if (n_ != o.n_) throw std::invalid_argument("xor: length mismatch");
    BitString r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] ^ o.words_[i];
    return r;
}

bool BitString::operator==(const BitString& o) const {
    return n_ == o.n_ && words_ == o.words_;
}

bool BitString::subset_of(const BitString& t) const {
    if (n_ != t.n_) throw std::invalid_argument("subset_of: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~t.words_[i]) return false;
    return true;
}

}  // namespace bpf

#pragma once

#include <stdexcept>
#include <string>

namespace bpf {

// An exhaustive computation would exceed its cost cap and no override was given.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampler or generator read past the end of its seed.
struct seed_exhausted : std::runtime_error {
    explicit seed_exhausted(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameters require a GF(2^m) field with m outside the supported range [1,64].
struct field_overflow : std::runtime_error {
    explicit field_overflow(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bpf

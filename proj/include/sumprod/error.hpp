#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumprod {

enum class Errc {
    precondition,
    not_coprime,
    all_constant,
    not_a_solution,
    dependent_subfamily,
    no_viable_chain,
    resource_cap,
    parse,
};

inline const char* errc_name(Errc e) noexcept {
    switch (e) {
        case Errc::precondition: return "precondition";
        case Errc::not_coprime: return "not_coprime";
        case Errc::all_constant: return "all_constant";
        case Errc::not_a_solution: return "not_a_solution";
        case Errc::dependent_subfamily: return "dependent_subfamily";
        case Errc::no_viable_chain: return "no_viable_chain";
        case Errc::resource_cap: return "resource_cap";
        case Errc::parse: return "parse";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : Error(Errc::parse, what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// Raised when a search or construction would exceed a configured resource cap.
class ResourceCapError : public Error {
public:
    ResourceCapError(const std::string& cap_name, std::uint64_t cap, std::uint64_t requested)
        : Error(Errc::resource_cap, "refusing: " + cap_name + " cap " + std::to_string(cap) +
                                        " exceeded (requested " + std::to_string(requested) + ")"),
          cap_(cap),
          requested_(requested) {}
    std::uint64_t cap() const noexcept { return cap_; }
    std::uint64_t requested() const noexcept { return requested_; }

private:
    std::uint64_t cap_;
    std::uint64_t requested_;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw Error(Errc::precondition, what);
}

}  // namespace sumprod

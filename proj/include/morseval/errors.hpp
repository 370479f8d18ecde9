#pragma once

#include <stdexcept>
#include <string>

namespace morseval {

// Exit-code mapping for the CLI: usage=1, precondition=2, certification=3.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precondition_error : std::runtime_error {
    std::string stage;
    std::string witness;
    precondition_error(const std::string& msg, std::string stage_ = {}, std::string witness_ = {})
        : std::runtime_error(msg), stage(std::move(stage_)), witness(std::move(witness_)) {}
};

struct certification_error : std::runtime_error {
    std::string stage;
    std::string witness;
    certification_error(const std::string& msg, std::string stage_ = {}, std::string witness_ = {})
        : std::runtime_error(msg), stage(std::move(stage_)), witness(std::move(witness_)) {}
};

// Evaluation outside the function's real domain (log of nonpositive, etc.).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : std::runtime_error {
    std::size_t offset;
    parse_error(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

} // namespace morseval

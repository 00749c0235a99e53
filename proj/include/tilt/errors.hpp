#pragma once

#include <stdexcept>
#include <string>

namespace tilt {

// Malformed textual input (quiver specs, atom literals, JSON payloads).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A computation was asked for outside its domain: a rejected payload, a failed
// verification, an enumeration cap.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what, std::string witness = {})
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

// Caller broke a precondition (mixed contexts, non-chain maps, ...).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tilt

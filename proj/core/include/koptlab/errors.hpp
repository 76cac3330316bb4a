#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace koptlab {

/// A caller broke a documented precondition (improper coloring, wrong base graph, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An exact solver refused an instance that exceeds its configured size ceiling.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Raised when a constructive step that a theorem guarantees fails on a concrete
/// instance. `payload()` holds a JSON document sufficient to replay it.
class Counterexample : public std::runtime_error {
public:
    Counterexample(const std::string& what, std::string payload)
        : std::runtime_error(what), payload_(std::move(payload)) {}

    const std::string& payload() const noexcept { return payload_; }

private:
    std::string payload_;
};

}  // namespace koptlab

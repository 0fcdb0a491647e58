#ifndef DPCOLOR_ERROR_HPP
#define DPCOLOR_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpcolor {

// Malformed input: bad indices, broken matchings, unmet preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A search or enumeration would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t requested)
        : std::runtime_error(what), requested_(requested) {}

    std::uint64_t requested() const { return requested_; }

private:
    std::uint64_t requested_;
};

// A randomized construction ran out of resampling attempts.
class RetryExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dpcolor

#endif  // DPCOLOR_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace ceresa {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Series parameters for which the unit-argument sum diverges.
struct DivergenceError : DomainError {
    explicit DivergenceError(const std::string& what) : DomainError(what) {}
};

/// Requested error bound unreachable within the configured budget.
/// The best ball achieved is carried by the thrower where available.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent evaluation routes produced disjoint enclosures.
/// Signals a kernel bug, never bad user input.
struct InconsistencyError : std::logic_error {
    explicit InconsistencyError(const std::string& what) : std::logic_error(what) {}
};

struct NotPrimeError : std::invalid_argument {
    explicit NotPrimeError(const std::string& what) : std::invalid_argument(what) {}
};

/// N is prime but N mod 3 != 1, so no cube root of unity exists mod N.
struct WrongResidueClassError : std::invalid_argument {
    explicit WrongResidueClassError(const std::string& what) : std::invalid_argument(what) {}
};

struct KOutOfRangeError : std::invalid_argument {
    explicit KOutOfRangeError(const std::string& what) : std::invalid_argument(what) {}
};

/// (a, b) outside the index set {a, b, a+b != 0 mod N}.
struct IndexSetError : std::invalid_argument {
    explicit IndexSetError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace ceresa

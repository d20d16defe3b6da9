#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace divkit {

/// Input that fails distribution validation.
class RejectedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line (CSV) or record index (JSON).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t locus)
        : std::runtime_error(what), locus_(locus) {}

    std::size_t locus() const noexcept { return locus_; }

private:
    std::size_t locus_;
};

/// Argument outside the domain of a scalar function (x <= 0, x == 1 for g-ratios, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ExtrapolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace divkit

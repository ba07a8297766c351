#pragma once

#include <stdexcept>
#include <string>

namespace toolfit {

// Parameter outside a curve or knot domain.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid geometric configuration (degenerate tangent, impossible corner,
// piece too short to trim). Carries the junction index when one applies.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what, int junction = -1)
        : std::runtime_error(what), junction_(junction) {}
    int junction() const { return junction_; }

private:
    int junction_;
};

// Requested tolerance cannot be met (adaptive step underflow).
class ToleranceError : public std::runtime_error {
public:
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or schema-invalid document.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace toolfit

#pragma once

#include <stdexcept>
#include <string>

namespace vptd {

// Base for all library errors; `where` names the module that raised it.
class Error : public std::runtime_error {
public:
    Error(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Stationarity search found neither an extremum nor a turning point in the
// admissible frequency range.
class NoAdmissibleRoot : public Error {
public:
    using Error::Error;
};

// Iterative refinement hit its iteration cap before meeting tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

}

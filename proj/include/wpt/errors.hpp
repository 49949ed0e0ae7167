#pragma once

#include <stdexcept>
#include <string>

namespace wpt {

// A solver failed to produce a solution meeting its own contract. Usage
// errors (bad arguments, invalid configs) throw std::invalid_argument
// instead; the distinction drives the CLI exit codes.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wpt

#pragma once

#include <stdexcept>
#include <string>

namespace autoglosh {

/// Raised for bad user-supplied input: unreadable files, malformed CSV
/// cells, inconsistent label columns. Callers at the process boundary map
/// this to a usage/input exit status.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace autoglosh

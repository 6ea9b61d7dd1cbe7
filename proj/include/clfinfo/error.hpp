#pragma once

#include <stdexcept>

namespace clfinfo {

/// Malformed input text (CoNLL-U, counts TSV, report JSON).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input parsed but cannot support the requested computation.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or command-line usage.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace clfinfo

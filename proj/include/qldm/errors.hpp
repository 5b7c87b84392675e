#pragma once

#include <stdexcept>
#include <string>

namespace qldm {

// Precondition / contract violations (bad indices, shape mismatches, invalid ranges).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

// Malformed file contents (bad magic, truncation, version mismatch).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failures (missing path, unwritable target).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration (unknown keys, bad values, incompatible checkpoint).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qldm

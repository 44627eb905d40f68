#pragma once

#include <stdexcept>
#include <string>

namespace rvea::cli {

/// Bad command line or plan document; exit status 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable input or unwritable destination; exit status 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// --help was given; carries the rendered help text. Exit status 0.
class HelpRequested : public std::runtime_error {
public:
    explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitCapacity = 3 };

} // namespace rvea::cli

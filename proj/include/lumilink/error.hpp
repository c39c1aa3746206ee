#pragma once

#include <stdexcept>
#include <string>

namespace lumilink {

/// Raised when an argument falls outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The encoder produced an all-zero channel vector, so power normalization is undefined.
class DegenerateEncodingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message)
        : std::runtime_error(format(key, line, message)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    /// 1-based line number, 0 when the error is not tied to a line.
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& message) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!key.empty()) out += key + ": ";
        return out + message;
    }

    std::string key_;
    int line_;
};

namespace detail {

inline void require(bool condition, const char* message) {
    if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace lumilink

#pragma once

#include <stdexcept>
#include <string>

namespace sticktile {

// Error categories map 1:1 onto the CLI exit-code contract.
enum class ErrorKind {
    malformed_input,       // exit 4
    verification_failure,  // exit 2
    cap_exceeded,          // exit 3
    unsupported,           // exit 4
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool ok, ErrorKind kind, const std::string& msg) {
    if (!ok) fail(kind, msg);
}

}  // namespace sticktile

#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

enum class ErrorKind { Config, Window, Certification, Budget };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Invalid parameters or malformed input documents.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

// A query reaches outside the region where values are certified exact.
struct WindowError : Error {
    explicit WindowError(const std::string& what) : Error(ErrorKind::Window, what) {}
};

struct CertificationError : Error {
    explicit CertificationError(const std::string& what) : Error(ErrorKind::Certification, what) {}
};

struct WorkBudgetExceeded : Error {
    explicit WorkBudgetExceeded(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

}  // namespace bratteli

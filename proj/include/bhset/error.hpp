#pragma once

#include <stdexcept>
#include <string>

namespace bhset {

// Error taxonomy shared by the library and the CLI exit-code contract:
//   validation -> 2, cap -> 3, precision -> 4, uncertified -> 5.
enum class ErrorKind {
    validation,
    cap_exceeded,
    precision_exhausted,
    uncertified,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    static Error validation(const std::string& what) { return {ErrorKind::validation, what}; }
    static Error cap(const std::string& what) { return {ErrorKind::cap_exceeded, what}; }
    static Error precision(const std::string& what) { return {ErrorKind::precision_exhausted, what}; }
    static Error uncertified(const std::string& what) { return {ErrorKind::uncertified, what}; }

private:
    ErrorKind kind_;
};

}  // namespace bhset

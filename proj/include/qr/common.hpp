#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qr {

// All library errors carry a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

// Fixed-width float rendering (12 significant digits) used by every external
// format so repeated runs are byte-identical.
std::string format_double(double x);

}  // namespace qr

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shockstab {

enum class ErrorKind {
    domain,
    physicality,
    degeneracy,  // characteristic limit v+ = 1
    solver,
    splitting,
    evaluation,
    numerical,
    zero_on_contour,
    unresolved_winding,
    fit,
    config,
    io,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::vector<std::string> trace = {})
        : std::runtime_error(what), kind_(kind), trace_(std::move(trace)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& trace() const noexcept { return trace_; }

private:
    ErrorKind kind_;
    std::vector<std::string> trace_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what,
                              std::vector<std::string> trace = {}) {
    throw Error(kind, what, std::move(trace));
}

}  // namespace shockstab

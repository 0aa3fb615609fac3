#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace honeyeco {

/// Invalid parameters, config content or arguments. The CLI maps this to exit code 1.
/// Carries one message per violated constraint so callers can report all of them.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(std::string issue)
        : std::runtime_error(issue), issues_{std::move(issue)} {}

    explicit validation_error(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

/// Unreadable input or unwritable output. The CLI maps this to exit code 2.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace honeyeco

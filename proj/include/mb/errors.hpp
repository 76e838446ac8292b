#pragma once

#include <stdexcept>
#include <string>

namespace mb {

// Violated precondition or illegal game action.
class domain_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A board outside the supported class (rank above three, too many vertices).
class unsupported_board : public domain_error {
public:
    using domain_error::domain_error;
};

// A search would exceed a configured guard.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document. `where` names the offending field or line;
// `unsupported` marks well-formed documents outside the supported class.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& where, const std::string& what, bool unsupported = false)
        : std::runtime_error(where + ": " + what), where_(where), unsupported_(unsupported) {}
    [[nodiscard]] const std::string& where() const noexcept { return where_; }
    [[nodiscard]] bool unsupported() const noexcept { return unsupported_; }

private:
    std::string where_;
    bool unsupported_;
};

// Two components disagree about a position. Always a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mb

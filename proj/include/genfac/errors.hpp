#ifndef GENFAC_ERRORS_HPP
#define GENFAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace genfac {

// Exit-code contract: 1 parse error, 2 precondition/guard violation,
// 3 internal invariant failure.

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

}  // namespace genfac

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace th {

// Error categories mirrored by the C API status codes.
enum class errc {
    invalid_argument = 1,
    parse_error      = 2,
    mem_budget       = 3,
    run_invalid      = 4,
    io_error         = 5,
};

class error : public std::runtime_error {
  public:
    error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
    if (!ok) fail(c, msg);
}

} // namespace th

#include "qfc/csv.hpp"

#include <charconv>
#include <system_error>

namespace qfc {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace qfc

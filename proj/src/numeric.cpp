#include "ntl/numeric.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <system_error>

namespace ntl {

std::string format_shortest(double v) {
    if (v == 0.0)
        v = 0.0; // drop the sign of -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double v, int decimals) {
    std::array<char, 512> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    if (res.ec != std::errc{})
        return std::to_string(v);
    return std::string(buf.data(), res.ptr);
}

bool parse_double(const std::string& token, double& out) {
    if (token.empty())
        return false;
    const char* first = token.data();
    const char* last = first + token.size();
    if (*first == '+')
        ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

} // namespace ntl

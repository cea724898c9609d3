// SPDX-License-Identifier: Apache-2.0

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/core/scalar.hpp"

namespace exactkrylov {

std::string_view to_string(Precision p) {
    return p == Precision::binary64 ? "binary64" : "binary32";
}

Precision parse_precision(std::string_view name) {
    if (name == "binary64" || name == "double") return Precision::binary64;
    if (name == "binary32" || name == "single" || name == "float") return Precision::binary32;
    throw PreconditionViolation("unknown precision '" + std::string(name) + "'");
}

namespace {

template <class T>
std::string to_chars_string(T x, std::chars_format fmt) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, fmt);
    if (ec != std::errc{}) throw Error("format: to_chars failed");
    return std::string(buf, end);
}

template <class T>
std::string hex_literal(T x) {
    std::string body = to_chars_string(x, std::chars_format::hex);
    if (!body.empty() && body[0] == '-') return "-0x" + body.substr(1);
    return "0x" + body;
}

template <class T, class Parse>
T parse_with(std::string_view text, Parse parse) {
    const std::string s(text);
    if (s.empty()) throw PreconditionViolation("parse_scalar: empty token");
    errno = 0;
    char* end = nullptr;
    const T value = parse(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw PreconditionViolation("parse_scalar: malformed number '" + s + "'");
    if (!std::isfinite(value)) throw PreconditionViolation("parse_scalar: non-finite number '" + s + "'");
    return value;
}

}  // namespace

std::string format_hex(double x) { return hex_literal(x); }
std::string format_hex(float x) { return hex_literal(x); }
std::string format_shortest(double x) { return to_chars_string(x, std::chars_format::general); }
std::string format_shortest(float x) { return to_chars_string(x, std::chars_format::general); }

template <>
double parse_scalar<double>(std::string_view text) {
    return parse_with<double>(text, [](const char* p, char** e) { return std::strtod(p, e); });
}

template <>
float parse_scalar<float>(std::string_view text) {
    return parse_with<float>(text, [](const char* p, char** e) { return std::strtof(p, e); });
}

}  // namespace exactkrylov

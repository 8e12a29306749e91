#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace gifsent {

/// Deterministic JSON serialization. nlohmann's own dump() is stable too, but
/// report consumers pin an exact float format, so the text is produced here:
/// objects come out key-sorted (nlohmann objects iterate sorted already) and
/// doubles are printed either shortest-round-trip or at a fixed number of
/// significant digits.
struct JsonFormat {
    /// 0 means shortest round-trip representation.
    int significant_digits = 0;
};

namespace detail {

inline void write_double(std::ostream& os, double v, const JsonFormat& fmt) {
    if (std::isnan(v) || std::isinf(v)) {
        os << "null"; // JSON has no non-finite numbers
        return;
    }
    char buf[64];
    std::to_chars_result r =
        fmt.significant_digits > 0
            ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                            fmt.significant_digits)
            : std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, r.ptr - buf);
}

inline void write_escaped(std::ostream& os, const std::string& s) {
    os << '"';
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\b': os << "\\b"; break;
            case '\f': os << "\\f"; break;
            case '\n': os << "\\n"; break;
            case '\r': os << "\\r"; break;
            case '\t': os << "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    os << buf;
                } else {
                    os << static_cast<char>(ch);
                }
        }
    }
    os << '"';
}

} // namespace detail

/// Write `j` compactly (no whitespace) with the given float format.
inline void write_json(std::ostream& os, const nlohmann::json& j,
                       const JsonFormat& fmt = {}) {
    using nlohmann::json;
    switch (j.type()) {
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                detail::write_escaped(os, it.key());
                os << ':';
                write_json(os, it.value(), fmt);
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ',';
                first = false;
                write_json(os, v, fmt);
            }
            os << ']';
            break;
        }
        case json::value_t::string:
            detail::write_escaped(os, j.get_ref<const std::string&>());
            break;
        case json::value_t::boolean:
            os << (j.get<bool>() ? "true" : "false");
            break;
        case json::value_t::number_integer:
            os << j.get<std::int64_t>();
            break;
        case json::value_t::number_unsigned:
            os << j.get<std::uint64_t>();
            break;
        case json::value_t::number_float:
            detail::write_double(os, j.get<double>(), fmt);
            break;
        default:
            os << "null";
    }
}

inline std::string to_json_string(const nlohmann::json& j, const JsonFormat& fmt = {}) {
    std::ostringstream os;
    write_json(os, j, fmt);
    return os.str();
}

} // namespace gifsent

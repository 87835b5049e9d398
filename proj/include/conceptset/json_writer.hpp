#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace conceptset {

/// Key order is part of this tool's output contract, so reports are built on
/// the order-preserving json flavor.
using Json = nlohmann::ordered_json;

namespace detail {

/// Fixed 9-significant-digit rendering keeps output byte-identical across
/// runs and platforms (the default shortest-round-trip rendering is not).
inline std::string format_number(const Json& v) {
    if (v.is_number_float()) {
        const double value = v.get<double>();
        if (!std::isfinite(value)) return "null";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", value);
        return buf;
    }
    return v.dump();  // integers round-trip exactly
}

inline void write_value(const Json& v, std::string& out, bool pretty, int depth) {
    const auto indent = [&](int d) {
        out.push_back('\n');
        out.append(size_t(d) * 2, ' ');
    };
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out.push_back('{');
            bool first = true;
            for (const auto& [key, value] : v.items()) {
                if (!first) out.push_back(',');
                first = false;
                if (pretty) indent(depth + 1);
                out += Json(key).dump();
                out.push_back(':');
                if (pretty) out.push_back(' ');
                write_value(value, out, pretty, depth + 1);
            }
            if (pretty) indent(depth);
            out.push_back('}');
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out.push_back('[');
            bool first = true;
            for (const auto& value : v) {
                if (!first) out.push_back(',');
                first = false;
                if (pretty) indent(depth + 1);
                write_value(value, out, pretty, depth + 1);
            }
            if (pretty) indent(depth);
            out.push_back(']');
            return;
        }
        case Json::value_t::number_float:
        case Json::value_t::number_integer:
        case Json::value_t::number_unsigned:
            out += format_number(v);
            return;
        default:
            out += v.dump();  // strings (escaped), booleans, null
            return;
    }
}

}  // namespace detail

inline std::string write_json(const Json& v, bool pretty = false) {
    std::string out;
    detail::write_value(v, out, pretty, 0);
    return out;
}

}  // namespace conceptset

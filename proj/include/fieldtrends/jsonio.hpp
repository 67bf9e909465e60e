#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fieldtrends {

// 17 significant digits round-trip any double exactly.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int places) {
    char buf[512];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, places);
    return std::string(buf, res.ptr);
}

// Shortest representation that still round-trips; used for human-facing labels.
inline std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline std::string fnv1a64_digest(std::string_view bytes) {
    static constexpr char hex[] = "0123456789abcdef";
    const std::uint64_t hash = fnv1a64(bytes);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out += hex[(hash >> shift) & 0xf];
    return out;
}

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    static constexpr char hex[] = "0123456789abcdef";
                    out += "\\u00";
                    out += hex[(c >> 4) & 0xf];
                    out += hex[c & 0xf];
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Canonical JSON value: object keys kept sorted, doubles at 17 significant
// digits, non-finite doubles as null, LF newlines, 2-space indent. Equal trees
// always dump to identical bytes.
class Json {
public:
    using Array = std::vector<Json>;
    // Sorted vector rather than a map so the recursive type stays complete.
    using Object = std::vector<std::pair<std::string, Json>>;

    Json() : value_(nullptr) {}
    Json(std::nullptr_t) : value_(nullptr) {}
    Json(bool v) : value_(v) {}
    Json(int v) : value_(static_cast<std::int64_t>(v)) {}
    Json(std::int64_t v) : value_(v) {}
    Json(double v) : value_(v) {}
    Json(const char* v) : value_(std::string(v)) {}
    Json(std::string v) : value_(std::move(v)) {}
    Json(std::string_view v) : value_(std::string(v)) {}

    static Json array() {
        Json v;
        v.value_ = Array{};
        return v;
    }
    static Json object() {
        Json v;
        v.value_ = Object{};
        return v;
    }

    void push_back(Json v) { std::get<Array>(value_).push_back(std::move(v)); }

    // Inserts sorted; assigning an existing key overwrites it.
    Json& operator[](std::string_view key) {
        auto& object = std::get<Object>(value_);
        const auto it = std::lower_bound(
            object.begin(), object.end(), key,
            [](const auto& entry, std::string_view k) { return entry.first < k; });
        if (it != object.end() && it->first == key) return it->second;
        return object.emplace(it, std::string(key), Json())->second;
    }

    std::string dump() const {
        std::string out;
        write(out, 0);
        out += '\n';
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> value_;

    static void indent(std::string& out, int level) { out.append(2 * level, ' '); }

    void write(std::string& out, int level) const {
        switch (value_.index()) {
            case 0: out += "null"; break;
            case 1: out += std::get<bool>(value_) ? "true" : "false"; break;
            case 2: out += std::to_string(std::get<std::int64_t>(value_)); break;
            case 3: {
                const double v = std::get<double>(value_);
                out += std::isfinite(v) ? format_double(v) : "null";
                break;
            }
            case 4:
                out += '"';
                out += json_escape(std::get<std::string>(value_));
                out += '"';
                break;
            case 5: {
                const auto& array = std::get<Array>(value_);
                if (array.empty()) {
                    out += "[]";
                    break;
                }
                out += "[\n";
                for (std::size_t i = 0; i < array.size(); ++i) {
                    indent(out, level + 1);
                    array[i].write(out, level + 1);
                    out += i + 1 < array.size() ? ",\n" : "\n";
                }
                indent(out, level);
                out += ']';
                break;
            }
            case 6: {
                const auto& object = std::get<Object>(value_);
                if (object.empty()) {
                    out += "{}";
                    break;
                }
                out += "{\n";
                for (std::size_t i = 0; i < object.size(); ++i) {
                    indent(out, level + 1);
                    out += '"';
                    out += json_escape(object[i].first);
                    out += "\": ";
                    object[i].second.write(out, level + 1);
                    out += i + 1 < object.size() ? ",\n" : "\n";
                }
                indent(out, level);
                out += '}';
                break;
            }
        }
    }
};

}  // namespace fieldtrends

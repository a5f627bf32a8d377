#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cocal7 {

using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit digest, rendered as 16 hex digits. Used to fingerprint the
/// resolved inputs of a command so reports can be diffed.
inline std::string fnv1a_digest(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace detail {

inline void render_text_node(const Json& node, const std::string& prefix, std::string& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object() || (value.is_array() && !value.empty() && value.front().is_structured())) {
                out += prefix + key + ":\n";
                render_text_node(value, prefix + "  ", out);
            } else if (value.is_array()) {
                out += prefix + key + ": [";
                bool first = true;
                for (const auto& item : value) {
                    if (!first) out += ", ";
                    out += item.is_string() ? item.get<std::string>() : item.dump();
                    first = false;
                }
                out += "]\n";
            } else if (value.is_string()) {
                out += prefix + key + ": " + value.get<std::string>() + "\n";
            } else {
                out += prefix + key + ": " + value.dump() + "\n";
            }
        }
    } else if (node.is_array()) {
        int i = 0;
        for (const auto& item : node) {
            out += prefix + "- [" + std::to_string(i++) + "]\n";
            render_text_node(item, prefix + "  ", out);
        }
    }
}

}  // namespace detail

/// Deterministic plain-text rendering of a report: nested `key: value` lines
/// in insertion order. Values match the JSON rendering exactly.
inline std::string render_text(const Json& report) {
    std::string out;
    detail::render_text_node(report, "", out);
    return out;
}

/// Aligned table: header row plus rows of cells, columns padded to width.
inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

}  // namespace cocal7

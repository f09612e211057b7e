#ifndef WALKVISITS_IO_HPP
#define WALKVISITS_IO_HPP

// Plot-ready output records and their CSV / JSON encodings.
//
// CSV layout:
//   # schema_version=walkvisits/1
//   # command=<name>
//   # <param>=<value>          (one line per parameter, in order)
//   col1,col2,...              (header row)
//   rows...
//   # <footer key>=<value>     (after the rows)
//
// Doubles are written in shortest round-trip form and always carry a '.'
// or exponent, so a cell's type survives a CSV round trip.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "walkvisits/error.hpp"

namespace walkvisits::io {

inline constexpr const char* kSchemaVersion = "walkvisits/1";

using Cell = std::variant<std::int64_t, double, std::string>;
using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct OutputRecord {
    std::string schema_version = kSchemaVersion;
    std::string command;
    KeyValues parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    KeyValues footer;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, end);
    if (s.find_first_of(".eni") == std::string::npos) {
        s += ".0";
    }
    return s;
}

inline std::string format_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else {
                return v;
            }
        },
        cell);
}

inline Cell parse_cell(std::string_view text) {
    std::int64_t i = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last) {
        return i;
    }
    if (text.find_first_of(".eni") != std::string_view::npos) {
        double d = 0.0;
        if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last) {
            return d;
        }
    }
    return std::string(text);
}

namespace detail {

inline void require_plain(std::string_view text, std::string_view what) {
    require(text.find_first_of(",\n\r") == std::string_view::npos,
            std::string(what) + " must not contain ',' or line breaks: " + std::string(text));
}

inline void require_key(std::string_view key) {
    require(!key.empty() && key.find_first_of("=\n\r") == std::string_view::npos,
            "metadata keys must be non-empty and free of '=' and line breaks");
}

inline std::pair<std::string, std::string> split_comment(std::string_view line) {
    line.remove_prefix(line.starts_with("# ") ? 2 : 1);
    const auto eq = line.find('=');
    require(eq != std::string_view::npos, "malformed metadata line: " + std::string(line));
    return {std::string(line.substr(0, eq)), std::string(line.substr(eq + 1))};
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

inline std::string to_csv(const OutputRecord& r) {
    std::ostringstream os;
    const auto meta = [&](const std::string& key, const std::string& value) {
        detail::require_key(key);
        require(value.find_first_of("\n\r") == std::string::npos, "metadata values must be one line");
        os << "# " << key << '=' << value << '\n';
    };
    meta("schema_version", r.schema_version);
    meta("command", r.command);
    for (const auto& [k, v] : r.parameters) {
        meta(k, v);
    }
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        detail::require_plain(r.columns[i], "column name");
        os << (i ? "," : "") << r.columns[i];
    }
    os << '\n';
    for (const auto& row : r.rows) {
        require(row.size() == r.columns.size(), "row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string text = format_cell(row[i]);
            detail::require_plain(text, "cell");
            os << (i ? "," : "") << text;
        }
        os << '\n';
    }
    for (const auto& [k, v] : r.footer) {
        meta(k, v);
    }
    return os.str();
}

inline OutputRecord from_csv(std::string_view text) {
    OutputRecord r;
    r.schema_version.clear();
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.starts_with('#')) {
            auto kv = detail::split_comment(line);
            if (header_seen) {
                r.footer.push_back(std::move(kv));
            } else if (kv.first == "schema_version") {
                r.schema_version = std::move(kv.second);
            } else if (kv.first == "command") {
                r.command = std::move(kv.second);
            } else {
                r.parameters.push_back(std::move(kv));
            }
        } else if (!header_seen) {
            for (const auto field : detail::split_commas(line)) {
                r.columns.emplace_back(field);
            }
            header_seen = true;
        } else {
            std::vector<Cell> row;
            for (const auto field : detail::split_commas(line)) {
                row.push_back(parse_cell(field));
            }
            require(row.size() == r.columns.size(), "CSV row width differs from header");
            r.rows.push_back(std::move(row));
        }
    }
    require(header_seen, "CSV has no header row");
    return r;
}

inline nlohmann::ordered_json to_json(const OutputRecord& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["command"] = r.command;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) {
        j["parameters"][k] = v;
    }
    j["columns"] = r.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        auto& out = j["rows"].emplace_back(nlohmann::ordered_json::array());
        for (const auto& cell : row) {
            std::visit([&out](const auto& v) { out.push_back(v); }, cell);
        }
    }
    j["footer"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.footer) {
        j["footer"][k] = v;
    }
    return j;
}

inline OutputRecord from_json(const nlohmann::ordered_json& j) {
    OutputRecord r;
    try {
        r.schema_version = j.at("schema_version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        for (const auto& [k, v] : j.at("parameters").items()) {
            r.parameters.emplace_back(k, v.get<std::string>());
        }
        r.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows")) {
            std::vector<Cell> cells;
            for (const auto& v : row) {
                if (v.is_number_integer()) {
                    cells.emplace_back(v.get<std::int64_t>());
                } else if (v.is_number_float()) {
                    cells.emplace_back(v.get<double>());
                } else {
                    cells.emplace_back(v.get<std::string>());
                }
            }
            r.rows.push_back(std::move(cells));
        }
        for (const auto& [k, v] : j.at("footer").items()) {
            r.footer.emplace_back(k, v.get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("malformed JSON record: ") + e.what());
    }
    return r;
}

enum class Format { csv, json };

inline std::string render(const OutputRecord& r, Format format) {
    return format == Format::csv ? to_csv(r) : to_json(r).dump(2) + "\n";
}

inline OutputRecord parse(std::string_view text, Format format) {
    if (format == Format::csv) {
        return from_csv(text);
    }
    try {
        return from_json(nlohmann::ordered_json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error(std::string("malformed JSON: ") + e.what());
    }
}

/// Writes to a sibling temp file and renames it over `path`.
inline void write_atomically(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        require(static_cast<bool>(out), "failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace walkvisits::io

#endif  // WALKVISITS_IO_HPP

#pragma once

// Deterministic output formatting: CSV with fixed schemas and %.17g values
// (round-trippable doubles, byte-identical across runs), JSON through
// nlohmann's ordered_json so key order never depends on hashing.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "precision.hpp"

namespace opalab {

using ordered_json = nlohmann::ordered_json;

/// Shortest exact decimal form of a double; NaN and infinities print as
/// "nan"/"inf" so CSV consumers see an explicit marker, never an empty cell.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_index(std::size_t k) { return std::to_string(k); }

inline void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw config_error("cannot create output directory " + dir + ": " + ec.message());
}

class csv_writer {
  public:
    csv_writer(const std::string& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw config_error("cannot open output file: " + path);
        write_row(header);
    }

    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

inline void write_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace opalab

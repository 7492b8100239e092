#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rindler/error.hpp"
#include "rindler/sweep.hpp"

namespace rindler {

inline constexpr const char *kCsvHeader = "mu,p,r,channel,state,c_closed,c_oracle,delta";

/// 12 significant digits; NaN as "nan"; negative zero printed as 0.
inline std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline void write_csv(const std::vector<SweepRow> &rows, std::ostream &out) {
    out << kCsvHeader << '\n';
    for (const auto &row : rows) {
        out << format_number(row.mu) << ',' << format_number(row.p) << ',' << format_number(row.r) << ','
            << row.channel << ',' << row.state << ',' << format_number(row.c_closed) << ','
            << format_number(row.c_oracle) << ',' << format_number(row.delta) << '\n';
    }
}

inline std::string render_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    write_csv(rows, out);
    return out.str();
}

inline void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    }
    file << content;
    file.flush();
    if (!file) {
        throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
    }
}

inline void emit_csv(const std::vector<SweepRow> &rows, const std::string &path) {
    write_text_file(path, render_csv(rows));
}

}  // namespace rindler

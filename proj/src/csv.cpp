#include "lobjump/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "lobjump/types.hpp"

namespace lobjump {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

int64_t parse_int(std::string_view field, const std::string& context, uint64_t line_no) {
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw DataError("line " + std::to_string(line_no) + ": bad integer '" +
                            std::string(field) + "' in " + context,
                        line_no);
    }
    return value;
}

double parse_double(std::string_view field, const std::string& context, uint64_t line_no) {
    // std::from_chars<double> is available but strtod keeps locale-free "C"
    // parsing portable across the toolchains we build on.
    std::string tmp(field);
    char* end = nullptr;
    double value = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || tmp.empty()) {
        throw DataError("line " + std::to_string(line_no) + ": bad number '" + tmp + "' in " +
                            context,
                        line_no);
    }
    return value;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path, 0);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + path, 0);
    out << contents;
    if (!out) throw DataError("write failed: " + path, 0);
}

}  // namespace lobjump

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace csv {

struct Table {
    std::string header;
    std::vector<std::vector<std::string>> rows;

    double num(std::size_t row, std::size_t col) const { return std::stod(rows[row][col]); }
};

inline Table read(const std::filesystem::path& path) {
    Table t;
    std::ifstream in(path);
    std::getline(in, t.header);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        t.rows.push_back(std::move(cells));
    }
    return t;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace csv

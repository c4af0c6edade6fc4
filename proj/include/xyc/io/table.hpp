#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace xyc {

#ifndef XYC_VERSION
#define XYC_VERSION "1.0.0"
#endif

inline constexpr const char* kVersion = XYC_VERSION;

// Column-named table of doubles; one row per sweep point.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json meta = nlohmann::json::object();

    SweepTable() = default;
    explicit SweepTable(std::vector<std::string> cols) : columns(std::move(cols)) {}

    void add(std::vector<double> row)
    {
        if (row.size() != columns.size())
            throw std::invalid_argument("row width does not match header");
        for (double v : row)
            if (!std::isfinite(v))
                throw std::domain_error("non-finite value in table row");
        rows.push_back(std::move(row));
    }

    int column(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return static_cast<int>(i);
        throw std::out_of_range("no column named " + name);
    }

    std::vector<double> values(const std::string& name) const
    {
        const int c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows)
            out.push_back(r[c]);
        return out;
    }

    bool operator==(const SweepTable& o) const { return columns == o.columns && rows == o.rows; }
};

inline std::string format_number(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void write_csv(const SweepTable& t, std::ostream& os)
{
    if (t.columns.empty())
        throw std::invalid_argument("refusing to write a table without columns");
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << format_number(r[i]);
        os << '\n';
    }
}

inline void write_csv(const SweepTable& t, const std::filesystem::path& path)
{
    if (!path.parent_path().empty())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_csv(t, f);
    if (!f)
        throw std::runtime_error("write failed for " + path.string());
}

inline std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

inline SweepTable read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("empty CSV input");
    SweepTable t(split_line(line));
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        for (const auto& c : split_line(line))
            row.push_back(std::stod(c));
        t.add(std::move(row));
    }
    return t;
}

inline SweepTable read_csv(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path.string());
    return read_csv(f);
}

// <csv>.json next to the table
inline std::filesystem::path sidecar_path(const std::filesystem::path& csv)
{
    auto p = csv;
    p += ".json";
    return p;
}

inline void write_sidecar(const std::filesystem::path& csv, const std::string& command, const nlohmann::json& config,
                          double wall_time_s)
{
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["version"] = kVersion;
    j["wall_time_s"] = wall_time_s;
    std::ofstream f(sidecar_path(csv), std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write sidecar for " + csv.string());
    f << j.dump(2) << '\n';
}

// XYC_OUTPUT_DIR, else the working directory.
inline std::filesystem::path default_output_dir()
{
    if (const char* d = std::getenv("XYC_OUTPUT_DIR"); d && *d)
        return d;
    return std::filesystem::current_path();
}

} // namespace xyc

#include "emostat/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "emostat/error.hpp"

namespace emostat {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (auto& line : lines)
        if (!line.empty() && line.back() == '\r') line.pop_back();
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t end = line.find(',', start);
        if (end == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, end - start)));
        start = end + 1;
    }
    return cells;
}

double parse_double(const std::string& cell, std::size_t line_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
        throw ValueError("line " + std::to_string(line_no) + ": value out of range: '" + cell + "'");
    if (ec != std::errc() || ptr != last)
        throw ValueError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
    if (!std::isfinite(value))
        throw ValueError("line " + std::to_string(line_no) + ": non-finite value: '" + cell + "'");
    return value;
}

long parse_int(const std::string& cell, std::size_t line_no, const char* what, long min_value) {
    long value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ValueError("line " + std::to_string(line_no) + ": bad " + what + ": '" + cell + "'");
    if (value < min_value)
        throw ValueError("line " + std::to_string(line_no) + ": " + what + " must be >= " +
                         std::to_string(min_value));
    return value;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

IndicatorDataset parse_indicator_csv(const std::filesystem::path& path) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty()) throw FormatError(path.string() + ": empty file");
    if (lines[0] != "algorithm,problem,k,run,indicator,value")
        throw FormatError(path.string() +
                          ": line 1: expected header 'algorithm,problem,k,run,indicator,value'");

    IndicatorDataset dataset;
    std::set<std::tuple<std::string, std::string, int, int, std::string>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const auto cells = split_cells(lines[i]);
        if (cells.size() != 6)
            throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": expected 6 columns, got " +
                              std::to_string(cells.size()));
        IndicatorRecord rec;
        rec.algorithm = cells[0];
        rec.problem = cells[1];
        rec.k = static_cast<int>(parse_int(cells[2], line_no, "k", 1));
        rec.run = static_cast<int>(parse_int(cells[3], line_no, "run", 0));
        rec.indicator = cells[4];
        rec.value = parse_double(cells[5], line_no);
        auto key = std::make_tuple(rec.algorithm, rec.problem, rec.k, rec.run, rec.indicator);
        if (!seen.insert(key).second)
            throw DuplicateKeyError(path.string() + ": line " + std::to_string(line_no) + ": duplicate key (" +
                                    rec.algorithm + "," + rec.problem + "," + std::to_string(rec.k) + "," +
                                    std::to_string(rec.run) + "," + rec.indicator + ")");
        dataset.records.push_back(std::move(rec));
    }
    return dataset;
}

void write_indicator_csv(const IndicatorDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open file for writing: " + path.string());
    out << "algorithm,problem,k,run,indicator,value\n";
    for (const auto& rec : dataset.records) {
        out << rec.algorithm << ',' << rec.problem << ',' << rec.k << ',' << rec.run << ','
            << rec.indicator << ',' << format_double(rec.value) << '\n';
    }
}

std::vector<ApproximationSet> parse_approximation_csv(const std::filesystem::path& path) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty()) throw FormatError(path.string() + ": empty file");
    const auto header = split_cells(lines[0]);
    if (header.size() < 5 || header[0] != "algorithm" || header[1] != "problem" || header[2] != "k" ||
        header[3] != "run")
        throw FormatError(path.string() + ": line 1: expected header 'algorithm,problem,k,run,f1,...'");
    const int max_k = static_cast<int>(header.size()) - 4;
    for (int j = 0; j < max_k; ++j)
        if (header[4 + j] != "f" + std::to_string(j + 1))
            throw FormatError(path.string() + ": line 1: objective column " + std::to_string(j + 5) +
                              " must be named f" + std::to_string(j + 1));

    std::vector<ApproximationSet> sets;
    std::map<std::tuple<std::string, std::string, int, int>, std::size_t> index;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        auto cells = split_cells(lines[i]);
        if (cells.size() < 4 || cells.size() > header.size())
            throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": expected between 4 and " +
                              std::to_string(header.size()) + " columns");
        cells.resize(header.size()); // omitted trailing cells count as empty
        const std::string& algorithm = cells[0];
        const std::string& problem = cells[1];
        const int k = static_cast<int>(parse_int(cells[2], line_no, "k", 1));
        const int run = static_cast<int>(parse_int(cells[3], line_no, "run", 0));
        if (k > max_k)
            throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": k=" + std::to_string(k) +
                              " exceeds the " + std::to_string(max_k) + " objective columns in the header");
        Point point(k);
        for (int j = 0; j < k; ++j) {
            if (cells[4 + j].empty())
                throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": k=" +
                                  std::to_string(k) + " but objective cell f" + std::to_string(j + 1) +
                                  " is empty");
            point[j] = parse_double(cells[4 + j], line_no);
        }
        for (std::size_t j = 4 + k; j < cells.size(); ++j)
            if (!cells[j].empty())
                throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": k=" +
                                  std::to_string(k) + " but objective cell f" + std::to_string(j - 3) +
                                  " is populated");

        auto key = std::make_tuple(algorithm, problem, k, run);
        auto it = index.find(key);
        if (it == index.end()) {
            ApproximationSet set;
            set.algorithm = algorithm;
            set.problem = problem;
            set.k = k;
            set.run = run;
            index.emplace(key, sets.size());
            sets.push_back(std::move(set));
            it = index.find(key);
        }
        sets[it->second].points.push_back(std::move(point));
    }
    return sets;
}

std::vector<Point> parse_front_csv(const std::filesystem::path& path, int k) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty()) throw FormatError(path.string() + ": empty file");
    const auto header = split_cells(lines[0]);
    if (static_cast<int>(header.size()) != k)
        throw FormatError(path.string() + ": line 1: expected " + std::to_string(k) + " columns f1,...,f" +
                          std::to_string(k));
    for (int j = 0; j < k; ++j)
        if (header[j] != "f" + std::to_string(j + 1))
            throw FormatError(path.string() + ": line 1: column " + std::to_string(j + 1) + " must be named f" +
                              std::to_string(j + 1));
    std::vector<Point> front;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cells = split_cells(lines[i]);
        if (static_cast<int>(cells.size()) != k)
            throw FormatError(path.string() + ": line " + std::to_string(i + 1) + ": expected " +
                              std::to_string(k) + " columns");
        Point p(k);
        for (int j = 0; j < k; ++j) p[j] = parse_double(cells[j], i + 1);
        front.push_back(std::move(p));
    }
    if (front.empty()) throw FormatError(path.string() + ": no reference points");
    return front;
}

} // namespace emostat

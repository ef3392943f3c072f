#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "emostat/rng.hpp"
#include "emostat/types.hpp"

namespace testsupport {

// Box-Muller normal draw with the pinned uniform mapping, so test data is
// identical across standard libraries.
inline double gaussian(std::mt19937_64& gen) {
    const double u1 = 1.0 - emostat::uniform01(gen);
    const double u2 = emostat::uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}

inline std::vector<emostat::Point> gaussian_cloud(std::mt19937_64& gen, std::size_t count,
                                                  const std::vector<double>& center, double sigma) {
    std::vector<emostat::Point> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        emostat::Point pt(center.size());
        for (std::size_t j = 0; j < center.size(); ++j) pt[j] = center[j] + sigma * gaussian(gen);
        points.push_back(std::move(pt));
    }
    return points;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("emostat_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

// Minimal XML well-formedness check: tags balance, exactly one root,
// attribute quotes close. Enough to validate the generated SVG documents.
inline bool xml_well_formed(const std::string& text, std::string* root_name = nullptr) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    int roots = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const auto end = text.find("-->", i);
            if (end == std::string::npos) return false;
            i = end + 3;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            const auto end = text.find("?>", i);
            if (end == std::string::npos) return false;
            i = end + 2;
            continue;
        }
        const bool closing = i + 1 < n && text[i + 1] == '/';
        std::size_t j = i + (closing ? 2 : 1);
        std::size_t name_start = j;
        while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == ':' ||
                         text[j] == '-' || text[j] == '_'))
            ++j;
        const std::string name = text.substr(name_start, j - name_start);
        if (name.empty()) return false;
        // scan to tag end honoring quoted attributes
        bool self_closing = false;
        char quote = 0;
        while (j < n) {
            const char c = text[j];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                break;
            } else if (c == '/' && j + 1 < n && text[j + 1] == '>') {
                self_closing = true;
            }
            ++j;
        }
        if (j >= n) return false;
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closing) {
            if (stack.empty() && roots++ > 0) return false;
            if (stack.empty() && root_name) *root_name = name;
            stack.push_back(name);
        } else if (stack.empty()) {
            if (roots++ > 0) return false;
            if (root_name && roots == 1) *root_name = name;
        }
        i = j + 1;
    }
    return stack.empty() && roots == 1;
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace testsupport

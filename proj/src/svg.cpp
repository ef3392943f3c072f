#include "emostat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "emostat/error.hpp"

namespace emostat {
namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kColorCount = 8;

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// One marker per algorithm index, centered at (x, y).
void marker(std::ostringstream& svg, int style, double x, double y, const char* color) {
    const double r = 3.5;
    switch (style % 5) {
        case 0:
            svg << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << r
                << "\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
            break;
        case 1:
            svg << "<rect x=\"" << fmt(x - r) << "\" y=\"" << fmt(y - r) << "\" width=\"" << 2 * r
                << "\" height=\"" << 2 * r << "\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
            break;
        case 2:
            svg << "<path d=\"M " << fmt(x) << ' ' << fmt(y - r) << " L " << fmt(x + r) << ' '
                << fmt(y + r) << " L " << fmt(x - r) << ' ' << fmt(y + r) << " Z\" fill=\"" << color
                << "\" fill-opacity=\"0.75\"/>\n";
            break;
        case 3:
            svg << "<path d=\"M " << fmt(x) << ' ' << fmt(y - r) << " L " << fmt(x + r) << ' ' << fmt(y)
                << " L " << fmt(x) << ' ' << fmt(y + r) << " L " << fmt(x - r) << ' ' << fmt(y)
                << " Z\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
            break;
        default:
            svg << "<path d=\"M " << fmt(x - r) << ' ' << fmt(y) << " H " << fmt(x + r) << " M "
                << fmt(x) << ' ' << fmt(y - r) << " V " << fmt(y + r) << "\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
            break;
    }
}

void legend(std::ostringstream& svg, const std::vector<std::string>& names, double x, double y) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double row_y = y + 18.0 * static_cast<double>(i);
        svg << "<g class=\"legend-entry\">\n";
        marker(svg, static_cast<int>(i), x, row_y - 4.0, kColors[i % kColorCount]);
        svg << "<text x=\"" << fmt(x + 10.0) << "\" y=\"" << fmt(row_y) << "\">"
            << escape(names[i]) << "</text>\n";
        svg << "</g>\n";
    }
}

std::string svg_open(int width, int height) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<style>text { font-family: sans-serif; font-size: 11px; } "
           ".title { font-size: 14px; font-weight: bold; } "
           ".axis { stroke: #333333; stroke-width: 1; fill: none; }</style>\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    return svg.str();
}

} // namespace

std::string render_scatter(const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PerformanceCloud>& clouds,
                           const std::vector<double>& weights) {
    for (const auto& cloud : clouds)
        for (const auto& pt : cloud.points)
            if (pt.size() != 2)
                throw DimensionError("render_scatter: performance points must be 2-dimensional");
    if (weights.size() != 2) throw DimensionError("render_scatter: weights must be 2-dimensional");

    const int width = 660, height = 480;
    const double left = 60, top = 40;
    const double plot_w = 400, plot_h = 400;
    auto px = [&](double x) { return left + x * plot_w; };
    auto py = [&](double y) { return top + (1.0 - y) * plot_h; };

    std::ostringstream svg;
    svg << svg_open(width, height);
    svg << "<text class=\"title\" x=\"" << fmt(left) << "\" y=\"24\">" << escape(title) << "</text>\n";
    svg << "<rect class=\"axis\" x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h) << "\"/>\n";
    for (double tick = 0.0; tick <= 1.0; tick += 0.25) {
        svg << "<text x=\"" << fmt(px(tick) - 8.0) << "\" y=\"" << fmt(top + plot_h + 16.0) << "\">"
            << fmt(tick) << "</text>\n";
        svg << "<text x=\"" << fmt(left - 30.0) << "\" y=\"" << fmt(py(tick) + 4.0) << "\">"
            << fmt(tick) << "</text>\n";
    }
    svg << "<text x=\"" << fmt(left + plot_w / 2.0 - 20.0) << "\" y=\"" << fmt(top + plot_h + 36.0)
        << "\">" << escape(x_label) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt(top + plot_h / 2.0) << "\" transform=\"rotate(-90 16 "
        << fmt(top + plot_h / 2.0) << ")\">" << escape(y_label) << "</text>\n";

    // Discriminant direction through the data mean, clipped to the unit box.
    double mean_x = 0.0, mean_y = 0.0;
    std::size_t count = 0;
    for (const auto& cloud : clouds)
        for (const auto& pt : cloud.points) {
            mean_x += pt[0];
            mean_y += pt[1];
            ++count;
        }
    if (count > 0) {
        mean_x /= static_cast<double>(count);
        mean_y /= static_cast<double>(count);
        double t_min = -std::numeric_limits<double>::infinity();
        double t_max = std::numeric_limits<double>::infinity();
        const double mean[2] = {mean_x, mean_y};
        for (int j = 0; j < 2; ++j) {
            if (weights[j] == 0.0) continue;
            double t0 = (0.0 - mean[j]) / weights[j];
            double t1 = (1.0 - mean[j]) / weights[j];
            if (t0 > t1) std::swap(t0, t1);
            t_min = std::max(t_min, t0);
            t_max = std::min(t_max, t1);
        }
        if (std::isfinite(t_min) && std::isfinite(t_max) && t_min < t_max) {
            svg << "<line x1=\"" << fmt(px(mean_x + t_min * weights[0])) << "\" y1=\""
                << fmt(py(mean_y + t_min * weights[1])) << "\" x2=\""
                << fmt(px(mean_x + t_max * weights[0])) << "\" y2=\""
                << fmt(py(mean_y + t_max * weights[1]))
                << "\" stroke=\"#444444\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        }
    }

    std::vector<std::string> names;
    for (std::size_t i = 0; i < clouds.size(); ++i) {
        names.push_back(clouds[i].algorithm);
        for (const auto& pt : clouds[i].points)
            marker(svg, static_cast<int>(i), px(pt[0]), py(pt[1]), kColors[i % kColorCount]);
    }
    legend(svg, names, left + plot_w + 24.0, top + 16.0);
    svg << "</svg>\n";
    return svg.str();
}

std::string render_ld_histogram(const std::string& title,
                                const std::vector<std::string>& algorithms,
                                const std::map<std::string, std::vector<double>>& ld_values) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& name : algorithms) {
        auto it = ld_values.find(name);
        if (it == ld_values.end())
            throw LookupError("render_ld_histogram: no LD values for '" + name + "'");
        for (double v : it->second) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo)) throw ParameterError("render_ld_histogram: no LD values");
    const double span = (hi > lo) ? (hi - lo) : 1.0;
    const double axis_lo = lo, axis_hi = (hi > lo) ? hi : lo + 1.0;

    constexpr int kBins = 12;
    std::vector<std::vector<double>> counts(algorithms.size(), std::vector<double>(kBins, 0.0));
    double max_count = 1.0;
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        for (double v : ld_values.at(algorithms[i])) {
            int bin = static_cast<int>((v - axis_lo) / span * kBins);
            bin = std::clamp(bin, 0, kBins - 1);
            counts[i][static_cast<std::size_t>(bin)] += 1.0;
        }
        for (double c : counts[i]) max_count = std::max(max_count, c);
    }

    const int width = 660, height = 360;
    const double left = 60, top = 40;
    const double plot_w = 400, plot_h = 280;
    auto px = [&](double x) { return left + (x - axis_lo) / (axis_hi - axis_lo) * plot_w; };
    auto py = [&](double c) { return top + (1.0 - c / max_count) * plot_h; };

    std::ostringstream svg;
    svg << svg_open(width, height);
    svg << "<text class=\"title\" x=\"" << fmt(left) << "\" y=\"24\">" << escape(title) << "</text>\n";
    svg << "<rect class=\"axis\" x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h) << "\"/>\n";
    svg << "<text x=\"" << fmt(left - 8.0) << "\" y=\"" << fmt(top + plot_h + 16.0) << "\">"
        << fmt(axis_lo) << "</text>\n";
    svg << "<text x=\"" << fmt(left + plot_w - 8.0) << "\" y=\"" << fmt(top + plot_h + 16.0) << "\">"
        << fmt(axis_hi) << "</text>\n";
    svg << "<text x=\"" << fmt(left + plot_w / 2.0 - 28.0) << "\" y=\"" << fmt(top + plot_h + 34.0)
        << "\">LD value</text>\n";

    // Frequency polygon per algorithm at the bin midpoints.
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[i % kColorCount]
            << "\" stroke-width=\"1.5\" points=\"";
        for (int b = 0; b < kBins; ++b) {
            const double mid = axis_lo + (static_cast<double>(b) + 0.5) / kBins * (axis_hi - axis_lo);
            svg << fmt(px(mid)) << ',' << fmt(py(counts[i][static_cast<std::size_t>(b)]));
            if (b + 1 < kBins) svg << ' ';
        }
        svg << "\"/>\n";
    }
    legend(svg, algorithms, left + plot_w + 24.0, top + 16.0);
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap(const std::string& title,
                           const std::vector<int>& k_values,
                           const std::vector<std::string>& algorithms,
                           const std::vector<std::vector<double>>& mean_rank_by_k) {
    if (mean_rank_by_k.size() != k_values.size())
        throw ParameterError("render_heatmap: one rank row per k expected");
    for (const auto& row : mean_rank_by_k)
        if (row.size() != algorithms.size())
            throw ParameterError("render_heatmap: one rank per algorithm expected");

    const double cell_w = 70.0, cell_h = 40.0;
    const double left = 110.0, top = 56.0;
    const int width = static_cast<int>(left + cell_w * static_cast<double>(k_values.size()) + 30.0);
    const int height = static_cast<int>(top + cell_h * static_cast<double>(algorithms.size()) + 40.0);
    const double m = static_cast<double>(algorithms.size());

    std::ostringstream svg;
    svg << svg_open(width, height);
    svg << "<text class=\"title\" x=\"16\" y=\"24\">" << escape(title) << "</text>\n";
    for (std::size_t col = 0; col < k_values.size(); ++col)
        svg << "<text x=\"" << fmt(left + cell_w * (static_cast<double>(col) + 0.5) - 8.0) << "\" y=\""
            << fmt(top - 8.0) << "\">" << k_values[col] << "D</text>\n";
    for (std::size_t row = 0; row < algorithms.size(); ++row)
        svg << "<text x=\"8\" y=\"" << fmt(top + cell_h * (static_cast<double>(row) + 0.5) + 4.0)
            << "\">" << escape(algorithms[row]) << "</text>\n";

    for (std::size_t row = 0; row < algorithms.size(); ++row)
        for (std::size_t col = 0; col < k_values.size(); ++col) {
            const double rank = mean_rank_by_k[col][row];
            // rank 1 (best) light, rank m dark
            const double t = (m > 1.0) ? std::clamp((rank - 1.0) / (m - 1.0), 0.0, 1.0) : 0.0;
            const int r = static_cast<int>(std::lround(239.0 + t * (8.0 - 239.0)));
            const int g = static_cast<int>(std::lround(243.0 + t * (81.0 - 243.0)));
            const int b = static_cast<int>(std::lround(255.0 + t * (156.0 - 255.0)));
            const double x = left + cell_w * static_cast<double>(col);
            const double y = top + cell_h * static_cast<double>(row);
            svg << "<rect class=\"cell\" x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
                << fmt(cell_w) << "\" height=\"" << fmt(cell_h) << "\" fill=\"rgb(" << r << ',' << g
                << ',' << b << ")\" stroke=\"white\"/>\n";
            svg << "<text x=\"" << fmt(x + cell_w / 2.0 - 12.0) << "\" y=\""
                << fmt(y + cell_h / 2.0 + 4.0) << "\" fill=\"" << (t > 0.55 ? "white" : "black")
                << "\">" << fmt(rank, "%.2f") << "</text>\n";
        }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_grouping_table(const std::vector<GroupingRow>& rows) {
    std::ostringstream md;
    md << "| k | problem | groups |\n";
    md << "| --- | --- | --- |\n";
    for (const auto& row : rows) {
        const bool non_singleton =
            std::any_of(row.groups.begin(), row.groups.end(),
                        [](const std::vector<std::string>& g) { return g.size() > 1; });
        if (!non_singleton) continue;
        md << "| " << row.k << "D | " << row.problem << " | {";
        for (std::size_t i = 0; i < row.groups.size(); ++i) {
            if (i > 0) md << ", ";
            md << '{';
            for (std::size_t j = 0; j < row.groups[i].size(); ++j) {
                if (j > 0) md << ", ";
                md << row.groups[i][j];
            }
            md << '}';
        }
        md << "} |\n";
    }
    return md.str();
}

} // namespace emostat

#include "charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "gifsent/error.hpp"

namespace gifsent {

namespace {

std::string format_value(double v) {
    char buf[32];
    if (std::abs(v - std::round(v)) < 1e-9)
        std::snprintf(buf, sizeof(buf), "%.0f", v);
    else
        std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

void render_bar_chart(const std::string& path, const std::string& title,
                      const std::vector<std::pair<std::string, double>>& bars,
                      double max_value) {
    if (bars.empty()) throw DataError("bar chart needs at least one bar");
    if (!(max_value > 0.0)) max_value = 1.0;

    const int width = 720, height = 420;
    const int left = 70, right = 30, top = 60, bottom = 90;
    const int plot_w = width - left - right;
    const int plot_h = height - top - bottom;

    cv::Mat canvas(height, width, CV_8UC3, cv::Scalar(255, 255, 255));
    const cv::Scalar ink(40, 40, 40);
    const cv::Scalar bar_color(140, 90, 30);  // BGR: muted blue
    const cv::Scalar grid(220, 220, 220);

    cv::putText(canvas, title, {left, 32}, cv::FONT_HERSHEY_SIMPLEX, 0.7, ink, 1, cv::LINE_AA);

    // Horizontal gridlines at quarters of the axis.
    for (int q = 0; q <= 4; ++q) {
        int y = top + plot_h - plot_h * q / 4;
        cv::line(canvas, {left, y}, {left + plot_w, y}, grid, 1);
        cv::putText(canvas, format_value(max_value * q / 4.0), {8, y + 4},
                    cv::FONT_HERSHEY_SIMPLEX, 0.4, ink, 1, cv::LINE_AA);
    }

    int n = static_cast<int>(bars.size());
    int slot = plot_w / n;
    int bar_w = std::max(8, slot * 6 / 10);
    for (int i = 0; i < n; ++i) {
        double v = std::clamp(bars[i].second, 0.0, max_value);
        int h = static_cast<int>(std::lround(plot_h * v / max_value));
        int x0 = left + slot * i + (slot - bar_w) / 2;
        int y0 = top + plot_h - h;
        cv::rectangle(canvas, {x0, y0}, {x0 + bar_w, top + plot_h}, bar_color, cv::FILLED);
        cv::putText(canvas, format_value(bars[i].second), {x0, y0 - 6},
                    cv::FONT_HERSHEY_SIMPLEX, 0.45, ink, 1, cv::LINE_AA);
        cv::putText(canvas, bars[i].first, {left + slot * i + 4, top + plot_h + 24},
                    cv::FONT_HERSHEY_SIMPLEX, 0.42, ink, 1, cv::LINE_AA);
    }
    cv::line(canvas, {left, top + plot_h}, {left + plot_w, top + plot_h}, ink, 1);
    cv::line(canvas, {left, top}, {left, top + plot_h}, ink, 1);

    if (!cv::imwrite(path, canvas)) throw DataError("cannot write chart: " + path);
}

} // namespace gifsent

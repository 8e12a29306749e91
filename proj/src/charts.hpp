#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gifsent {

/// Renders a labeled bar chart PNG. Bars are drawn left to right; max_value
/// sets the y-axis top (values above it clip). Pure drawing, so identical
/// inputs produce identical bytes.
void render_bar_chart(const std::string& path, const std::string& title,
                      const std::vector<std::pair<std::string, double>>& bars,
                      double max_value);

} // namespace gifsent

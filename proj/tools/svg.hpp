// Copyright 2026 The qbrittle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal SVG bar chart for robust/fragile histograms.

#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "qbrittle/report.hpp"

namespace qbrittle::cli {

inline std::string histogram_svg(const std::vector<HistogramBin>& bins, const std::string& title,
                                 const std::string& x_label) {
  constexpr double kWidth = 640, kHeight = 360, kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  std::size_t peak = 1;
  for (const auto& b : bins) peak = std::max({peak, b.robust, b.fragile});
  const double slot = plot_w / static_cast<double>(std::max<std::size_t>(bins.size(), 1));

  std::string out;
  char buf[256];
  auto add = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  add("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n",
      kWidth, kHeight);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + std::to_string(static_cast<int>(kWidth / 2)) + "\" y=\"22\" text-anchor=\"middle\">" + title +
         "</text>\n";
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double x = kLeft + slot * static_cast<double>(i);
    const double hr = plot_h * static_cast<double>(bins[i].robust) / static_cast<double>(peak);
    const double hf = plot_h * static_cast<double>(bins[i].fragile) / static_cast<double>(peak);
    add("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"#3b6fb6\"/>\n", x + 1, kTop + plot_h - hr,
        slot / 2 - 1, hr);
    add("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"#c8423b\"/>\n", x + slot / 2,
        kTop + plot_h - hf, slot / 2 - 1, hf);
  }
  add("<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n", kLeft, kTop + plot_h,
      kLeft + plot_w, kTop + plot_h);
  add("<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n", kLeft, kTop, kLeft,
      kTop + plot_h);
  if (!bins.empty()) {
    add("<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"start\">%.3g</text>\n", kLeft, kTop + plot_h + 16, bins.front().lo);
    add("<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"end\">%.3g</text>\n", kLeft + plot_w, kTop + plot_h + 16,
        bins.back().hi);
  }
  add("<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"end\">%zu</text>\n", kLeft - 6, kTop + 4, peak);
  add("<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"end\">0</text>\n", kLeft - 6, kTop + plot_h);
  out += "<text x=\"" + std::to_string(static_cast<int>(kLeft + plot_w / 2)) + "\" y=\"" +
         std::to_string(static_cast<int>(kHeight - 12)) + "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  add("<text x=\"%.0f\" y=\"%.0f\" fill=\"#3b6fb6\">robust</text>\n", kWidth - 120, kTop - 8);
  add("<text x=\"%.0f\" y=\"%.0f\" fill=\"#c8423b\">fragile</text>\n", kWidth - 65, kTop - 8);
  out += "</svg>\n";
  return out;
}

}  // namespace qbrittle::cli

// Copyright 2026 The robust-rating Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "robust_rating/data_io.hpp"

namespace robust_rating {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;  // legend column
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kColours = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fixed(double v, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
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

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> xy;
};

}  // namespace

std::string svg_line_chart(const std::vector<CurvePoint>& points) {
  std::vector<Series> series;
  for (const CurvePoint& pt : points) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.name == pt.aggregator; });
    if (it == series.end()) {
      series.push_back({pt.aggregator, {}});
      it = std::prev(series.end());
    }
    if (auto ln = pt.ln_regret()) it->xy.emplace_back(pt.q, *ln);
  }
  std::erase_if(series, [](const Series& s) { return s.xy.empty(); });

  double x0 = 0.0, x1 = 1.0, y0 = -1.0, y1 = 0.0;
  if (!series.empty()) {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    for (const Series& s : series) {
      for (auto [x, y] : s.xy) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
      }
    }
    if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
      "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  const double bx = kLeft, by = kTop + ph;
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + fixed(bx) + "\" y1=\"" + fixed(by) + "\" x2=\"" +
         fixed(bx + pw) + "\" y2=\"" + fixed(by) + "\"/>\n";
  out += "<line x1=\"" + fixed(bx) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" +
         fixed(bx) + "\" y2=\"" + fixed(by) + "\"/>\n";
  out += "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    out += "<text x=\"" + fixed(sx(xv)) + "\" y=\"" + fixed(by + 18) +
           "\" text-anchor=\"middle\">" + fixed(xv) + "</text>\n";
    out += "<text x=\"" + fixed(bx - 6) + "\" y=\"" + fixed(sy(yv) + 4) +
           "\" text-anchor=\"end\">" + fixed(yv) + "</text>\n";
  }
  out += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 15) +
         "\" text-anchor=\"middle\" font-size=\"14\">q</text>\n";
  out += "<text x=\"20\" y=\"" + fixed(kTop + ph / 2) +
         "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 " +
         fixed(kTop + ph / 2) + ")\">ln regret</text>\n</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* colour = kColours[i % kColours.size()];
    std::string pts;
    for (auto [x, y] : s.xy) {
      if (!pts.empty()) pts += ' ';
      pts += fixed(sx(x)) + "," + fixed(sy(y));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
           "\" stroke-width=\"2\" data-series=\"" + escape(s.name) +
           "\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 20.0 * (i + 1);
    out += "<text x=\"" + fixed(kWidth - kRight + 30) + "\" y=\"" + fixed(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + colour +
           "\">" + escape(s.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace robust_rating

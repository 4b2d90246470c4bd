// Copyright 2026 The IntMPC Authors
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

#include "intmpc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "intmpc/errors.hpp"

namespace intmpc {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 70;

const char* kColors[] = {"#4878d0", "#ee854a", "#6acc64", "#d65f5f",
                         "#956cb4", "#8c613c", "#dc7ec0", "#797979"};

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

struct Canvas {
  std::string body;
  double y_min = 0.0, y_max = 1.0;

  double px(double frac) const {
    return kMarginLeft + frac * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double v) const {
    const double f = (v - y_min) / (y_max - y_min);
    return kHeight - kMarginBottom - f * (kHeight - kMarginTop - kMarginBottom);
  }

  void fit(const std::vector<Series>& series) {
    y_min = 0.0;
    y_max = 1e-9;
    for (const auto& s : series) {
      for (double v : s.values) {
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
      }
    }
    y_max *= 1.08;
    if (y_min < 0.0) y_min *= 1.08;
  }

  void axes(const std::string& title) {
    body += fmt("<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='#333'/>\n",
                static_cast<double>(kMarginLeft), py(y_min),
                static_cast<double>(kWidth - kMarginRight), py(y_min));
    body += fmt("<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='#333'/>\n",
                static_cast<double>(kMarginLeft), py(y_min),
                static_cast<double>(kMarginLeft), static_cast<double>(kMarginTop));
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
      const double v = y_min + (y_max - y_min) * i / ticks;
      body += fmt("<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='#ccc'/>\n",
                  static_cast<double>(kMarginLeft), py(v),
                  static_cast<double>(kWidth - kMarginRight), py(v));
      char t[96];
      std::snprintf(t, sizeof(t),
                    "<text x='%d' y='%.1f' font-size='12' text-anchor='end' "
                    "fill='#333'>%.4g</text>\n",
                    kMarginLeft - 6, py(v) + 4, v);
      body += t;
    }
    char t[160];
    std::snprintf(t, sizeof(t),
                  "<text x='%d' y='%d' font-size='16' fill='#111'>%s</text>\n",
                  kMarginLeft, kMarginTop - 20, title.c_str());
    body += t;
  }

  void legend(const std::vector<Series>& series) {
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double x = kMarginLeft + 120.0 * static_cast<double>(s);
      char t[192];
      std::snprintf(t, sizeof(t),
                    "<rect x='%.1f' y='%d' width='10' height='10' fill='%s'/>"
                    "<text x='%.1f' y='%d' font-size='12' fill='#333'>%s</text>\n",
                    x, kHeight - 24, kColors[s % 8], x + 14, kHeight - 15,
                    series[s].name.c_str());
      body += t;
    }
  }

  void save(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write svg: " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << body << "</svg>\n";
  }
};

}  // namespace

void svg_bar_chart(const std::string& title, const std::vector<std::string>& categories,
                   const std::vector<Series>& series, const std::string& path) {
  Canvas c;
  c.fit(series);
  c.axes(title);

  const std::size_t ncat = categories.size();
  const std::size_t nser = std::max<std::size_t>(1, series.size());
  for (std::size_t i = 0; i < ncat; ++i) {
    const double g0 = static_cast<double>(i) / ncat;
    const double g1 = static_cast<double>(i + 1) / ncat;
    const double pad = 0.15 * (g1 - g0);
    const double bw = (g1 - g0 - 2 * pad) / static_cast<double>(nser);
    for (std::size_t s = 0; s < series.size(); ++s) {
      if (i >= series[s].values.size()) continue;
      const double v = series[s].values[i];
      const double x0 = c.px(g0 + pad + s * bw);
      const double x1 = c.px(g0 + pad + (s + 1) * bw);
      const double y0 = c.py(std::max(0.0, v));
      const double y1 = c.py(std::min(0.0, v));
      char t[192];
      std::snprintf(t, sizeof(t),
                    "<rect x='%.1f' y='%.1f' width='%.1f' height='%.1f' fill='%s'/>\n",
                    x0, y0, std::max(1.0, x1 - x0 - 1.0), std::max(0.5, y1 - y0),
                    kColors[s % 8]);
      c.body += t;
    }
    char t[160];
    std::snprintf(t, sizeof(t),
                  "<text x='%.1f' y='%d' font-size='12' text-anchor='middle' "
                  "fill='#333'>%s</text>\n",
                  c.px((g0 + g1) / 2), kHeight - kMarginBottom + 18,
                  categories[i].c_str());
    c.body += t;
  }
  c.legend(series);
  c.save(path);
}

void svg_line_chart(const std::string& title, const std::vector<double>& x,
                    const std::vector<Series>& series, const std::string& path) {
  Canvas c;
  c.fit(series);
  c.axes(title);

  double x_min = 0.0, x_max = 1.0;
  if (!x.empty()) {
    x_min = *std::min_element(x.begin(), x.end());
    x_max = *std::max_element(x.begin(), x.end());
    if (x_max == x_min) x_max = x_min + 1.0;
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::string pts;
    for (std::size_t i = 0; i < series[s].values.size() && i < x.size(); ++i) {
      pts += fmt("%.1f,%.1f ", c.px((x[i] - x_min) / (x_max - x_min)),
                 c.py(series[s].values[i]));
    }
    char t[128];
    std::snprintf(t, sizeof(t), "<polyline fill='none' stroke='%s' stroke-width='2' ",
                  kColors[s % 8]);
    c.body += t;
    c.body += "points='" + pts + "'/>\n";
  }
  // x tick labels at both ends
  if (!x.empty()) {
    char t[256];
    std::snprintf(t, sizeof(t),
                  "<text x='%.1f' y='%d' font-size='12' text-anchor='middle' "
                  "fill='#333'>%.4g</text>"
                  "<text x='%.1f' y='%d' font-size='12' text-anchor='middle' "
                  "fill='#333'>%.4g</text>\n",
                  c.px(0.0), kHeight - kMarginBottom + 18, x_min, c.px(1.0),
                  kHeight - kMarginBottom + 18, x_max);
    c.body += t;
  }
  c.legend(series);
  c.save(path);
}

}  // namespace intmpc

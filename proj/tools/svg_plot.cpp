#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "eposit/io_formats.hpp"

namespace eposit::plot {

namespace {

constexpr double kWidth = 900.0, kHeight = 520.0;
constexpr double kLeft = 80.0, kRight = 870.0, kTop = 60.0, kBottom = 450.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
      return;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

double map_x(double v, const Range& r) {
  return kLeft + (v - r.lo) / (r.hi - r.lo) * (kRight - kLeft);
}

double map_y(double v, const Range& r) {
  return kBottom - (v - r.lo) / (r.hi - r.lo) * (kBottom - kTop);
}

std::string header(const std::string& title) {
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
       "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
       num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) +
       "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
       title + "</text>\n";
  return s;
}

std::string axes(const Range& xr, const Range& yr, const std::string& x_label,
                 const std::string& y_label) {
  std::string s;
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
       num(kRight - kLeft) + "\" height=\"" + num(kBottom - kTop) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    const double px = map_x(fx, xr), py = map_y(fy, yr);
    s += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
         "\" y2=\"" + num(kBottom + 6) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 22) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         num(fx) + "</text>\n";
    s += "<line x1=\"" + num(kLeft - 6) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft - 10) + "\" y=\"" + num(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + num(fy) +
         "</text>\n";
  }
  s += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kBottom + 45) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + x_label +
       "</text>\n";
  s += "<text x=\"22\" y=\"" + num((kTop + kBottom) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
       "transform=\"rotate(-90 22 " +
       num((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";
  return s;
}

}  // namespace

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
  Range xr, yr;
  for (const Series& s : series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();

  std::string svg = header(title) + axes(xr, yr, x_label, y_label);
  double legend_y = kTop + 16.0;
  for (const Series& s : series) {
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) svg += ' ';
      svg += num(map_x(s.x[i], xr)) + ',' + num(map_y(s.y[i], yr));
    }
    svg += "\"/>\n";
    svg += "<line x1=\"" + num(kRight - 160) + "\" y1=\"" + num(legend_y) + "\" x2=\"" +
           num(kRight - 130) + "\" y2=\"" + num(legend_y) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kRight - 124) + "\" y=\"" + num(legend_y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
    legend_y += 18.0;
  }
  svg += "</svg>\n";
  atomic_write_text(path, svg);
}

void write_box_chart(const std::filesystem::path& path, const std::string& title,
                     const std::string& y_label, const std::vector<Box>& boxes) {
  Range yr;
  for (const Box& b : boxes) {
    yr.include(b.stats.whisker_lo);
    yr.include(b.stats.whisker_hi);
    yr.include(b.stats.mean);
  }
  yr.pad();
  Range xr{0.0, static_cast<double>(boxes.size())};

  std::string svg = header(title) + axes(xr, yr, "", y_label);
  const double slot = (kRight - kLeft) / static_cast<double>(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const BoxplotSummary& st = boxes[i].stats;
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double half = 0.28 * slot;
    const double yq1 = map_y(st.q1, yr), yq3 = map_y(st.q3, yr);
    const double ymed = map_y(st.median, yr);
    const double ylo = map_y(st.whisker_lo, yr), yhi = map_y(st.whisker_hi, yr);
    svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(ylo) + "\" x2=\"" + num(cx) +
           "\" y2=\"" + num(yq1) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(yq3) + "\" x2=\"" + num(cx) +
           "\" y2=\"" + num(yhi) + "\" stroke=\"black\"/>\n";
    for (double wy : {ylo, yhi})
      svg += "<line x1=\"" + num(cx - half * 0.6) + "\" y1=\"" + num(wy) + "\" x2=\"" +
             num(cx + half * 0.6) + "\" y2=\"" + num(wy) + "\" stroke=\"black\"/>\n";
    svg += "<rect x=\"" + num(cx - half) + "\" y=\"" + num(yq3) + "\" width=\"" +
           num(2 * half) + "\" height=\"" + num(yq1 - yq3) +
           "\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(cx - half) + "\" y1=\"" + num(ymed) + "\" x2=\"" +
           num(cx + half) + "\" y2=\"" + num(ymed) +
           "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    svg += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(map_y(st.mean, yr)) +
           "\" r=\"3\" fill=\"black\"/>\n";
    svg += "<text x=\"" + num(cx) + "\" y=\"" + num(kBottom + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           boxes[i].label + "</text>\n";
    if (st.outlier_count > 0)
      svg += "<text x=\"" + num(cx) + "\" y=\"" + num(kTop - 6) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
             std::to_string(st.outlier_count) + " outliers</text>\n";
  }
  svg += "</svg>\n";
  atomic_write_text(path, svg);
}

}  // namespace eposit::plot

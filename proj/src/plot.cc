#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "edgelearn/errors.h"
#include "edgelearn/harness.h"

namespace edgelearn {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 24;
constexpr double kTop = 48;
constexpr double kBottom = 56;

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// Powers of 10 when the range spans them, else powers of 2.
std::vector<double> ticks(double lo, double hi) {
  std::vector<double> out;
  for (double base : {10.0, 2.0}) {
    out.clear();
    const double first = std::floor(std::log(lo) / std::log(base));
    const double last = std::ceil(std::log(hi) / std::log(base));
    for (double e = first; e <= last; e += 1.0) {
      const double t = std::pow(base, e);
      if (t >= lo * (1 - 1e-9) && t <= hi * (1 + 1e-9)) out.push_back(t);
    }
    if (out.size() >= 2) return out;
  }
  return {lo, hi};
}

std::string label(double v) {
  if (v >= 1e5 || v < 1e-2) {
    std::ostringstream s;
    s.precision(2);
    s << v;
    return s.str();
  }
  return format_double(std::round(v * 100) / 100);
}

}  // namespace

std::string render_loglog_svg(const Table& table, std::string_view x, std::string_view y) {
  const ScalingFit fit = fit_scaling(table, x, y);
  const std::size_t cx = table.column(x);
  const std::size_t cy = table.column(y);
  const auto status = std::find(table.columns.begin(), table.columns.end(), "status");
  std::vector<std::pair<double, double>> points;
  for (const auto& row : table.rows) {
    if (status != table.columns.end() &&
        row[static_cast<std::size_t>(status - table.columns.begin())] != "ok") {
      continue;
    }
    points.emplace_back(std::stod(row[cx]), std::stod(row[cy]));
  }

  double x_lo = points.front().first, x_hi = x_lo;
  double y_lo = points.front().second, y_hi = y_lo;
  for (auto [px, py] : points) {
    x_lo = std::min(x_lo, px);
    x_hi = std::max(x_hi, px);
    y_lo = std::min(y_lo, py);
    y_hi = std::max(y_hi, py);
  }
  // Pad 8% of the log span (at least half a decade) on each side.
  auto pad = [](double& lo, double& hi) {
    const double span = std::max(std::log10(hi / lo), 0.5);
    lo /= std::pow(10.0, span * 0.08);
    hi *= std::pow(10.0, span * 0.08);
  };
  pad(x_lo, x_hi);
  pad(y_lo, y_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double v) {
    return kLeft + plot_w * (std::log(v) - std::log(x_lo)) / (std::log(x_hi) - std::log(x_lo));
  };
  auto sy = [&](double v) {
    return kTop + plot_h * (1.0 - (std::log(v) - std::log(y_lo)) / (std::log(y_hi) - std::log(y_lo)));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\"/></clipPath>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(y) << " vs " << escape(x) << ": slope " << fixed(fit.slope, 3) << ", r² "
      << fixed(fit.r2, 3) << "</text>\n";

  for (double t : ticks(x_lo, x_hi)) {
    const double px = sx(t);
    svg << "<line x1=\"" << fixed(px, 1) << "\" y1=\"" << kTop << "\" x2=\"" << fixed(px, 1)
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << fixed(px, 1) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << label(t) << "</text>\n";
  }
  for (double t : ticks(y_lo, y_hi)) {
    const double py = sy(t);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(py, 1) << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << fixed(py, 1) << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py + 4, 1)
        << "\" text-anchor=\"end\">" << label(t) << "</text>\n";
  }
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\">" << escape(x) << "</text>\n";
  svg << "<text transform=\"translate(18 " << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y) << "</text>\n";

  auto line_y = [&](double v) { return std::exp(fit.intercept) * std::pow(v, fit.slope); };
  svg << "<line x1=\"" << fixed(sx(x_lo), 1) << "\" y1=\"" << fixed(sy(line_y(x_lo)), 1)
      << "\" x2=\"" << fixed(sx(x_hi), 1) << "\" y2=\"" << fixed(sy(line_y(x_hi)), 1)
      << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" clip-path=\"url(#plot)\"/>\n";
  for (auto [px, py] : points) {
    svg << "<circle cx=\"" << fixed(sx(px), 1) << "\" cy=\"" << fixed(sy(py), 1)
        << "\" r=\"4\" fill=\"#2c6fbb\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace edgelearn

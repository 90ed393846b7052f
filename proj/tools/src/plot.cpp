#include "mlb_cli/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace mlb::cli {

namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 48.0;
constexpr double kGap = 80.0;

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round-number tick spacing covering [lo, hi] with about five intervals.
double tick_step(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double power = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * power >= raw) return m * power;
  }
  return 10.0 * power;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      const double w = std::max(std::abs(lo) * 0.1, 1e-3);
      lo -= w;
      hi += w;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

class Panel {
 public:
  Panel(double x0, Range t, Range y) : x0_(x0), t_(t), y_(y) {}

  [[nodiscard]] double px(double t) const { return x0_ + (t - t_.lo) / (t_.hi - t_.lo) * kPanelWidth; }
  [[nodiscard]] double py(double y) const {
    return kMarginTop + kPanelHeight - (y - y_.lo) / (y_.hi - y_.lo) * kPanelHeight;
  }

  void frame(std::string& svg, const std::string& title, const std::string& ylabel, const std::string& xlabel) const {
    svg += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#333"/>)"
                       "\n",
                       x0_, kMarginTop, kPanelWidth, kPanelHeight);
    svg += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="14">{}</text>)"
                       "\n",
                       x0_ + kPanelWidth / 2, kMarginTop - 12, escape(title));
    svg += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="12">{}</text>)"
                       "\n",
                       x0_ + kPanelWidth / 2, kMarginTop + kPanelHeight + 38, escape(xlabel));
    svg += fmt::format(
        R"svg(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="12" transform="rotate(-90 {:.2f} {:.2f})">{}</text>)svg"
        "\n",
        x0_ - 48, kMarginTop + kPanelHeight / 2, x0_ - 48, kMarginTop + kPanelHeight / 2, escape(ylabel));

    const double ty = tick_step(y_.lo, y_.hi);
    for (double v = std::ceil(y_.lo / ty) * ty; v <= y_.hi + 1e-12 * ty; v += ty) {
      const double y = py(v);
      svg += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#ddd"/>)"
                         "\n",
                         x0_, y, x0_ + kPanelWidth, y);
      svg += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="end" font-size="10">{:.4g}</text>)"
                         "\n",
                         x0_ - 4, y + 3, std::abs(v) < 1e-12 * ty ? 0.0 : v);
    }
    const double tt = tick_step(t_.lo, t_.hi);
    for (double v = std::ceil(t_.lo / tt) * tt; v <= t_.hi + 1e-12 * tt; v += tt) {
      svg += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="10">{:.4g}</text>)"
                         "\n",
                         px(v), kMarginTop + kPanelHeight + 16, v);
    }
  }

  void series(std::string& svg, const std::vector<double>& t, const std::vector<double>& y,
              const char* color) const {
    svg += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points=")", color);
    for (std::size_t k = 0; k < t.size(); ++k) svg += fmt::format("{:.2f},{:.2f} ", px(t[k]), py(y[k]));
    svg += "\"/>\n";
  }

  void reference(std::string& svg, double y, const std::string& label) const {
    svg += fmt::format(
        R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#000" stroke-dasharray="6,4"/>)"
        "\n",
        x0_, py(y), x0_ + kPanelWidth, py(y));
    svg += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="end" font-size="10">{}</text>)"
                       "\n",
                       x0_ + kPanelWidth - 4, py(y) - 4, escape(label));
  }

 private:
  double x0_;
  Range t_;
  Range y_;
};

}  // namespace

std::string relaxation_svg(const std::string& title, const std::vector<Sample>& samples,
                           const EquilibriumState& limit, const std::vector<std::string>& names) {
  const std::size_t n = samples.empty() ? 0 : samples.front().velocity.size();
  std::vector<double> t;
  std::vector<std::vector<double>> u(n), temp(n);
  Range tr, ur, vr;
  for (const auto& s : samples) {
    t.push_back(s.time);
    tr.add(s.time);
    for (std::size_t i = 0; i < n; ++i) {
      u[i].push_back(s.velocity[i]);
      temp[i].push_back(s.temperature[i]);
      ur.add(s.velocity[i]);
      vr.add(s.temperature[i]);
    }
  }
  const double u_inf = limit.velocity.empty() ? 0.0 : limit.velocity.front();
  ur.add(u_inf);
  vr.add(limit.temperature);
  if (!(tr.hi > tr.lo)) tr.hi = tr.lo + 1.0;
  ur.pad();
  vr.pad();

  const double width = kMarginLeft + 2 * kPanelWidth + kGap + 24;
  const double height = kMarginTop + kPanelHeight + kMarginBottom + 20 + 16 * static_cast<double>(n);
  std::string svg = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}" font-family="sans-serif">)"
      "\n",
      width, height, width, height);
  svg += fmt::format(R"(<rect width="100%" height="100%" fill="white"/>)"
                     "\n<title>{}</title>\n",
                     escape(title));

  const Panel left(kMarginLeft, tr, ur);
  const Panel right(kMarginLeft + kPanelWidth + kGap, tr, vr);
  left.frame(svg, "velocity", "u", "t");
  right.frame(svg, "temperature", "T", "t");
  left.reference(svg, u_inf, fmt::format("u_inf = {:.6g}", u_inf));
  right.reference(svg, limit.temperature, fmt::format("T_inf = {:.6g}", limit.temperature));
  for (std::size_t i = 0; i < n; ++i) {
    const char* color = kColors[i % kColors.size()];
    left.series(svg, t, u[i], color);
    right.series(svg, t, temp[i], color);
    const double y = kMarginTop + kPanelHeight + kMarginBottom + 12 + 16 * static_cast<double>(i);
    svg += fmt::format(
        R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="2"/><text x="{:.2f}" y="{:.2f}" font-size="11">{}</text>)"
        "\n",
        kMarginLeft, y, kMarginLeft + 24, y, color, kMarginLeft + 30, y + 4,
        escape(i < names.size() ? names[i] : fmt::format("species {}", i + 1)));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace mlb::cli

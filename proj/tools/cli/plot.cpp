#include "plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "hdsphere/error.hpp"

namespace hdsphere::cli {
namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 60;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto e = s.find(sep, pos);
    out.push_back(s.substr(pos, e == std::string_view::npos ? std::string_view::npos : e - pos));
    if (e == std::string_view::npos) break;
    pos = e + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Range {
  double lo, hi;
  double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range padded(const std::vector<double>& v) {
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

SweepCsv parse_sweep_csv(std::string_view text) {
  SweepCsv out;
  bool have_metric = false, have_header = false;
  int eps_col = -1, ln_col = -1, value_col = -1;
  std::size_t ncols = 0;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# metric=")) {
        const auto m = parse_metric(line.substr(9));
        if (!m) throw ConfigError("plot: unknown metric tag '" + std::string(line.substr(9)) + "'");
        out.metric = *m;
        have_metric = true;
      } else if (line.starts_with("# fit ")) {
        for (std::string_view kv : split(line.substr(6), ' ')) {
          const auto eq = kv.find('=');
          if (eq == std::string_view::npos) continue;
          const auto key = kv.substr(0, eq);
          const auto v = to_double(kv.substr(eq + 1));
          if (key == "slope") out.slope = v;
          if (key == "intercept") out.intercept = v;
        }
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "eps") eps_col = static_cast<int>(i);
        if (cells[i] == "ln_metric") ln_col = static_cast<int>(i);
        if (cells[i] == "metric") value_col = static_cast<int>(i);
      }
      if (eps_col < 0 || (ln_col < 0 && value_col < 0)) {
        throw ConfigError("plot: header row lacks eps/metric columns (line " + std::to_string(line_no) + ")");
      }
      ncols = cells.size();
      have_header = true;
      continue;
    }
    if (cells.size() != ncols) {
      throw ConfigError("plot: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(ncols));
    }
    const auto e = to_double(cells[eps_col]);
    std::optional<double> lnv;
    if (ln_col >= 0) {
      lnv = to_double(cells[ln_col]);
    } else if (const auto v = to_double(cells[value_col]); v && *v > 0.0) {
      lnv = std::log(*v);
    }
    if (!e || !lnv || !(*e > 0.0) || !std::isfinite(*lnv)) {
      throw ConfigError("plot: malformed data on line " + std::to_string(line_no));
    }
    out.eps.push_back(*e);
    out.ln_metric.push_back(*lnv);
  }
  if (!have_header || out.eps.empty()) throw ConfigError("plot: no data rows");
  if (!have_metric) throw ConfigError("plot: missing '# metric=' tag");
  return out;
}

std::string render_svg(const SweepCsv& data) {
  const bool power = is_power_metric(data.metric);
  const std::size_t n = data.eps.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = power ? std::log10(data.eps[i]) : 1.0 / std::sqrt(data.eps[i]);
    y[i] = power ? data.ln_metric[i] / std::log(10.0) : data.ln_metric[i];
  }

  // fitted line in plot coordinates: y = c0 + c1 x
  double c1 = 0.0, c0 = 0.0;
  bool have_fit = false;
  if (data.slope && data.intercept) {
    c1 = *data.slope;
    c0 = power ? *data.intercept / std::log(10.0) : *data.intercept;
    have_fit = true;
  } else if (n >= 2) {
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i] / n, my += y[i] / n;
    for (std::size_t i = 0; i < n; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
    if (sxx > 0) {
      c1 = sxy / sxx;
      c0 = my - c1 * mx;
      have_fit = true;
    }
  }

  const Range rx = padded(x), ry = padded(y);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const auto px = [&](double v) { return num(rx.map(v, x0, x1)); };
  const auto py = [&](double v) { return num(ry.map(v, y0, y1)); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
  s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(y0 - y1) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double vx = rx.lo + (rx.hi - rx.lo) * t / 4.0;
    const double vy = ry.lo + (ry.hi - ry.lo) * t / 4.0;
    s += "<line x1=\"" + px(vx) + "\" y1=\"" + num(y0) + "\" x2=\"" + px(vx) + "\" y2=\"" + num(y0 + 5) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + px(vx) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\">" + label(vx) + "</text>\n";
    s += "<line x1=\"" + num(x0 - 5) + "\" y1=\"" + py(vy) + "\" x2=\"" + num(x0) + "\" y2=\"" + py(vy) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(x0 - 8) + "\" y=\"" + py(vy) + "\" text-anchor=\"end\" dy=\"4\">" + label(vy) +
         "</text>\n";
  }

  const std::string metric(metric_name(data.metric));
  const std::string xlabel = power ? "log10(eps)" : "eps^(-1/2)";
  const std::string ylabel = power ? "log10(" + metric + ")" : "ln(" + metric + ")";
  s += "<text x=\"" + num(0.5 * (x0 + x1)) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">" + xlabel +
       "</text>\n";
  s += "<text x=\"20\" y=\"" + num(0.5 * (y0 + y1)) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
       num(0.5 * (y0 + y1)) + ")\">" + ylabel + "</text>\n";

  if (have_fit) {
    s += "<line x1=\"" + px(rx.lo) + "\" y1=\"" + py(c0 + c1 * rx.lo) + "\" x2=\"" + px(rx.hi) + "\" y2=\"" +
         py(c0 + c1 * rx.hi) + "\" stroke=\"#c03030\" stroke-width=\"1.5\" clip-path=\"url(#frame)\"/>\n";
    s += "<text x=\"" + num(x0 + 10) + "\" y=\"" + num(y1 + 20) + "\" fill=\"#c03030\">slope=" + label(c1) +
         "</text>\n";
  }
  s += "<clipPath id=\"frame\"><rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) +
       "\" height=\"" + num(y0 - y1) + "\"/></clipPath>\n";
  for (std::size_t i = 0; i < n; ++i) {
    s += "<circle cx=\"" + px(x[i]) + "\" cy=\"" + py(y[i]) + "\" r=\"3.5\" fill=\"#2050a0\"/>\n";
  }
  s += "<text x=\"" + num(0.5 * (x0 + x1)) + "\" y=\"24\" text-anchor=\"middle\">" + metric + " vs eps</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace hdsphere::cli

#include "cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unistd.h>

namespace qps::cli {

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[k % 6];
}

}  // namespace

std::string points_csv(const std::vector<TaggedPoint>& pts) {
  std::string s = "re,im,tag\n";
  for (const auto& p : pts) s += num(p.z.real()) + "," + num(p.z.imag()) + "," + p.tag + "\n";
  return s;
}

std::string columns_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t k = 0; k < header.size(); ++k) s += (k ? "," : "") + header[k];
  s += "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + num(r[k]);
    s += "\n";
  }
  return s;
}

std::string render_svg(const SvgFigure& fig) {
  constexpr double W = 640, H = 640, pad = 48;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto grow = [&](cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  };
  for (const auto& p : fig.points) grow(p.z);
  for (const auto& c : fig.curves)
    for (cplx z : c.pts) grow(z);
  for (cplx z : fig.markers) grow(z);
  if (fig.unit_circle) {
    grow({-1.0, -1.0});
    grow({1.0, 1.0});
  }
  if (x0 > x1) x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  // equal aspect unless this is a profile plot
  double sx = std::max(x1 - x0, 1e-12), sy = std::max(y1 - y0, 1e-12);
  if (!fig.log_log) sx = sy = std::max(sx, sy);
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  auto X = [&](double x) { return W / 2 + (x - cx) / sx * (W - 2 * pad); };
  auto Y = [&](double y) { return H / 2 - (y - cy) / sy * (H - 2 * pad); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(W) + "\" height=\"" + px(H) + "\" viewBox=\"0 0 " +
       px(W) + " " + px(H) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + px(pad) + "\" y=\"24\" font-family=\"monospace\" font-size=\"14\">" + fig.title + "</text>\n";
  // axes through the origin when visible, else along the frame
  const double ax = (0.0 >= cx - sx / 2 && 0.0 <= cx + sx / 2) ? X(0.0) : pad;
  const double ay = (0.0 >= cy - sy / 2 && 0.0 <= cy + sy / 2) ? Y(0.0) : H - pad;
  s += "<line x1=\"" + px(pad) + "\" y1=\"" + px(ay) + "\" x2=\"" + px(W - pad) + "\" y2=\"" + px(ay) +
       "\" stroke=\"#bbbbbb\"/>\n";
  s += "<line x1=\"" + px(ax) + "\" y1=\"" + px(pad) + "\" x2=\"" + px(ax) + "\" y2=\"" + px(H - pad) +
       "\" stroke=\"#bbbbbb\"/>\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "x [%.4g, %.4g]  y [%.4g, %.4g]%s", cx - sx / 2, cx + sx / 2, cy - sy / 2,
                cy + sy / 2, fig.log_log ? "  (log10)" : "");
  s += "<text x=\"" + px(pad) + "\" y=\"" + px(H - 16) + "\" font-family=\"monospace\" font-size=\"11\">" + buf +
       "</text>\n";
  if (fig.unit_circle) {
    const double r = (X(1.0) - X(0.0));
    s += "<circle cx=\"" + px(X(0.0)) + "\" cy=\"" + px(Y(0.0)) + "\" r=\"" + px(r) +
         "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
  }
  for (const auto& c : fig.curves) {
    if (c.pts.size() < 2) continue;
    s += "<polyline fill=\"none\" stroke-width=\"0.8\" stroke=\"" + c.color + "\" points=\"";
    for (std::size_t k = 0; k < c.pts.size(); ++k) {
      if (k) s += " ";
      s += px(X(c.pts[k].real())) + "," + px(Y(c.pts[k].imag()));
    }
    s += "\"/>\n";
  }
  std::map<std::string, std::size_t> tag_color;
  for (const auto& p : fig.points) {
    auto it = tag_color.emplace(p.tag, tag_color.size()).first;
    s += "<circle cx=\"" + px(X(p.z.real())) + "\" cy=\"" + px(Y(p.z.imag())) + "\" r=\"1.6\" fill=\"" +
         palette(it->second) + "\"/>\n";
  }
  for (cplx m : fig.markers) {
    const double mx = X(m.real()), my = Y(m.imag());
    s += "<path d=\"M" + px(mx - 6) + "," + px(my - 6) + " L" + px(mx + 6) + "," + px(my + 6) + " M" + px(mx - 6) +
         "," + px(my + 6) + " L" + px(mx + 6) + "," + px(my - 6) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  double ly = 44;
  for (const auto& [tag, k] : tag_color) {
    s += "<circle cx=\"" + px(W - 150) + "\" cy=\"" + px(ly - 4) + "\" r=\"4\" fill=\"" + palette(k) + "\"/>\n";
    s += "<text x=\"" + px(W - 140) + "\" y=\"" + px(ly) + "\" font-family=\"monospace\" font-size=\"12\">" + tag +
         "</text>\n";
    ly += 16;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace qps::cli

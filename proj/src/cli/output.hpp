#pragma once

#include <string>
#include <vector>

#include "qps/numerics.hpp"

namespace qps::cli {

// Writes to a sibling temp file, then renames over the target.
void write_atomic(const std::string& path, const std::string& content);

struct TaggedPoint {
  cplx z;
  std::string tag;
};

// "re,im,tag" with %.17g numbers
std::string points_csv(const std::vector<TaggedPoint>& pts);
std::string columns_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

struct Curve {
  std::vector<cplx> pts;
  std::string color;
};

struct SvgFigure {
  std::string title;
  std::vector<TaggedPoint> points;
  std::vector<Curve> curves;
  std::vector<cplx> markers;  // drawn as crosses
  bool unit_circle = false;
  bool log_log = false;       // for profile plots: x, y taken as log10 values
};

std::string render_svg(const SvgFigure& fig);

}  // namespace qps::cli

#include <kgon/smoothing.hpp>

#include <string>

#include <kgon/error.hpp>

namespace kgon {

namespace {

std::vector<Point> moving_average(const std::vector<Point>& in, int window) {
  const std::size_t n = in.size();
  const std::size_t half = std::size_t(window / 2);
  std::vector<Point> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point sum = in[i];
    for (std::size_t d = 1; d <= half; ++d) {
      sum += in[(i + d) % n];
      sum += in[(i + n - d % n) % n];
    }
    out[i] = sum / double(window);
  }
  return out;
}

}  // namespace

Contour smooth(const Contour& c, const SmootherConfig& cfg) {
  if (cfg.window < 3 || cfg.window % 2 == 0 || cfg.passes < 0) {
    throw Error(ErrorCode::BadConfig, "smoothing window must be odd and >= 3, passes >= 0");
  }
  if (std::size_t(cfg.window) >= c.size()) {
    throw Error(ErrorCode::WindowTooLarge, "window " + std::to_string(cfg.window) +
                                               " >= K = " + std::to_string(c.size()));
  }
  if (cfg.passes == 0) return c;

  std::vector<Point> pts = c.vertices();
  for (int pass = 0; pass < cfg.passes; ++pass) pts = moving_average(pts, cfg.window);
  return Contour::ingest(std::move(pts));
}

}  // namespace kgon

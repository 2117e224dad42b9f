#include "sflab/render.hpp"

#include <cmath>
#include <ostream>

#include "sflab/errors.hpp"
#include "sflab/parallel.hpp"

namespace sflab {

std::string to_string(Palette p) {
  return p == Palette::grayscale ? "grayscale" : "log-iteration";
}

Palette parse_palette(const std::string& s) {
  if (s == "grayscale") return Palette::grayscale;
  if (s == "log-iteration") return Palette::log_iteration;
  throw PreconditionError("unknown palette '" + s + "'");
}

void RenderConfig::validate() const {
  if (!(x0 < x1) || !(y0 < y1)) throw PreconditionError("render window must satisfy x0 < x1 and y0 < y1");
  if (width < 1 || height < 1) throw PreconditionError("render resolution must be positive");
  if (max_iter < 1) throw PreconditionError("max_iter must be >= 1");
  if (!(escape_radius > 0)) throw PreconditionError("escape radius must be positive");
}

std::uint8_t escape_shade(int n, int max_iter, Palette palette) {
  double t = 0.0;
  if (palette == Palette::grayscale)
    t = static_cast<double>(n) / max_iter;
  else
    t = std::log1p(static_cast<double>(n)) / std::log1p(static_cast<double>(max_iter));
  return static_cast<std::uint8_t>(255 - static_cast<int>(std::floor(254.0 * t)));
}

Image render_escape(const SFFunction& f, const RenderConfig& cfg) {
  cfg.validate();
  Image img;
  img.width = cfg.width;
  img.height = cfg.height;
  img.pixels.assign(static_cast<std::size_t>(cfg.width) * static_cast<std::size_t>(cfg.height), 0);
  const double dx = (cfg.x1 - cfg.x0) / cfg.width;
  const double dy = (cfg.y1 - cfg.y0) / cfg.height;

  detail::parallel_for(static_cast<std::size_t>(cfg.height), [&](std::size_t row) {
    const double y = cfg.y1 - (static_cast<double>(row) + 0.5) * dy;
    for (int col = 0; col < cfg.width; ++col) {
      cplx z(cfg.x0 + (col + 0.5) * dx, y);
      int escaped_at = -1;
      for (int n = 0; n <= cfg.max_iter; ++n) {
        if (!(std::abs(z) <= cfg.escape_radius)) {
          escaped_at = n;
          break;
        }
        if (n == cfg.max_iter) break;
        try {
          z = f.evaluate(z);
        } catch (const NumericalError&) {
          escaped_at = n + 1 <= cfg.max_iter ? n + 1 : cfg.max_iter;
          break;
        }
      }
      if (escaped_at >= 0)
        img.pixels[row * static_cast<std::size_t>(cfg.width) + static_cast<std::size_t>(col)] =
            escape_shade(escaped_at, cfg.max_iter, cfg.palette);
    }
  });
  return img;
}

void write_pgm(std::ostream& os, const Image& img) {
  os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
}

}  // namespace sflab

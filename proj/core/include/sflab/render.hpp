#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sflab/sf_function.hpp"

namespace sflab {

enum class Palette { grayscale, log_iteration };

std::string to_string(Palette p);
Palette parse_palette(const std::string& s);

struct RenderConfig {
  double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
  int width = 256;
  int height = 256;
  int max_iter = 100;
  double escape_radius = 1e3;
  Palette palette = Palette::grayscale;

  /// Throws PreconditionError unless x0 < x1, y0 < y1, width, height, max_iter >= 1.
  void validate() const;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at y1
};

/// Shade of an orbit escaping at index n (0 <= n <= max_iter); always >= 1
/// and non-increasing in n.
std::uint8_t escape_shade(int n, int max_iter, Palette palette);

/// Escape-time image sampled at pixel centres; orbits that stay within the
/// escape radius for max_iter steps are black.
Image render_escape(const SFFunction& f, const RenderConfig& cfg);

/// Binary PGM (P5, maxval 255).
void write_pgm(std::ostream& os, const Image& img);

}  // namespace sflab

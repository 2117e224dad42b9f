#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <sflab/errors.hpp>
#include <sflab/render.hpp>

#include "oracles.hpp"

using namespace sflab;

namespace {

RenderConfig golden_config(int w, int h) {
  RenderConfig c;
  c.x0 = -2, c.x1 = 2, c.y0 = -2, c.y1 = 2;
  c.width = w;
  c.height = h;
  c.max_iter = 100;
  return c;
}

}  // namespace

TEST_CASE("shade is monotone and never black for escapes") {
  for (const Palette p : {Palette::grayscale, Palette::log_iteration}) {
    int prev = 256;
    for (int n = 0; n <= 100; ++n) {
      const int s = escape_shade(n, 100, p);
      CHECK(s >= 1);
      CHECK(s <= prev);
      prev = s;
    }
    CHECK(escape_shade(0, 100, p) == 255);
  }
}

TEST_CASE("golden quadratic: Siegel region is black") {
  const SFFunction q = oracle::make_quadratic(oracle::golden_lambda());
  const Image img = render_escape(q, golden_config(64, 64));
  REQUIRE(img.pixels.size() == 64 * 64);
  for (int r = 28; r < 36; ++r)
    for (int c = 28; c < 36; ++c) CHECK(img.pixels[static_cast<std::size_t>(r * 64 + c)] == 0);
  CHECK(std::count(img.pixels.begin(), img.pixels.end(), 0) < 64 * 64);
}

TEST_CASE("pixels match a direct escape-time computation") {
  const cplx lambda = oracle::golden_lambda();
  const RenderConfig cfg = golden_config(16, 12);
  const Image img = render_escape(oracle::make_quadratic(lambda), cfg);
  for (int r = 0; r < 12; ++r)
    for (int c = 0; c < 16; ++c) {
      cplx z(-2 + (c + 0.5) * 4.0 / 16, 2 - (r + 0.5) * 4.0 / 12);
      int esc = -1;
      for (int n = 0; n <= 100; ++n) {
        if (std::abs(z) > 1e3) {
          esc = n;
          break;
        }
        z = oracle::quadratic(lambda, z);
      }
      const int want = esc < 0 ? 0 : escape_shade(esc, 100, Palette::grayscale);
      CHECK(img.pixels[static_cast<std::size_t>(r * 16 + c)] == want);
    }
}

TEST_CASE("escape region renders without black pixels") {
  RenderConfig cfg = golden_config(16, 16);
  cfg.x0 = 1990, cfg.x1 = 2010, cfg.y0 = -10, cfg.y1 = 10;
  for (const SFFunction& f : {oracle::make_quadratic(oracle::golden_lambda()), oracle::make_geyer(oracle::golden_lambda())}) {
    const Image img = render_escape(f, cfg);
    CHECK(std::count(img.pixels.begin(), img.pixels.end(), 0) == 0);
  }
  // Overflowing orbits count as escapes: z e^z on a thin strip around [3, 6].
  cfg.x0 = 3, cfg.x1 = 6, cfg.y0 = -1e-12, cfg.y1 = 1e-12;
  cfg.escape_radius = 1e300;
  const Image img = render_escape(oracle::make_geyer(1.0), cfg);
  CHECK(std::count(img.pixels.begin(), img.pixels.end(), 0) == 0);
}

TEST_CASE("rendering is deterministic and PGM is well formed") {
  const SFFunction g = oracle::make_geyer(oracle::golden_lambda());
  const Image a = render_escape(g, golden_config(48, 32));
  const Image b = render_escape(g, golden_config(48, 32));
  CHECK(a.pixels == b.pixels);
  std::ostringstream os;
  write_pgm(os, a);
  const std::string s = os.str();
  const std::string header = "P5\n48 32\n255\n";
  CHECK(s.substr(0, header.size()) == header);
  CHECK(s.size() == header.size() + 48 * 32);
}

TEST_CASE("render config validation") {
  RenderConfig c = golden_config(4, 4);
  c.x1 = c.x0;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = golden_config(0, 4);
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  CHECK(parse_palette("log-iteration") == Palette::log_iteration);
  CHECK_THROWS_AS(parse_palette("rainbow"), PreconditionError);
}

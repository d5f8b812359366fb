#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmrf {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const noexcept { return pixels.size(); }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

using Rgb = std::array<std::uint8_t, 3>;

struct ColorImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;  // row-major

  ColorImage() = default;
  ColorImage(int w, int h, Rgb fill = {0, 0, 0});

  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;
};

// Binary PGM (P5) and PPM (P6) with maxval 255. Readers accept '#' comments
// in the header; writers emit a single space between header fields.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::string& path);
void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm_file(const std::string& path, const GrayImage& image);

ColorImage read_ppm(std::istream& in);
ColorImage read_ppm_file(const std::string& path);
void write_ppm(std::ostream& out, const ColorImage& image);
void write_ppm_file(const std::string& path, const ColorImage& image);

}  // namespace cmrf

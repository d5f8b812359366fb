#include "cmrf/image.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include "cmrf/error.hpp"

namespace cmrf {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
  require(w >= 1 && h >= 1, "image dimensions must be at least 1");
}

ColorImage::ColorImage(int w, int h, Rgb fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
  require(w >= 1 && h >= 1, "image dimensions must be at least 1");
}

namespace {

int header_int(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int v = -1;
  if (!(in >> v)) fail(ErrorKind::Parse, "malformed PNM header");
  return v;
}

struct PnmHeader {
  int width;
  int height;
};

PnmHeader read_header(std::istream& in, const char* magic) {
  char m[2] = {0, 0};
  in.read(m, 2);
  if (!in || m[0] != magic[0] || m[1] != magic[1]) {
    fail(ErrorKind::Parse, std::string("expected binary ") + magic + " image");
  }
  const int w = header_int(in);
  const int h = header_int(in);
  const int maxval = header_int(in);
  if (w < 1 || h < 1) fail(ErrorKind::Parse, "PNM dimensions must be positive");
  if (maxval != 255) fail(ErrorKind::Parse, "only maxval 255 is supported");
  if (!std::isspace(in.get())) fail(ErrorKind::Parse, "malformed PNM header");
  return {w, h};
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  const auto [w, h] = read_header(in, "P5");
  GrayImage img(w, h);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!in) fail(ErrorKind::Parse, "truncated PGM pixel data");
  return img;
}

GrayImage read_pgm_file(const std::string& path) {
  auto in = open_in(path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm_file(const std::string& path, const GrayImage& image) {
  auto out = open_out(path);
  write_pgm(out, image);
  if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

ColorImage read_ppm(std::istream& in) {
  const auto [w, h] = read_header(in, "P6");
  ColorImage img(w, h);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size() * 3));
  if (!in) fail(ErrorKind::Parse, "truncated PPM pixel data");
  return img;
}

ColorImage read_ppm_file(const std::string& path) {
  auto in = open_in(path);
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const ColorImage& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size() * 3));
}

void write_ppm_file(const std::string& path, const ColorImage& image) {
  auto out = open_out(path);
  write_ppm(out, image);
  if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace cmrf

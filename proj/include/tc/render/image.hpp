#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tc {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// 8-bit RGB raster, origin top-left.
class Image {
 public:
  Image(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);  // ignores pixels outside the image
  void fill_rect(int x0, int y0, int x1, int y1, Rgb c);  // half-open
  void line(int x0, int y0, int x1, int y1, Rgb c);
  void disc(int cx, int cy, int radius, Rgb c);
  void ring(int cx, int cy, int radius, Rgb c);

  // Binary PPM (P6).
  std::string to_ppm() const;
  void write_ppm(const std::filesystem::path& path) const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

// Binary PGM (P5) of a row-major grayscale buffer.
std::string to_pgm(int width, int height, std::span<const std::uint8_t> gray);
void write_pgm(const std::filesystem::path& path, int width, int height, std::span<const std::uint8_t> gray);

void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace tc

#include "ridgefield/image.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

namespace ridgefield {

namespace {

int read_pnm_token(std::istream& in) {
  // Skips whitespace and '#' comments, then parses one unsigned integer.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) throw std::runtime_error("malformed PGM header");
  long v = 0;
  while (c != EOF && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    if (v > 1 << 30) throw std::runtime_error("malformed PGM header");
    c = in.get();
  }
  return static_cast<int>(v);
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[2];
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    throw std::runtime_error("unsupported format (expected P5 PGM): " + path.string());
  int width = read_pnm_token(in);
  int height = read_pnm_token(in);
  int maxval = read_pnm_token(in);
  if (width <= 0 || height <= 0) throw std::runtime_error("zero-dimension image");
  if (maxval != 255) throw std::runtime_error("unsupported bit depth (maxval must be 255)");

  std::vector<unsigned char> raw(static_cast<size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw std::runtime_error("truncated PGM data: " + path.string());

  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i] / 255.0;
  return img;
}

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

GrayImage load_png(const std::filesystem::path& path) {
  PngReadCloser ctx;
  ctx.fp = std::fopen(path.c_str(), "rb");
  if (!ctx.fp) throw std::runtime_error("cannot open " + path.string());

  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw std::runtime_error("libpng init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("libpng init failed");
  if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("malformed PNG: " + path.string());

  png_init_io(ctx.png, ctx.fp);
  png_read_info(ctx.png, ctx.info);

  const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color_type = png_get_color_type(ctx.png, ctx.info);
  if (bit_depth == 16) throw std::runtime_error("unsupported bit depth");
  if (color_type != PNG_COLOR_TYPE_GRAY)
    throw std::runtime_error("unsupported format (grayscale PNG required)");
  if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  const int width = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
  const int height = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
  if (width <= 0 || height <= 0) throw std::runtime_error("zero-dimension image");

  std::vector<unsigned char> raw(static_cast<size_t>(width) * height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = raw.data() + static_cast<size_t>(y) * width;
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);

  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i] / 255.0;
  return img;
}

bool has_png_signature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), 8);
  return in && png_sig_cmp(sig, 0, 8) == 0;
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw std::runtime_error("no such file: " + path.string());
  if (has_png_signature(path)) return load_png(path);
  return load_pgm(path);
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0) throw std::runtime_error("zero-dimension image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> raw(img.pixels.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    double v = img.pixels[i];
    v = v < 0 ? 0 : (v > 1 ? 1 : v);
    raw[i] = static_cast<unsigned char>(v * 255.0 + 0.5);
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

BlockMask load_mask(const std::filesystem::path& path, int cols, int rows) {
  GrayImage img = load_image(path);
  BlockMask mask;
  mask.cols = cols;
  mask.rows = rows;
  mask.valid.assign(static_cast<size_t>(cols) * rows, 0);

  if (img.width == cols && img.height == rows) {
    for (size_t i = 0; i < mask.valid.size(); ++i)
      mask.valid[i] = img.pixels[i] * 255.0 > 127.0 ? 1 : 0;
  } else if (img.width % cols == 0 && img.height % rows == 0 &&
             img.width / cols == img.height / rows) {
    // Pixel-resolution mask: majority vote per block.
    const int w = img.width / cols;
    for (int by = 0; by < rows; ++by) {
      for (int bx = 0; bx < cols; ++bx) {
        int hits = 0;
        for (int y = by * w; y < (by + 1) * w; ++y)
          for (int x = bx * w; x < (bx + 1) * w; ++x)
            if (img.at(x, y) * 255.0 > 127.0) ++hits;
        mask.valid[static_cast<size_t>(by) * cols + bx] = 2 * hits > w * w ? 1 : 0;
      }
    }
  } else {
    throw std::runtime_error("mask dimensions match neither the block grid nor the image");
  }

  bool any = false;
  for (uint8_t v : mask.valid) any = any || v;
  if (!any) throw std::runtime_error("empty mask");
  return mask;
}

std::pair<int, int> block_grid(const GrayImage& img, int w) {
  if (w < 4) throw std::runtime_error("block size too small (minimum 4)");
  if (w > img.width || w > img.height)
    throw std::runtime_error("block size exceeds image dimensions");
  return {img.width / w, img.height / w};
}

}  // namespace ridgefield

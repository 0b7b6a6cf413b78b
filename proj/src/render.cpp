#include "ridgefield/render.hpp"

#include <png.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ridgefield {

namespace {

std::string base64_encode(const std::vector<unsigned char>& data) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 2 < data.size(); i += 3) {
    const unsigned v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out += alphabet[(v >> 18) & 63];
    out += alphabet[(v >> 12) & 63];
    out += alphabet[(v >> 6) & 63];
    out += alphabet[v & 63];
  }
  if (i + 1 == data.size()) {
    const unsigned v = data[i] << 16;
    out += alphabet[(v >> 18) & 63];
    out += alphabet[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == data.size()) {
    const unsigned v = (data[i] << 16) | (data[i + 1] << 8);
    out += alphabet[(v >> 18) & 63];
    out += alphabet[(v >> 12) & 63];
    out += alphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

void png_append(png_structp png, png_bytep data, png_size_t length) {
  auto* buf = static_cast<std::vector<unsigned char>*>(png_get_io_ptr(png));
  buf->insert(buf->end(), data, data + length);
}

std::vector<unsigned char> encode_png(const GrayImage& img) {
  std::vector<unsigned char> buf;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("PNG encoding failed");
  }
  png_set_write_fn(png, &buf, png_append, nullptr);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<unsigned char> row(img.width);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double v = img.at(x, y);
      v = v < 0 ? 0 : (v > 1 ? 1 : v);
      row[x] = static_cast<unsigned char>(v * 255.0 + 0.5);
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return buf;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

}  // namespace

std::string render_svg(const OrientationField& field, const RenderStyle& style,
                       const GrayImage* underlay) {
  if (style.stroke_length <= 0 || style.stroke_length > 1)
    throw std::runtime_error("stroke length must lie in (0, 1]");
  const double w = field.w;
  const double width = field.cols * w;
  const double height = field.rows * w;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
      << "xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" "
      << "width=\"" << width << "\" height=\"" << height << "\" "
      << "viewBox=\"0 0 " << width << " " << height << "\">\n";
  if (style.overlay && underlay) {
    svg << "<image x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" xlink:href=\"data:image/png;base64," << base64_encode(encode_png(*underlay))
        << "\"/>\n";
  } else {
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
  }

  const double half = 0.5 * style.stroke_length * w;
  svg << "<g stroke=\"#c02020\" stroke-width=\"" << style.stroke_width
      << "\" stroke-linecap=\"round\">\n";
  for (int by = 0; by < field.rows; ++by) {
    for (int bx = 0; bx < field.cols; ++bx) {
      if (!field.is_valid(bx, by)) continue;
      const double cx = (bx + 0.5) * w;
      const double cy = (by + 0.5) * w;
      const double t = field.angle(bx, by);
      // Angles are measured with y up; SVG y grows downward.
      const double dx = half * std::cos(t);
      const double dy = -half * std::sin(t);
      svg << "<line x1=\"" << fmt(cx - dx) << "\" y1=\"" << fmt(cy - dy) << "\" x2=\""
          << fmt(cx + dx) << "\" y2=\"" << fmt(cy + dy) << "\"/>\n";
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace ridgefield

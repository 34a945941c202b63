#include "flowclust/imagegraph.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "flowclust/errors.hpp"

namespace flowclust {

ImageGraph image_to_graph(const Image& image, const ImageGraphParams& params) {
  if (!(params.r > 0.0)) throw std::invalid_argument("r must be positive");
  if (!(params.sigma_d2 > 0.0) || !(params.sigma_i2 > 0.0)) throw std::invalid_argument("variances must be positive");
  if (image.rows == 0 || image.cols == 0 || image.channels == 0) throw InputError("empty image");
  if (image.data.size() != image.rows * image.cols * image.channels) throw InputError("image data size mismatch");

  ImageGraph out;
  out.map.rows = image.rows;
  out.map.cols = image.cols;
  out.map.params = params;
  const std::size_t n = image.rows * image.cols;
  if (n == 1) out.warnings.push_back("single-pixel image gives a graph without edges");

  // offsets (dr, dc) with dr > 0 or (dr == 0 and dc > 0) inside the gate, so each pair appears once
  const auto reach = static_cast<long>(std::floor(std::sqrt(params.r)));
  std::vector<std::pair<long, long>> offsets;
  for (long dr = 0; dr <= reach; ++dr) {
    for (long dc = -reach; dc <= reach; ++dc) {
      if (dr == 0 && dc <= 0) continue;
      if (static_cast<double>(dr * dr + dc * dc) <= params.r) offsets.emplace_back(dr, dc);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < image.rows; ++r) {
    for (std::size_t c = 0; c < image.cols; ++c) {
      for (const auto& [dr, dc] : offsets) {
        long r2 = static_cast<long>(r) + dr;
        long c2 = static_cast<long>(c) + dc;
        if (r2 >= static_cast<long>(image.rows) || c2 < 0 || c2 >= static_cast<long>(image.cols)) continue;
        double color = 0.0;
        for (std::size_t ch = 0; ch < image.channels; ++ch) {
          double diff = image.at(r, c, ch) - image.at(static_cast<std::size_t>(r2), static_cast<std::size_t>(c2), ch);
          color += diff * diff;
        }
        double spatial = static_cast<double>(dr * dr + dc * dc);
        double w = std::exp(-spatial / params.sigma_d2 - color / params.sigma_i2);
        edges.push_back({out.map.node(r, c), out.map.node(static_cast<std::size_t>(r2), static_cast<std::size_t>(c2)), w});
      }
    }
  }
  out.graph = WeightedGraph::from_edges(n, edges);
  return out;
}

namespace {

std::string next_token(std::istream& in) {
  std::string tok;
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

std::size_t header_number(std::istream& in, const char* what) {
  std::string tok = next_token(in);
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (tok.empty() || used != tok.size()) throw InputError(std::string("bad PNM header field: ") + what);
  return value;
}

}  // namespace

Image read_pnm(std::istream& in) {
  std::string magic = next_token(in);
  bool ascii = magic == "P2" || magic == "P3";
  bool color = magic == "P3" || magic == "P6";
  if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6") {
    throw InputError("unsupported image format (expected PGM/PPM)");
  }
  Image img;
  img.cols = header_number(in, "width");
  img.rows = header_number(in, "height");
  std::size_t maxval = header_number(in, "maxval");
  if (img.rows == 0 || img.cols == 0 || maxval == 0 || maxval > 65535) throw InputError("bad PNM dimensions");
  img.channels = color ? 3 : 1;
  const std::size_t count = img.rows * img.cols * img.channels;
  img.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t v = 0;
    if (ascii) {
      v = header_number(in, "pixel");
    } else if (maxval < 256) {
      int b = in.get();
      if (b == EOF) throw InputError("truncated PNM data");
      v = static_cast<std::size_t>(b);
    } else {
      int hi = in.get(), lo = in.get();
      if (lo == EOF) throw InputError("truncated PNM data");
      v = static_cast<std::size_t>(hi) * 256 + static_cast<std::size_t>(lo);
    }
    if (v > maxval) throw InputError("PNM sample exceeds maxval");
    img.data[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return img;
}

Image read_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open image '" + path + "'");
  return read_pnm(in);
}

void write_pixel_map(std::ostream& out, const PixelGraphMap& map) {
  for (std::size_t r = 0; r < map.rows; ++r) {
    for (std::size_t c = 0; c < map.cols; ++c) out << map.node(r, c) << ' ' << r << ' ' << c << '\n';
  }
}

}  // namespace flowclust

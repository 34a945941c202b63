#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flowclust/graph.hpp"

namespace flowclust {

// rows x cols x channels, row-major, values in [0, 1]
struct Image {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t channels = 1;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c, std::size_t ch) const { return data[(r * cols + c) * channels + ch]; }
  double& at(std::size_t r, std::size_t c, std::size_t ch) { return data[(r * cols + c) * channels + ch]; }
};

struct ImageGraphParams {
  // pixel pairs with squared spatial distance <= r are joined
  double r = 0.0;
  double sigma_d2 = 0.0;
  double sigma_i2 = 0.0;
};

struct PixelGraphMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ImageGraphParams params;

  NodeId node(std::size_t row, std::size_t col) const { return static_cast<NodeId>(row * cols + col); }
  std::size_t row(NodeId v) const { return v / cols; }
  std::size_t col(NodeId v) const { return v % cols; }
};

struct ImageGraph {
  WeightedGraph graph;
  PixelGraphMap map;
  std::vector<std::string> warnings;
};

// w_ij = exp(-|p_i - p_j|^2 / sigma_d2 - |c_i - c_j|^2 / sigma_i2) for |p_i - p_j|^2 <= r.
ImageGraph image_to_graph(const Image& image, const ImageGraphParams& params);

// Binary or ASCII PGM (P2/P5) and PPM (P3/P6), 8 or 16 bit.
Image read_pnm(std::istream& in);
Image read_pnm_file(const std::string& path);

// "nodeid row col" lines
void write_pixel_map(std::ostream& out, const PixelGraphMap& map);

}  // namespace flowclust

#pragma once

#include <string>

#include "flowclust/imagegraph.hpp"

namespace flowclust::cli {

bool png_supported();
// Gray or RGB, 8-bit values scaled to [0, 1]; alpha is dropped.
Image read_png_file(const std::string& path);

}  // namespace flowclust::cli

#include "png_input.hpp"

#include "flowclust/errors.hpp"

#ifdef FLOWCLUST_HAVE_PNG
#include <png.h>

#include <cstring>
#endif

namespace flowclust::cli {

#ifdef FLOWCLUST_HAVE_PNG

bool png_supported() { return true; }

Image read_png_file(const std::string& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw InputError("cannot read PNG '" + path + "': " + png.message);
  }
  bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  Image im;
  im.rows = png.height;
  im.cols = png.width;
  im.channels = color ? 3 : 1;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = png.message;
    png_image_free(&png);
    throw InputError("cannot decode PNG '" + path + "': " + msg);
  }
  im.data.resize(buffer.size());
  for (std::size_t i = 0; i < buffer.size(); ++i) im.data[i] = buffer[i] / 255.0;
  return im;
}

#else

bool png_supported() { return false; }

Image read_png_file(const std::string& path) {
  throw InputError("cannot read '" + path + "': built without PNG support, convert to PGM/PPM");
}

#endif

}  // namespace flowclust::cli

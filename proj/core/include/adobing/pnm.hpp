#pragma once

#include <string>

#include "adobing/image.hpp"

namespace adobing {

// Minimal PNM codec: P2/P5 graymaps and P3/P6 pixmaps, maxval <= 255.

GrayImage read_pgm(const std::string& path);
RgbImage read_ppm(const std::string& path);

// Reads either format; pixmaps are converted through to_grayscale.
GrayImage load_gray(const std::string& path);

void write_pgm(const std::string& path, const GrayImage& img);
void write_pgm(const std::string& path, const NormedGradientMap& map);
void write_ppm(const std::string& path, const RgbImage& img);

}  // namespace adobing

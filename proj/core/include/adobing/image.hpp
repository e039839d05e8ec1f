#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace adobing {

// Axis-aligned rectangle in pixel coordinates, (x,y) = top-left corner.
struct BBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool valid() const { return w > 0 && h > 0; }
    int right() const { return x + w; }
    int bottom() const { return y + h; }
    long long area() const { return valid() ? 1LL * w * h : 0LL; }
    double center_x() const { return x + w / 2.0; }
    double center_y() const { return y + h / 2.0; }

    bool operator==(const BBox&) const = default;
};

BBox intersect(const BBox& a, const BBox& b);

// Intersection over union by area; degenerate intersection yields 0.
double iou(const BBox& a, const BBox& b);

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int px, int py) const { return pixels[static_cast<std::size_t>(py) * width + px]; }
    std::uint8_t& at(int px, int py) { return pixels[static_cast<std::size_t>(py) * width + px]; }
    bool contains(const BBox& box) const {
        return box.valid() && box.x >= 0 && box.y >= 0 && box.right() <= width && box.bottom() <= height;
    }
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, interleaved r,g,b

    RgbImage() = default;
    RgbImage(int w, int h);

    std::uint8_t red(int px, int py) const { return pixels[3 * (static_cast<std::size_t>(py) * width + px)]; }
    std::uint8_t green(int px, int py) const { return pixels[3 * (static_cast<std::size_t>(py) * width + px) + 1]; }
    std::uint8_t blue(int px, int py) const { return pixels[3 * (static_cast<std::size_t>(py) * width + px) + 2]; }
};

// Per-pixel gradient magnitude min(|gx|+|gy|, 255), same dimensions as the source.
struct NormedGradientMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;  // row-major

    std::uint8_t at(int px, int py) const { return values[static_cast<std::size_t>(py) * width + px]; }
    bool contains(const BBox& box) const {
        return box.valid() && box.x >= 0 && box.y >= 0 && box.right() <= width && box.bottom() <= height;
    }
};

inline constexpr int kNgGrid = 8;
inline constexpr int kNgDim = kNgGrid * kNgGrid;

// 8x8 grid of resampled normed gradients, flattened row-major.
using NGFeature = std::array<std::uint8_t, kNgDim>;

// BT.601 luminance, rounded half-up. Throws std::invalid_argument on mismatched planes.
GrayImage to_grayscale(const RgbImage& img);
GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b);

// Forward differences, last valid difference reused at the right/bottom border.
// Requires width >= 2 and height >= 2.
NormedGradientMap normed_gradient(const GrayImage& img);

// Bilinear resampling of a sub-window with pixel-center alignment. Sample
// coordinates are clamped to the window, so an out_w x out_h window is copied
// verbatim. Returns out_w*out_h values row-major.
std::vector<double> resample_bilinear(const std::uint8_t* data, int img_width, const BBox& box,
                                      int out_w, int out_h);

// The box's sub-window of the map resampled to 8x8 bytes (round half-up).
NGFeature extract_ng_feature(const NormedGradientMap& map, const BBox& box);

}  // namespace adobing

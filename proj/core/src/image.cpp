#include "adobing/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace adobing {

BBox intersect(const BBox& a, const BBox& b) {
    BBox r;
    r.x = std::max(a.x, b.x);
    r.y = std::max(a.y, b.y);
    r.w = std::min(a.right(), b.right()) - r.x;
    r.h = std::min(a.bottom(), b.bottom()) - r.y;
    return r;
}

double iou(const BBox& a, const BBox& b) {
    const long long inter = intersect(a, b).area();
    if (inter <= 0) return 0.0;
    const long long uni = a.area() + b.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: dimensions must be positive");
}

RgbImage::RgbImage(int w, int h) : width(w), height(h), pixels(3 * static_cast<std::size_t>(w) * h, 0) {
    if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: dimensions must be positive");
}

namespace {

inline std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::min(255.0, std::floor(y + 0.5)));
}

}  // namespace

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < n; ++i)
        out.pixels[i] = luma601(img.pixels[3 * i], img.pixels[3 * i + 1], img.pixels[3 * i + 2]);
    return out;
}

GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    if (r.width != g.width || r.width != b.width || r.height != g.height || r.height != b.height)
        throw std::invalid_argument("to_grayscale: channel dimensions differ");
    GrayImage out(r.width, r.height);
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        out.pixels[i] = luma601(r.pixels[i], g.pixels[i], b.pixels[i]);
    return out;
}

NormedGradientMap normed_gradient(const GrayImage& img) {
    if (img.width < 2 || img.height < 2)
        throw std::invalid_argument("normed_gradient: image must be at least 2x2, got " +
                                    std::to_string(img.width) + "x" + std::to_string(img.height));
    NormedGradientMap map;
    map.width = img.width;
    map.height = img.height;
    map.values.resize(img.pixels.size());
    for (int y = 0; y < img.height; ++y) {
        // Border pixels reuse the last valid forward difference.
        const int ys = std::min(y, img.height - 2);
        for (int x = 0; x < img.width; ++x) {
            const int xs = std::min(x, img.width - 2);
            const int gx = std::abs(int(img.at(xs + 1, y)) - int(img.at(xs, y)));
            const int gy = std::abs(int(img.at(x, ys + 1)) - int(img.at(x, ys)));
            map.values[static_cast<std::size_t>(y) * img.width + x] =
                static_cast<std::uint8_t>(std::min(gx + gy, 255));
        }
    }
    return map;
}

std::vector<double> resample_bilinear(const std::uint8_t* data, int img_width, const BBox& box,
                                      int out_w, int out_h) {
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
    const double sx = double(box.w) / out_w;
    const double sy = double(box.h) / out_h;
    for (int oy = 0; oy < out_h; ++oy) {
        double fy = (oy + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, double(box.h - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, box.h - 1);
        const double wy = fy - y0;
        for (int ox = 0; ox < out_w; ++ox) {
            double fx = (ox + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, double(box.w - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, box.w - 1);
            const double wx = fx - x0;
            auto px = [&](int bx, int by) -> double {
                return data[static_cast<std::size_t>(box.y + by) * img_width + (box.x + bx)];
            };
            const double top = px(x0, y0) * (1.0 - wx) + px(x1, y0) * wx;
            const double bot = px(x0, y1) * (1.0 - wx) + px(x1, y1) * wx;
            out[static_cast<std::size_t>(oy) * out_w + ox] = top * (1.0 - wy) + bot * wy;
        }
    }
    return out;
}

NGFeature extract_ng_feature(const NormedGradientMap& map, const BBox& box) {
    if (!box.valid()) throw std::invalid_argument("extract_ng_feature: degenerate box");
    if (!map.contains(box)) throw std::invalid_argument("extract_ng_feature: box outside image bounds");
    const std::vector<double> s = resample_bilinear(map.values.data(), map.width, box, kNgGrid, kNgGrid);
    NGFeature f;
    for (int i = 0; i < kNgDim; ++i)
        f[i] = static_cast<std::uint8_t>(std::min(255.0, std::floor(s[i] + 0.5)));
    return f;
}

}  // namespace adobing

#include "adobing/bing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "adobing/errors.hpp"
#include "adobing/parallel.hpp"

namespace adobing {

void validate(const LinearModel& m) {
    for (double v : m.w)
        if (!std::isfinite(v)) throw std::invalid_argument("LinearModel: non-finite weight");
}

BinarizedModel binarize_model(const LinearModel& m, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("binarize_model: n_terms must be >= 1");
    BinarizedModel bm;
    bm.terms.reserve(static_cast<std::size_t>(n_terms));
    std::array<double, kNgDim> residual = m.w;
    for (int j = 0; j < n_terms; ++j) {
        std::uint64_t a_plus = 0;
        double dot = 0.0;
        for (int i = 0; i < kNgDim; ++i) {
            const double sign = residual[i] >= 0.0 ? 1.0 : -1.0;  // zero maps to +1
            if (sign > 0.0) a_plus |= (std::uint64_t{1} << i);
            dot += sign * residual[i];
        }
        const double beta = dot / kNgDim;
        for (int i = 0; i < kNgDim; ++i)
            residual[i] -= beta * ((a_plus >> i) & 1 ? 1.0 : -1.0);
        bm.terms.push_back({beta, a_plus});
    }
    return bm;
}

BingFeature binarize_feature(const NGFeature& f, int n_planes) {
    if (n_planes < 1 || n_planes > 8)
        throw std::invalid_argument("binarize_feature: n_planes must be in [1,8]");
    BingFeature bf;
    bf.num_planes = n_planes;
    for (int k = 1; k <= n_planes; ++k) {
        std::uint64_t plane = 0;
        const int bit = 8 - k;
        for (int i = 0; i < kNgDim; ++i)
            plane |= std::uint64_t((f[i] >> bit) & 1) << i;
        bf.planes[k - 1] = plane;
    }
    return bf;
}

std::array<double, kNgDim> reconstruct_weights(const BinarizedModel& bm) {
    std::array<double, kNgDim> w{};
    for (const BinarizedTerm& t : bm.terms)
        for (int i = 0; i < kNgDim; ++i)
            w[i] += t.beta * ((t.a_plus >> i) & 1 ? 1.0 : -1.0);
    return w;
}

NGFeature reconstruct_feature(const BingFeature& bf) {
    NGFeature g{};
    for (int k = 1; k <= bf.num_planes; ++k) {
        const std::uint64_t plane = bf.planes[k - 1];
        for (int i = 0; i < kNgDim; ++i)
            g[i] = static_cast<std::uint8_t>(g[i] + (((plane >> i) & 1) << (8 - k)));
    }
    return g;
}

double exact_score(const LinearModel& m, const NGFeature& f) {
    double s = 0.0;
    for (int i = 0; i < kNgDim; ++i) s += m.w[i] * f[i];
    return s;
}

double fast_score(const BinarizedModel& bm, const BingFeature& bf) {
    double s = 0.0;
    for (const BinarizedTerm& t : bm.terms) {
        // C_{j,k} = 2^{8-k} (2<a_j^+, b_k> - |b_k|), both inner products are popcounts
        std::int64_t inner = 0;
        for (int k = 1; k <= bf.num_planes; ++k) {
            const std::uint64_t b = bf.planes[k - 1];
            const std::int64_t c = 2 * std::popcount(t.a_plus & b) - std::popcount(b);
            inner += c << (8 - k);
        }
        s += t.beta * static_cast<double>(inner);
    }
    return s;
}

std::vector<WindowSize> window_sizes_for_target(int target_w, int target_h, int img_w, int img_h) {
    if (target_w < 1 || target_h < 1)
        throw std::invalid_argument("window_sizes_for_target: target must be non-degenerate");
    static constexpr double kScales[] = {0.5, 0.707, 1.0, 1.414, 2.0};
    std::vector<WindowSize> sizes;
    for (double sw : kScales) {
        for (double sh : kScales) {
            WindowSize ws;
            ws.w = static_cast<int>(std::lround(target_w * sw));
            ws.h = static_cast<int>(std::lround(target_h * sh));
            if (ws.w < 2 || ws.h < 2 || ws.w > img_w || ws.h > img_h) continue;
            if (std::find(sizes.begin(), sizes.end(), ws) == sizes.end()) sizes.push_back(ws);
        }
    }
    return sizes;
}

std::vector<BBox> enumerate_windows(int img_w, int img_h, const std::vector<WindowSize>& sizes,
                                    int stride) {
    if (sizes.empty()) throw std::invalid_argument("enumerate_windows: empty window set");
    if (stride < 1) throw std::invalid_argument("enumerate_windows: stride must be >= 1");
    std::vector<BBox> out;
    for (const WindowSize& ws : sizes) {
        if (ws.w < 1 || ws.h < 1 || ws.w > img_w || ws.h > img_h)
            throw std::invalid_argument("enumerate_windows: window " + std::to_string(ws.w) + "x" +
                                        std::to_string(ws.h) + " does not fit a " +
                                        std::to_string(img_w) + "x" + std::to_string(img_h) + " image");
        for (int y = 0; y + ws.h <= img_h; y += stride)
            for (int x = 0; x + ws.w <= img_w; x += stride)
                out.push_back({x, y, ws.w, ws.h});
    }
    return out;
}

std::vector<ScoredWindow> objectness_map(const GrayImage& img, const LinearModel& m,
                                         const std::vector<WindowSize>& sizes, int stride,
                                         int n_terms, int n_planes) {
    validate(m);
    const NormedGradientMap map = normed_gradient(img);
    const std::vector<BBox> boxes = enumerate_windows(img.width, img.height, sizes, stride);
    const BinarizedModel bm = binarize_model(m, n_terms);
    std::vector<ScoredWindow> out(boxes.size());
    parallel_for(boxes.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const NGFeature f = extract_ng_feature(map, boxes[i]);
            out[i] = {boxes[i], fast_score(bm, binarize_feature(f, n_planes))};
        }
    });
    return out;
}

std::size_t argmax_window(const std::vector<ScoredWindow>& windows) {
    if (windows.empty()) throw std::invalid_argument("argmax_window: empty window list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < windows.size(); ++i) {
        const ScoredWindow& a = windows[i];
        const ScoredWindow& b = windows[best];
        if (a.score > b.score) {
            best = i;
        } else if (a.score == b.score) {
            const auto key = [](const BBox& r) { return std::make_tuple(r.y, r.x, r.area(), r.w); };
            if (key(a.box) < key(b.box)) best = i;
        }
    }
    return best;
}

void write_objectness_csv(const std::string& path, const std::vector<ScoredWindow>& windows) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << "x,y,w,h,score\n";
    char buf[64];
    for (const ScoredWindow& sw : windows) {
        std::snprintf(buf, sizeof buf, "%.17g", sw.score);
        out << sw.box.x << ',' << sw.box.y << ',' << sw.box.w << ',' << sw.box.h << ',' << buf << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

GrayImage objectness_heatmap(int img_w, int img_h, const std::vector<ScoredWindow>& windows) {
    if (windows.empty()) throw std::invalid_argument("objectness_heatmap: empty window list");
    double lo = windows.front().score;
    double hi = lo;
    for (const ScoredWindow& sw : windows) {
        lo = std::min(lo, sw.score);
        hi = std::max(hi, sw.score);
    }
    std::vector<double> heat(static_cast<std::size_t>(img_w) * img_h, lo);
    for (const ScoredWindow& sw : windows)
        for (int y = sw.box.y; y < sw.box.bottom(); ++y)
            for (int x = sw.box.x; x < sw.box.right(); ++x) {
                double& h = heat[static_cast<std::size_t>(y) * img_w + x];
                h = std::max(h, sw.score);
            }
    GrayImage img(img_w, img_h);
    const double range = hi - lo;
    for (std::size_t i = 0; i < heat.size(); ++i)
        img.pixels[i] = range > 0.0
                            ? static_cast<std::uint8_t>(std::lround(255.0 * (heat[i] - lo) / range))
                            : 0;
    return img;
}

}  // namespace adobing

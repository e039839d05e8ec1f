#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "adobing/image.hpp"

namespace adobing {

// 64-dimensional linear objectness model over NG features.
struct LinearModel {
    std::array<double, kNgDim> w{};
};

// Throws std::invalid_argument when any weight is not finite.
void validate(const LinearModel& m);

// One binary basis term: bit i of a_plus marks a +1 at feature position i,
// the implied basis vector is 2*a_plus - 1 in {-1,+1}^64.
struct BinarizedTerm {
    double beta = 0.0;
    std::uint64_t a_plus = 0;
};

struct BinarizedModel {
    std::vector<BinarizedTerm> terms;
};

// Bit-plane decomposition of an NG feature: planes[k-1] holds bit (8-k) of
// every byte, most significant plane first.
struct BingFeature {
    int num_planes = 0;
    std::array<std::uint64_t, 8> planes{};
};

// Greedy residual approximation: a_j = sign(residual) (zeros map to +1),
// beta_j = <a_j, residual>/64, residual -= beta_j * a_j. The l2 residual
// norm is non-increasing across terms.
BinarizedModel binarize_model(const LinearModel& m, int n_terms);

BingFeature binarize_feature(const NGFeature& f, int n_planes);

// Sum of the weighted binary bases, for residual/quality checks.
std::array<double, kNgDim> reconstruct_weights(const BinarizedModel& bm);

// Sum over planes of 2^{8-k} * b_k; equals the original feature when all
// 8 planes are kept.
NGFeature reconstruct_feature(const BingFeature& bf);

// <w, g> over raw byte values.
double exact_score(const LinearModel& m, const NGFeature& f);

// Bit-parallel approximation of exact_score via AND + popcount.
double fast_score(const BinarizedModel& bm, const BingFeature& bf);

struct WindowSize {
    int w = 0;
    int h = 0;
    bool operator==(const WindowSize&) const = default;
};

struct ScoredWindow {
    BBox box;
    double score = 0.0;
};

inline constexpr int kDefaultModelTerms = 2;   // N_w
inline constexpr int kDefaultFeaturePlanes = 4;  // N_g

// Window sizes near the target's size regime: the scale set {0.5, 0.707, 1,
// 1.414, 2} applied per dimension (cross product), deduplicated, filtered to
// sizes of at least 2px that fit the image.
std::vector<WindowSize> window_sizes_for_target(int target_w, int target_h, int img_w, int img_h);

// Sliding-window positions for all sizes: x = 0, stride, ... <= W-w, row-major
// per size, sizes in the given order. Throws when the set is empty or a size
// does not fit.
std::vector<BBox> enumerate_windows(int img_w, int img_h, const std::vector<WindowSize>& sizes,
                                    int stride);

// One fast-path score per enumerated window.
std::vector<ScoredWindow> objectness_map(const GrayImage& img, const LinearModel& m,
                                         const std::vector<WindowSize>& sizes, int stride,
                                         int n_terms = kDefaultModelTerms,
                                         int n_planes = kDefaultFeaturePlanes);

// Highest score; ties go to the smallest (y, x), then area, then width.
std::size_t argmax_window(const std::vector<ScoredWindow>& windows);

// CSV rows "x,y,w,h,score" under a header line.
void write_objectness_csv(const std::string& path, const std::vector<ScoredWindow>& windows);

// Per-pixel max over covering windows, min-max normalized to [0,255]
// (all-equal scores map to 0).
GrayImage objectness_heatmap(int img_w, int img_h, const std::vector<ScoredWindow>& windows);

}  // namespace adobing

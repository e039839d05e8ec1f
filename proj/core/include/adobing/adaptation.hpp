#pragma once

#include <cstdint>
#include <vector>

#include "adobing/adasvm.hpp"
#include "adobing/bing.hpp"
#include "adobing/image.hpp"

namespace adobing {

// First frame of a sequence with its target annotation.
struct AnnotatedFrame {
    GrayImage image;
    BBox target;

    void validate() const;  // target inside image
};

struct SampleSpec {
    int stride = 1;
    std::vector<WindowSize> window_sizes;
    double pos_iou = 0.5;
    double neg_iou = 0.3;
    int max_negatives = 500;

    void validate() const;
    std::string summary() const;  // single-line form for provenance blocks
};

// stride = min target dimension / 8 rounded up, sizes from the target's
// scale set, thresholds 0.5 / 0.3, at most 500 negatives.
SampleSpec default_sample_spec(const BBox& target, int img_w, int img_h);

// Slides every window size over the frame; windows with iou >= pos_iou become
// positives, iou <= neg_iou negatives (subsampled uniformly down to
// max_negatives with the seeded generator), the band in between is discarded.
// The ground-truth box itself always leads the set as a positive; samples
// follow in enumeration order. Throws algorithm_error when the sliding grid
// yields no positive window.
TrainingSet generate_samples(const AnnotatedFrame& frame, const SampleSpec& spec,
                             std::uint64_t seed);

// generate_samples + fit against the base model. Deterministic given the seed.
LinearModel adapt_objectness(const LinearModel& base, const AnnotatedFrame& frame,
                             const SampleSpec& spec, const AdaSvmConfig& cfg, std::uint64_t seed,
                             FitTrace* trace = nullptr);

}  // namespace adobing

#include "adobing/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <stdexcept>

#include "adobing/errors.hpp"
#include "adobing/parallel.hpp"

namespace adobing {

void AnnotatedFrame::validate() const {
    if (!image.contains(target))
        throw std::invalid_argument("AnnotatedFrame: target box not inside the image");
}

void SampleSpec::validate() const {
    if (stride < 1) throw std::invalid_argument("SampleSpec: stride must be >= 1");
    if (window_sizes.empty()) throw std::invalid_argument("SampleSpec: empty window-size set");
    if (!(pos_iou > 0.0 && pos_iou < 1.0)) throw std::invalid_argument("SampleSpec: pos_iou out of (0,1)");
    if (!(neg_iou > 0.0 && neg_iou < 1.0)) throw std::invalid_argument("SampleSpec: neg_iou out of (0,1)");
    if (!(neg_iou < pos_iou)) throw std::invalid_argument("SampleSpec: neg_iou must be < pos_iou");
    if (max_negatives < 0) throw std::invalid_argument("SampleSpec: max_negatives must be >= 0");
}

std::string SampleSpec::summary() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "stride=%d pos_iou=%g neg_iou=%g max_negatives=%d sizes=%zu",
                  stride, pos_iou, neg_iou, max_negatives, window_sizes.size());
    return buf;
}

SampleSpec default_sample_spec(const BBox& target, int img_w, int img_h) {
    SampleSpec spec;
    const int short_side = std::min(target.w, target.h);
    spec.stride = std::max(1, (short_side + 7) / 8);
    spec.window_sizes = window_sizes_for_target(target.w, target.h, img_w, img_h);
    return spec;
}

TrainingSet generate_samples(const AnnotatedFrame& frame, const SampleSpec& spec,
                             std::uint64_t seed) {
    frame.validate();
    spec.validate();
    const NormedGradientMap map = normed_gradient(frame.image);
    const std::vector<BBox> windows =
        enumerate_windows(frame.image.width, frame.image.height, spec.window_sizes, spec.stride);

    struct Labeled {
        BBox box;
        int label;
    };
    std::vector<Labeled> kept;
    kept.reserve(windows.size());
    std::size_t num_pos = 0, num_neg = 0;
    for (const BBox& box : windows) {
        if (box == frame.target) continue;  // the ground truth leads the set once
        const double overlap = iou(box, frame.target);
        if (overlap >= spec.pos_iou) {
            kept.push_back({box, +1});
            ++num_pos;
        } else if (overlap <= spec.neg_iou) {
            kept.push_back({box, -1});
            ++num_neg;
        }
    }
    const bool grid_hits_target =
        num_pos > 0 || std::find(windows.begin(), windows.end(), frame.target) != windows.end();
    if (!grid_hits_target)
        throw algorithm_error(
            "generate_samples: no sliding window reaches pos_iou with the target; "
            "adjust the window sizes or stride of the sample spec");

    // Uniform subsample of the negatives, enumeration order preserved.
    if (num_neg > static_cast<std::size_t>(spec.max_negatives)) {
        std::mt19937_64 rng(seed);
        std::size_t remaining = num_neg;
        std::size_t wanted = static_cast<std::size_t>(spec.max_negatives);
        std::vector<Labeled> filtered;
        filtered.reserve(kept.size() - (num_neg - wanted));
        for (const Labeled& s : kept) {
            if (s.label > 0) {
                filtered.push_back(s);
                continue;
            }
            if (wanted > 0 && rng() % remaining < wanted) {
                filtered.push_back(s);
                --wanted;
            }
            --remaining;
        }
        kept.swap(filtered);
    }

    std::vector<Labeled> all;
    all.reserve(kept.size() + 1);
    all.push_back({frame.target, +1});
    all.insert(all.end(), kept.begin(), kept.end());

    TrainingSet set;
    set.samples.resize(all.size());
    parallel_for(all.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            set.samples[i] = make_sample(extract_ng_feature(map, all[i].box), all[i].label);
    });
    if (!set.has_both_classes())
        std::cerr << "warning: training set has a single class; the fit will be weakly constrained\n";
    return set;
}

LinearModel adapt_objectness(const LinearModel& base, const AnnotatedFrame& frame,
                             const SampleSpec& spec, const AdaSvmConfig& cfg, std::uint64_t seed,
                             FitTrace* trace) {
    validate(base);
    cfg.validate();
    const TrainingSet set = generate_samples(frame, spec, seed);
    return fit(set, base, cfg, trace);
}

}  // namespace adobing

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adobing/bing.hpp"
#include "adobing/image.hpp"

namespace adobing {

struct Candidate {
    BBox box;
    double f_t = 0.0;   // base confidence, normalized per frame
    double f_o = 0.0;   // objectness, normalized per frame
    double f_ot = 0.0;  // fused: f_t + lambda * f_o
};

struct FusionConfig {
    double lambda = 0.1;
    int search_radius = 20;
    int candidate_stride = 2;
    std::vector<double> scale_set{1.0};
    // 0 keeps the initial template fixed; a positive rate blends the winning
    // patch in after every frame.
    double template_update_rate = 0.0;

    void validate() const;
};

inline constexpr int kTemplateSize = 32;

// Base-tracker state: a 32x32 intensity template plus the current box.
struct TrackState {
    std::vector<double> tpl;  // kTemplateSize^2, row-major
    BBox current;
    std::optional<LinearModel> model;
};

// Translation grid (multiples of candidate_stride within search_radius)
// crossed with the scale set, clamped to the frame. Deterministic order:
// scales outer, then rows, then columns. Always contains prev.
std::vector<Candidate> sample_candidates(const BBox& prev, const FusionConfig& cfg, int frame_w,
                                         int frame_h);

// Normalized cross-correlation between the template and the box's patch
// resampled to template resolution, in [-1,1]; 0 when either side has zero
// variance.
double base_confidence(const TrackState& state, const GrayImage& frame, const BBox& box);

// Per-frame min-max rescale to [0,1]; a constant list maps to all zeros.
std::vector<double> normalize_confidences(const std::vector<double>& values);

// f_ot = f_t + lambda * f_o for every candidate; inputs must already be
// normalized.
void fuse(std::vector<Candidate>& candidates, double lambda);

struct Trajectory {
    std::vector<BBox> boxes;  // one per frame; front() is the initialization
};

// Stateful frame-by-frame tracker (the sequence overload and the CLI both
// drive this).
class Tracker {
public:
    Tracker(const GrayImage& first_frame, const BBox& init, FusionConfig cfg,
            std::optional<LinearModel> model);

    // Scores candidates around the previous box and moves to the fused argmax.
    BBox step(const GrayImage& frame);

    const BBox& current() const { return state_.current; }

private:
    FusionConfig cfg_;
    TrackState state_;
};

// Tracks a whole in-memory sequence; frame 1 output equals the initialization.
Trajectory track_sequence(const std::vector<GrayImage>& frames, const BBox& init,
                          const FusionConfig& cfg, const std::optional<LinearModel>& model);

// Streaming variant: frame_at(i) is called once per frame index in order.
Trajectory track_sequence(const std::function<GrayImage(std::size_t)>& frame_at,
                          std::size_t frame_count, const BBox& init, const FusionConfig& cfg,
                          const std::optional<LinearModel>& model);

// One "x,y,w,h" line per frame, matching the ground-truth file format.
void write_trajectory(const std::string& path, const Trajectory& traj);

}  // namespace adobing

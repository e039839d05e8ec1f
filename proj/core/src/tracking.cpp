#include "adobing/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "adobing/errors.hpp"
#include "adobing/parallel.hpp"

namespace adobing {

void FusionConfig::validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("FusionConfig: lambda must be >= 0");
    if (search_radius < 0) throw std::invalid_argument("FusionConfig: search_radius must be >= 0");
    if (candidate_stride < 1) throw std::invalid_argument("FusionConfig: candidate_stride must be >= 1");
    if (scale_set.empty()) throw std::invalid_argument("FusionConfig: empty scale set");
    for (double s : scale_set)
        if (!(s > 0.0)) throw std::invalid_argument("FusionConfig: scales must be positive");
    if (!(template_update_rate >= 0.0 && template_update_rate <= 1.0))
        throw std::invalid_argument("FusionConfig: template_update_rate must be in [0,1]");
}

namespace {

BBox clamp_to_frame(BBox box, int frame_w, int frame_h) {
    box.w = std::min(box.w, frame_w);
    box.h = std::min(box.h, frame_h);
    box.x = std::clamp(box.x, 0, frame_w - box.w);
    box.y = std::clamp(box.y, 0, frame_h - box.h);
    return box;
}

std::vector<double> patch_at(const GrayImage& frame, const BBox& box) {
    return resample_bilinear(frame.pixels.data(), frame.width, box, kTemplateSize, kTemplateSize);
}

// Ties go to the smallest (y, x), then area, then width.
std::size_t argmax_candidate(const std::vector<Candidate>& cs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cs.size(); ++i) {
        if (cs[i].f_ot > cs[best].f_ot) {
            best = i;
        } else if (cs[i].f_ot == cs[best].f_ot) {
            const auto key = [](const BBox& r) { return std::make_tuple(r.y, r.x, r.area(), r.w); };
            if (key(cs[i].box) < key(cs[best].box)) best = i;
        }
    }
    return best;
}

}  // namespace

std::vector<Candidate> sample_candidates(const BBox& prev, const FusionConfig& cfg, int frame_w,
                                         int frame_h) {
    cfg.validate();
    if (prev.x < 0 || prev.y < 0 || prev.right() > frame_w || prev.bottom() > frame_h)
        throw std::invalid_argument("sample_candidates: previous box outside frame");
    const int steps = cfg.search_radius / cfg.candidate_stride;
    std::vector<Candidate> out;
    out.reserve(cfg.scale_set.size() * (2 * steps + 1) * (2 * steps + 1));
    for (double scale : cfg.scale_set) {
        BBox scaled;
        scaled.w = std::max(1, static_cast<int>(std::lround(prev.w * scale)));
        scaled.h = std::max(1, static_cast<int>(std::lround(prev.h * scale)));
        // keep the center fixed (integer arithmetic, floor of the half-shift)
        scaled.x = prev.x + (prev.w - scaled.w) / 2;
        scaled.y = prev.y + (prev.h - scaled.h) / 2;
        for (int ky = -steps; ky <= steps; ++ky) {
            for (int kx = -steps; kx <= steps; ++kx) {
                BBox box = scaled;
                box.x += kx * cfg.candidate_stride;
                box.y += ky * cfg.candidate_stride;
                out.push_back({clamp_to_frame(box, frame_w, frame_h), 0.0, 0.0, 0.0});
            }
        }
    }
    return out;
}

double base_confidence(const TrackState& state, const GrayImage& frame, const BBox& box) {
    if (!frame.contains(box)) throw std::invalid_argument("base_confidence: box outside frame");
    const std::vector<double> patch = patch_at(frame, box);
    const std::size_t n = patch.size();
    double mean_t = 0.0, mean_p = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_t += state.tpl[i];
        mean_p += patch[i];
    }
    mean_t /= n;
    mean_p /= n;
    double cross = 0.0, var_t = 0.0, var_p = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = state.tpl[i] - mean_t;
        const double dp = patch[i] - mean_p;
        cross += dt * dp;
        var_t += dt * dt;
        var_p += dp * dp;
    }
    if (var_t <= 0.0 || var_p <= 0.0) return 0.0;
    return cross / std::sqrt(var_t * var_p);
}

std::vector<double> normalize_confidences(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("normalize_confidences: empty list");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, range = *hi_it - *lo_it;
    std::vector<double> out(values.size(), 0.0);
    if (range > 0.0)
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / range;
    return out;
}

void fuse(std::vector<Candidate>& candidates, double lambda) {
    for (Candidate& c : candidates) c.f_ot = c.f_t + lambda * c.f_o;
}

Tracker::Tracker(const GrayImage& first_frame, const BBox& init, FusionConfig cfg,
                 std::optional<LinearModel> model)
    : cfg_(std::move(cfg)) {
    cfg_.validate();
    if (!first_frame.contains(init))
        throw std::invalid_argument("Tracker: initialization box outside the first frame");
    if (model) validate(*model);
    state_.tpl = patch_at(first_frame, init);
    state_.current = init;
    state_.model = std::move(model);
}

BBox Tracker::step(const GrayImage& frame) {
    std::vector<Candidate> cands = sample_candidates(state_.current, cfg_, frame.width, frame.height);

    std::vector<double> raw_base(cands.size());
    std::vector<double> raw_obj(cands.size(), 0.0);
    const bool scored = state_.model.has_value();
    NormedGradientMap ng;
    if (scored) ng = normed_gradient(frame);
    parallel_for(cands.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            raw_base[i] = base_confidence(state_, frame, cands[i].box);
            if (scored) raw_obj[i] = exact_score(*state_.model, extract_ng_feature(ng, cands[i].box));
        }
    });

    const std::vector<double> f_t = normalize_confidences(raw_base);
    const std::vector<double> f_o = scored ? normalize_confidences(raw_obj)
                                           : std::vector<double>(cands.size(), 0.0);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        cands[i].f_t = f_t[i];
        cands[i].f_o = f_o[i];
    }
    fuse(cands, scored ? cfg_.lambda : 0.0);

    state_.current = cands[argmax_candidate(cands)].box;
    if (cfg_.template_update_rate > 0.0) {
        const std::vector<double> patch = patch_at(frame, state_.current);
        const double r = cfg_.template_update_rate;
        for (std::size_t i = 0; i < state_.tpl.size(); ++i)
            state_.tpl[i] = (1.0 - r) * state_.tpl[i] + r * patch[i];
    }
    return state_.current;
}

Trajectory track_sequence(const std::function<GrayImage(std::size_t)>& frame_at,
                          std::size_t frame_count, const BBox& init, const FusionConfig& cfg,
                          const std::optional<LinearModel>& model) {
    if (frame_count == 0) throw std::invalid_argument("track_sequence: empty frame list");
    Trajectory traj;
    traj.boxes.reserve(frame_count);
    Tracker tracker(frame_at(0), init, cfg, model);
    traj.boxes.push_back(init);
    for (std::size_t i = 1; i < frame_count; ++i) traj.boxes.push_back(tracker.step(frame_at(i)));
    return traj;
}

Trajectory track_sequence(const std::vector<GrayImage>& frames, const BBox& init,
                          const FusionConfig& cfg, const std::optional<LinearModel>& model) {
    return track_sequence([&frames](std::size_t i) { return frames[i]; }, frames.size(), init, cfg,
                          model);
}

void write_trajectory(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    for (const BBox& b : traj.boxes)
        out << b.x << ',' << b.y << ',' << b.w << ',' << b.h << '\n';
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace adobing

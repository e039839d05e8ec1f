#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adobing/image.hpp"

namespace adobing {

// One tracking sequence on disk: an image subfolder plus a rectangle file.
struct SequenceDataset {
    std::string name;
    std::vector<std::string> frame_paths;  // sorted lexicographically
    std::vector<BBox> ground_truth;        // one per frame
};

// OTB-style directory: <dir>/img/ with the frames and a groundtruth_rect.txt
// (or groundtruth.txt) with one "x,y,w,h" line per frame, comma/tab/space
// separated. Throws on missing pieces, count mismatch, or malformed lines.
SequenceDataset load_sequence(const std::string& dir);

// Rectangle-per-line parser shared by ground-truth files.
std::vector<BBox> read_rects(const std::string& path);

// Trajectory files additionally allow lost frames, written as NaN fields.
std::vector<std::optional<BBox>> read_trajectory(const std::string& path);

// Per-frame pairs of tracker output and ground truth; a missing tracker box
// scores as overlap 0 and center error +infinity.
struct EvaluationRecord {
    std::vector<std::optional<BBox>> tracked;
    std::vector<BBox> truth;

    std::size_t size() const { return truth.size(); }
    void validate() const;  // aligned, non-empty
};

// Euclidean distance between box centers.
double center_error(const BBox& r_t, const BBox& r_g);

struct Curve {
    std::vector<double> thresholds;
    std::vector<double> values;
};

// Fraction of frames with center error <= tau, per threshold.
Curve precision_curve(const EvaluationRecord& rec, const std::vector<double>& thresholds);

// Fraction of frames with overlap strictly greater than t, per threshold.
Curve success_curve(const EvaluationRecord& rec, const std::vector<double>& thresholds);

// Mean of the success values; the grid must be uniform.
double auc(const Curve& curve);

std::vector<double> default_precision_thresholds();  // 0..50 px step 1
std::vector<double> default_success_thresholds();    // 0..1 step 0.05 (21 points)

// Curve value at a threshold present in the grid.
double curve_value_at(const Curve& curve, double threshold);

struct Metrics {
    double precision_at_20 = 0.0;
    double auc = 0.0;
};

// Precision@20 and AUC over the default grids.
Metrics evaluate(const EvaluationRecord& rec);

std::string metrics_json(const Metrics& m);

// CSV rows "threshold,value".
void write_curve_csv(const std::string& path, const Curve& curve);

}  // namespace adobing

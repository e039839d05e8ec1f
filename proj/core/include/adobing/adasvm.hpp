#pragma once

#include <array>
#include <string>
#include <vector>

#include "adobing/bing.hpp"
#include "adobing/image.hpp"

namespace adobing {

struct Sample {
    std::array<double, kNgDim> x{};
    int y = 0;  // +1 or -1
};

// NG feature bytes scaled by 1/255 so the per-coordinate magnitudes stay in [0,1].
Sample make_sample(const NGFeature& f, int label);

struct TrainingSet {
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }
    std::size_t count_label(int y) const;
    bool has_both_classes() const { return count_label(+1) > 0 && count_label(-1) > 0; }
    // N >= 1 and labels in {-1,+1}. A single-class set is legal (callers may warn).
    void validate() const;
};

struct AdaSvmConfig {
    double C = 0.01;          // loss weight; 0 reduces the objective to the regularizer
    double beta = 0.5;        // backtracking ratio, in (0,1)
    double sigma = 0.01;      // sufficient-decrease constant, in (0,1)
    int max_outer_iters = 200;
    double tol = 1e-4;        // outer stop: max |coordinate step| below this
    int max_backtracks = 40;

    void validate() const;
};

// Iterate state: current weights, the source model, and the margin residuals
// b_i = 1 - y_i w.x_i kept incrementally in sync with w. The active set is
// the samples with b_i > 0.
struct SolverState {
    std::array<double, kNgDim> w{};
    std::array<double, kNgDim> w_hat{};
    const TrainingSet* data = nullptr;
    std::vector<double> residuals;

    static SolverState init(const TrainingSet& data, const LinearModel& w_hat);

    // w_j += z and the matching O(N) residual update.
    void apply_step(int j, double z);

    // From-scratch b_i, for consistency checks.
    std::vector<double> recompute_residuals() const;
};

// One coordinate update in flight: derivatives at z=0, the Newton direction,
// and the accepted backtracked step.
struct NewtonStep {
    int coord_index = -1;
    double grad = 0.0;    // L'_j(0)
    double curv = 0.0;    // L''_j(0), generalized second derivative, >= 0
    double s_value = 0.0;
    double direction = 0.0;
    double step = 0.0;    // accepted z = beta^t * direction
    int backtracks = 0;   // t
    bool toward_source = false;   // direction came from the interior case (or flat loss)
    bool line_search_failed = false;
};

// ||w - w_hat||_1 + C * sum_i max(0, 1 - y_i w.x_i)^2
double objective(const std::array<double, kNgDim>& w, const std::array<double, kNgDim>& w_hat,
                 const TrainingSet& data, double C);

// (grad, curv) of the loss term along coordinate j, active samples only.
struct LossDerivatives {
    double grad = 0.0;
    double curv = 0.0;
};
LossDerivatives loss_derivatives(const SolverState& state, int j, double C);

// Three-case closed form for the l1 + quadratic model; curv == 0 falls back
// to the pull toward the source model (the loss is locally flat there, so the
// regularizer alone decides).
double newton_direction_formula(double grad, double curv, double w_j, double w_hat_j);

NewtonStep newton_direction(const SolverState& state, int j, double C);

// Exact one-dimensional objective change g_j(z), active set evaluated at the
// displaced point.
double subproblem_value(const SolverState& state, int j, double z, double C);

// Backtracking to the sufficient-decrease condition; on failure returns z = 0
// and flags the step. Fills step/backtracks on the NewtonStep.
double line_search(const SolverState& state, NewtonStep& step, const AdaSvmConfig& cfg);

struct FitTrace {
    struct OuterRow {
        int outer_iter = 0;         // 1-based
        double objective = 0.0;     // after the sweep
        double max_coord_delta = 0.0;
    };
    std::vector<OuterRow> outer;

    // When set, records the full objective after every accepted coordinate
    // step (recomputed from scratch; used by monotonicity audits).
    bool record_steps = false;
    std::vector<double> step_objectives;

    int line_search_failures = 0;
    bool converged = false;
};

// Cyclic coordinate descent over j = 1..64 until the largest coordinate step
// in a sweep drops below tol or max_outer_iters is hit. Starts from w_hat.
LinearModel fit(const TrainingSet& data, const LinearModel& w_hat, const AdaSvmConfig& cfg,
                FitTrace* trace = nullptr);

// Max subgradient-optimality violation over coordinates: for w_j != w_hat_j,
// |grad_j + sign(w_j - w_hat_j)|; at w_j == w_hat_j, max(0, |grad_j| - 1).
double certificate_violation(const LinearModel& w, const LinearModel& w_hat,
                             const TrainingSet& data, double C);

// CSV rows "outer_iter,objective,max_coord_delta".
void write_trace_csv(const std::string& path, const FitTrace& trace);

}  // namespace adobing

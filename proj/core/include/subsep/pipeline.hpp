#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "subsep/focuss.hpp"
#include "subsep/signal.hpp"
#include "subsep/spline.hpp"
#include "subsep/subspace.hpp"

namespace subsep {

/// Everything the end-to-end separation needs.
struct SeparationConfig {
    NoiseSubspaceSpec noise;
    int spline_order = 4;
    Eigen::Index knot_target = 341;
    CurvatureConfig curvature;
    FocussConfig solver;

    /// throws InvalidSpecError / DimensionError
    void validate(Eigen::Index signal_length) const;
};

/// Output of separate(): the recovered component and its diagnostics.
struct SeparationResult {
    Signal f_v;              ///< recovered smooth component
    Signal noise_estimate;   ///< input - f_v
    Partition knots;
    FocussResult solver;
    Signal f_w;              ///< the projected fitting target
};

/**
 * End-to-end separation: project the noise subspace out of the input,
 * select knots from the curvature of the projected signal, build the
 * clamped spline basis on the sample-time axis, project its design matrix,
 * run the sparse solver and reconstruct from the unprojected basis.
 * Errors from the stages propagate with the stage name prefixed.
 */
SeparationResult separate(const Signal& f, const SeparationConfig& cfg);

/**
 * Baseline filter: discrete Fourier transform, zero every retained bin
 * (|n| <= n_max, conjugate partners included; the DC bin only when the
 * spec keeps it), inverse transform.
 */
Signal fft_baseline(const Signal& f, const NoiseSubspaceSpec& spec);

/// Euclidean norm of the sample-wise difference.
double error_norm(const Signal& estimate, const Signal& truth);

/// One grid point of the q sweep.
struct SweepPoint {
    double q = 0.0;
    double error = 0.0;      ///< NaN when the separation failed
    bool converged = false;
    int iterations = 0;
    bool failed = false;
    std::string message;     ///< failure description when failed
};

/// Error curve over the q grid plus the FFT baseline reference.
struct SweepResult {
    std::vector<SweepPoint> points;  ///< ascending q
    double best_q = 0.0;             ///< argmin over non-failed points, ties -> smallest q
    double best_error = 0.0;
    double fft_error = 0.0;
};

/**
 * Evaluate separate() for every q in {step, 2*step, ...} up to 1, against
 * a known truth signal. Individual failures are recorded per q and
 * excluded from the argmin; SweepError is raised only when every grid
 * point fails. Grid points are independent and may be evaluated in
 * parallel; the result does not depend on evaluation order. The
 * SUBSEP_THREADS environment variable caps the worker count (0 = serial).
 */
SweepResult sweep_q(const Signal& f, const Signal& truth, double grid_step,
                    const SeparationConfig& cfg);

}  // namespace subsep

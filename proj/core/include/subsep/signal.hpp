#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <utility>

#include "subsep/errors.hpp"

namespace subsep {

/**
 * Uniformly sampled real-valued trace.
 *
 * Immutable after construction; the constructor enforces at least two
 * samples, a positive finite sample interval and finite sample values.
 */
class Signal {
public:
    Signal(Eigen::VectorXd samples, double dt, double t0 = 0.0);

    const Eigen::VectorXd& samples() const { return samples_; }
    double dt() const { return dt_; }
    double t0() const { return t0_; }
    Eigen::Index size() const { return samples_.size(); }

    /// Time of sample i.
    double time(Eigen::Index i) const { return t0_ + dt_ * static_cast<double>(i); }

    /// Times of all samples as a vector.
    Eigen::VectorXd time_grid() const;

    /// Same time axis, different values.
    Signal with_samples(Eigen::VectorXd samples) const { return Signal(std::move(samples), dt_, t0_); }

private:
    Eigen::VectorXd samples_;
    double dt_;
    double t0_;
};

/// Scenario description for the synthetic generators.
struct SynthSpec {
    Eigen::Index length = 403;
    std::uint64_t seed = 1;
    int noise_n_max = 21;            ///< highest retained Fourier index
    double noise_amplitude = 1.0;    ///< RMS of the generated noise
    int wavelet_count = 14;
    std::pair<double, double> wavelet_width_range{2.0, 4.0};  ///< in samples

    void validate() const;  ///< throws InvalidSpecError
};

/**
 * Discrete derivative: centered differences at interior samples,
 * one-sided first-order differences at the two endpoints. Applying it
 * twice gives a usable second derivative.
 */
Signal central_difference(const Signal& s);

/**
 * Random low-frequency noise: a seeded combination of the constant vector
 * and cos/sin(2*pi*n*i/L) for n = 1..noise_n_max, scaled so the result's
 * RMS equals noise_amplitude. The output lies exactly in the span of the
 * retained Fourier modes.
 */
Signal synth_noise(const SynthSpec& spec);

/**
 * Broadband surrogate: a train of Ricker wavelets with seeded random
 * centers, widths drawn from wavelet_width_range and signed amplitudes.
 * With default parameters the energy is concentrated well above the
 * retained noise band.
 */
Signal synth_broadband(const SynthSpec& spec);

/// The Ricker pulse (1 - x^2) exp(-x^2/2); unit peak at x = 0.
double ricker(double x);

/**
 * CSV signal I/O. Format: header line "t,value", one row per sample,
 * strictly increasing and uniformly spaced t (relative spacing tolerance
 * 1e-9). The writer emits 17 significant digits.
 */
Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const Signal& s);

}  // namespace subsep

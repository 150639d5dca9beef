#include "subsep/pipeline.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace subsep {

void SeparationConfig::validate(Eigen::Index signal_length) const {
    noise.validate();
    if (noise.length != signal_length)
        throw DimensionError("SeparationConfig: noise subspace length " +
                             std::to_string(noise.length) + " does not match signal length " +
                             std::to_string(signal_length));
    if (spline_order < 1) throw InvalidSpecError("SeparationConfig: spline_order must be >= 1");
    if (knot_target < 0) throw InvalidSpecError("SeparationConfig: knot_target must be >= 0");
    if (knot_target + spline_order > signal_length)
        throw InvalidSpecError("SeparationConfig: knot_target + spline_order = " +
                               std::to_string(knot_target + spline_order) +
                               " exceeds the signal length " + std::to_string(signal_length));
    if (!(curvature.zero_tol > 0.0))
        throw InvalidSpecError("SeparationConfig: curvature.zero_tol must be positive");
    solver.validate();
}

namespace {

/// Rethrow stage errors with the stage name prefixed, preserving the type.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    const auto tag = [name](const Error& e) { return std::string(name) + ": " + e.what(); };
    try {
        return fn();
    } catch (const CapacityError& e) {
        throw CapacityError(tag(e), e.critical_points);
    } catch (const ConditioningError& e) {
        throw ConditioningError(tag(e), e.lambda);
    } catch (const RankError& e) {
        throw RankError(tag(e));
    } catch (const NumericError& e) {
        throw NumericError(tag(e));
    } catch (const DomainError& e) {
        throw DomainError(tag(e));
    } catch (const DimensionError& e) {
        throw DimensionError(tag(e));
    } catch (const IndexError& e) {
        throw IndexError(tag(e));
    } catch (const InvalidSpecError& e) {
        throw InvalidSpecError(tag(e));
    }
}

}  // namespace

SeparationResult separate(const Signal& f, const SeparationConfig& cfg) {
    cfg.validate(f.size());

    const Projector projector = stage("noise subspace", [&] {
        return orthonormalize(build_noise_atoms(cfg.noise));
    });
    Signal f_w = project_out(projector, f);

    const Partition knots = stage("knot selection", [&] {
        return curvature_knots(f_w, cfg.knot_target, cfg.curvature);
    });

    const BSplineBasis basis(make_extended(knots, cfg.spline_order));
    const Eigen::MatrixXd design = stage("spline basis", [&] {
        return design_matrix(basis, f.time_grid());
    });

    const Eigen::MatrixXd dict = stage("dictionary projection", [&] {
        return project_atoms(projector, design);
    });

    FocussResult solved = stage("solver", [&] {
        return run_focuss(dict, f_w.samples(), cfg.solver);
    });

    Signal f_v = f.with_samples(design * solved.coefficients);
    Signal noise_estimate = f.with_samples(f.samples() - f_v.samples());
    return SeparationResult{std::move(f_v), std::move(noise_estimate), knots, std::move(solved),
                            std::move(f_w)};
}

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex fftw_plan_mutex;

}  // namespace

Signal fft_baseline(const Signal& f, const NoiseSubspaceSpec& spec) {
    spec.validate();
    const Eigen::Index n = f.size();
    if (n != spec.length)
        throw DimensionError("fft_baseline: signal length " + std::to_string(n) +
                             " does not match spec length " + std::to_string(spec.length));

    const auto nb = static_cast<std::size_t>(n);
    double* in = fftw_alloc_real(nb);
    fftw_complex* freq = fftw_alloc_complex(nb / 2 + 1);

    fftw_plan fwd, inv;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, freq, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, in, FFTW_ESTIMATE);
    }

    Eigen::Map<Eigen::VectorXd>(in, n) = f.samples();
    fftw_execute(fwd);

    // remove the retained band: bin k covers the pair {+k, -k}
    if (spec.include_dc) freq[0][0] = freq[0][1] = 0.0;
    for (int k = 1; k <= spec.n_max; ++k) freq[k][0] = freq[k][1] = 0.0;

    fftw_execute(inv);
    Eigen::VectorXd out = Eigen::Map<Eigen::VectorXd>(in, n) / static_cast<double>(n);

    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(in);
    fftw_free(freq);

    return f.with_samples(std::move(out));
}

double error_norm(const Signal& estimate, const Signal& truth) {
    if (estimate.size() != truth.size())
        throw DimensionError("error_norm: lengths " + std::to_string(estimate.size()) + " and " +
                             std::to_string(truth.size()) + " differ");
    return (estimate.samples() - truth.samples()).norm();
}

namespace {

unsigned sweep_worker_count(std::size_t points) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SUBSEP_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') workers = parsed == 0 ? 1 : static_cast<unsigned>(parsed);
    }
    return static_cast<unsigned>(std::min<std::size_t>(workers, points));
}

}  // namespace

SweepResult sweep_q(const Signal& f, const Signal& truth, double grid_step,
                    const SeparationConfig& cfg) {
    if (!(grid_step > 0.0) || !(grid_step <= 1.0))
        throw InvalidSpecError("sweep_q: grid_step must lie in (0, 1]");
    if (f.size() != truth.size())
        throw DimensionError("sweep_q: input and truth lengths differ");
    cfg.validate(f.size());

    const auto count = static_cast<std::size_t>(std::floor(1.0 / grid_step + 1e-9));
    SweepResult result;
    result.points.resize(count);
    result.fft_error = error_norm(fft_baseline(f, cfg.noise), truth);

    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (std::size_t i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) {
            SweepPoint& point = result.points[i];
            point.q = grid_step * static_cast<double>(i + 1);
            SeparationConfig local = cfg;
            local.solver.q = point.q;
            try {
                const SeparationResult sep = separate(f, local);
                point.error = error_norm(sep.f_v, truth);
                point.converged = sep.solver.converged;
                point.iterations = sep.solver.iterations;
            } catch (const Error& e) {
                point.failed = true;
                point.error = std::numeric_limits<double>::quiet_NaN();
                point.message = e.what();
            }
        }
    };

    const unsigned workers = sweep_worker_count(count);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    const SweepPoint* best = nullptr;
    for (const SweepPoint& point : result.points)
        if (!point.failed && (best == nullptr || point.error < best->error)) best = &point;
    if (best == nullptr) throw SweepError("sweep_q: every grid point failed");
    result.best_q = best->q;
    result.best_error = best->error;
    return result;
}

}  // namespace subsep

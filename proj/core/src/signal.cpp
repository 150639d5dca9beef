#include "subsep/signal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subsep/random.hpp"

namespace subsep {

Signal::Signal(Eigen::VectorXd samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
    if (samples_.size() < 2)
        throw InvalidSpecError("Signal: need at least 2 samples, got " +
                               std::to_string(samples_.size()));
    if (!(dt_ > 0.0) || !std::isfinite(dt_))
        throw InvalidSpecError("Signal: dt must be positive and finite");
    if (!std::isfinite(t0_))
        throw InvalidSpecError("Signal: t0 must be finite");
    if (!samples_.allFinite())
        throw InvalidSpecError("Signal: samples must be finite");
}

Eigen::VectorXd Signal::time_grid() const {
    Eigen::VectorXd t(size());
    for (Eigen::Index i = 0; i < size(); ++i) t[i] = time(i);
    return t;
}

void SynthSpec::validate() const {
    if (length < 2) throw InvalidSpecError("SynthSpec: length must be >= 2");
    if (noise_n_max < 0) throw InvalidSpecError("SynthSpec: noise_n_max must be >= 0");
    if (2 * static_cast<Eigen::Index>(noise_n_max) >= length)
        throw InvalidSpecError("SynthSpec: noise_n_max = " + std::to_string(noise_n_max) +
                               " aliases on " + std::to_string(length) +
                               " samples (need noise_n_max < length/2)");
    if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude))
        throw InvalidSpecError("SynthSpec: noise_amplitude must be >= 0 and finite");
    if (wavelet_count < 1) throw InvalidSpecError("SynthSpec: wavelet_count must be >= 1");
    const auto [wmin, wmax] = wavelet_width_range;
    if (!(wmin > 0.0) || !(wmax > 0.0) || wmin > wmax)
        throw InvalidSpecError("SynthSpec: wavelet_width_range must satisfy 0 < min <= max");
}

Signal central_difference(const Signal& s) {
    const Eigen::Index n = s.size();
    if (n < 3)
        throw DimensionError("central_difference: need at least 3 samples, got " +
                             std::to_string(n));
    const Eigen::VectorXd& y = s.samples();
    const double dt = s.dt();
    Eigen::VectorXd d(n);
    d[0] = (y[1] - y[0]) / dt;
    for (Eigen::Index i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
    d[n - 1] = (y[n - 1] - y[n - 2]) / dt;
    return s.with_samples(std::move(d));
}

Signal synth_noise(const SynthSpec& spec) {
    spec.validate();
    const Eigen::Index n = spec.length;
    RandomStream rng(spec.seed);

    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    const double a0 = rng.gaussian();
    y.array() += a0;
    for (int k = 1; k <= spec.noise_n_max; ++k) {
        const double a = rng.gaussian();
        const double b = rng.gaussian();
        const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double phase = w * static_cast<double>(i);
            y[i] += a * std::cos(phase) + b * std::sin(phase);
        }
    }

    if (spec.noise_amplitude == 0.0) return Signal(Eigen::VectorXd::Zero(n), 1.0, 0.0);
    const double rms = std::sqrt(y.squaredNorm() / static_cast<double>(n));
    if (rms == 0.0)
        throw NumericError("synth_noise: drawn coefficients vanished, cannot scale");
    y *= spec.noise_amplitude / rms;
    return Signal(std::move(y), 1.0, 0.0);
}

double ricker(double x) {
    const double x2 = x * x;
    return (1.0 - x2) * std::exp(-0.5 * x2);
}

Signal synth_broadband(const SynthSpec& spec) {
    spec.validate();
    const Eigen::Index n = spec.length;
    RandomStream rng(spec.seed);

    // Centers stay inside the middle of the trace so the pulses are not
    // truncated at the ends.
    const double len = static_cast<double>(n);
    const double lo = 0.08 * len;
    const double hi = 0.92 * len;

    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int w = 0; w < spec.wavelet_count; ++w) {
        const double center = rng.uniform(lo, hi);
        const double width = rng.uniform(spec.wavelet_width_range.first,
                                         spec.wavelet_width_range.second);
        const double amp = rng.uniform(0.5, 1.5) * rng.sign();
        for (Eigen::Index i = 0; i < n; ++i)
            y[i] += amp * ricker((static_cast<double>(i) - center) / width);
    }
    return Signal(std::move(y), 1.0, 0.0);
}

namespace {

std::string trim_cr(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

}  // namespace

Signal read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || trim_cr(line) != "t,value")
        throw CsvError(path.string() + ": expected header 't,value'");

    std::vector<double> ts, vs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = trim_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CsvError(path.string() + ":" + std::to_string(row) + ": missing comma");
        std::size_t pos_t = 0, pos_v = 0;
        double t, v;
        try {
            t = std::stod(line.substr(0, comma), &pos_t);
            v = std::stod(line.substr(comma + 1), &pos_v);
        } catch (const std::exception&) {
            throw CsvError(path.string() + ":" + std::to_string(row) + ": malformed number");
        }
        if (pos_t != comma || pos_v != line.size() - comma - 1)
            throw CsvError(path.string() + ":" + std::to_string(row) + ": trailing characters");
        ts.push_back(t);
        vs.push_back(v);
    }
    if (ts.size() < 2) throw CsvError(path.string() + ": need at least 2 rows");

    const double dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
    if (!(dt > 0.0)) throw CsvError(path.string() + ": time column must be increasing");
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double step = ts[i + 1] - ts[i];
        if (!(step > 0.0)) throw CsvError(path.string() + ": time column must be strictly increasing");
        if (std::abs(step - dt) > 1e-9 * dt)
            throw CsvError(path.string() + ": non-uniform spacing near row " + std::to_string(i + 2));
    }

    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(vs.data(), static_cast<Eigen::Index>(vs.size()));
    return Signal(std::move(y), dt, ts.front());
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot open " + path.string() + " for writing");
    out << "t,value\n";
    char buf[64];
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", s.time(i));
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", s.samples()[i]);
        out << buf << '\n';
    }
    if (!out) throw CsvError("write failed for " + path.string());
}

}  // namespace subsep

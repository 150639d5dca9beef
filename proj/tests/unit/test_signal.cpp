#include "subsep/signal.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "subsep/random.hpp"
#include "subsep/subspace.hpp"

using namespace subsep;
namespace fs = std::filesystem;

namespace {

Signal make_signal(std::initializer_list<double> values, double dt = 1.0, double t0 = 0.0) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return Signal(std::move(v), dt, t0);
}

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("Signal validates its invariants") {
    CHECK_THROWS_AS(Signal(Eigen::VectorXd::Zero(1), 1.0), InvalidSpecError);
    CHECK_THROWS_AS(Signal(Eigen::VectorXd::Zero(4), 0.0), InvalidSpecError);
    CHECK_THROWS_AS(Signal(Eigen::VectorXd::Zero(4), -1.0), InvalidSpecError);
    Eigen::VectorXd bad = Eigen::VectorXd::Zero(4);
    bad[2] = std::nan("");
    CHECK_THROWS_AS(Signal(bad, 1.0), InvalidSpecError);

    const Signal s = make_signal({1.0, 2.0, 3.0}, 0.5, 10.0);
    CHECK(s.time(0) == 10.0);
    CHECK(s.time(2) == doctest::Approx(11.0));
}

TEST_CASE("central_difference on a constant is zero") {
    const Signal s = make_signal({5.0, 5.0, 5.0, 5.0});
    CHECK(central_difference(s).samples().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("central_difference recovers a linear slope at interior points") {
    const double k = 3.25, dt = 0.1;
    Eigen::VectorXd v(7);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = k * dt * static_cast<double>(i);
    const Signal d = central_difference(Signal(v, dt));
    for (Eigen::Index i = 1; i + 1 < d.size(); ++i)
        CHECK(d.samples()[i] == doctest::Approx(k).epsilon(1e-12));
}

TEST_CASE("central_difference of sin matches cos to 1e-4 inside") {
    const double dt = 0.01;
    const Eigen::Index n = 500;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::sin(dt * static_cast<double>(i));
    const Signal d = central_difference(Signal(v, dt));
    double worst = 0.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i)
        worst = std::max(worst, std::abs(d.samples()[i] - std::cos(dt * static_cast<double>(i))));
    CHECK(worst < 1e-4);
}

TEST_CASE("central_difference rejects short signals and is linear") {
    CHECK_THROWS_AS(central_difference(make_signal({1.0, 2.0})), DimensionError);

    RandomStream rng(42);
    Eigen::VectorXd f(33), g(33);
    for (Eigen::Index i = 0; i < 33; ++i) {
        f[i] = rng.gaussian();
        g[i] = rng.gaussian();
    }
    const double a = 1.7, b = -0.3;
    const Signal combo = central_difference(Signal(a * f + b * g, 0.2));
    const Eigen::VectorXd expect =
        a * central_difference(Signal(f, 0.2)).samples() + b * central_difference(Signal(g, 0.2)).samples();
    CHECK((combo.samples() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("synth_noise honors amplitude zero and n_max zero") {
    SynthSpec spec;
    spec.length = 64;
    spec.noise_n_max = 5;
    spec.noise_amplitude = 0.0;
    CHECK(synth_noise(spec).samples().cwiseAbs().maxCoeff() == 0.0);

    spec.noise_amplitude = 2.0;
    spec.noise_n_max = 0;
    const Signal dc = synth_noise(spec);
    CHECK((dc.samples().array() - dc.samples()[0]).abs().maxCoeff() < 1e-14);
    const double rms = std::sqrt(dc.samples().squaredNorm() / 64.0);
    CHECK(rms == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("synth_noise output lies in the noise subspace") {
    SynthSpec spec;
    spec.length = 403;
    spec.noise_n_max = 21;
    spec.seed = 9;
    const Signal noise = synth_noise(spec);

    const Projector p = orthonormalize(build_noise_atoms({403, 21, true}));
    const Signal inside = project_onto(p, noise);
    CHECK((inside.samples() - noise.samples()).norm() < 1e-10 * noise.samples().norm());
}

TEST_CASE("synth_noise rejects aliasing indices") {
    SynthSpec spec;
    spec.length = 40;
    spec.noise_n_max = 20;
    CHECK_THROWS_AS(synth_noise(spec), InvalidSpecError);
}

TEST_CASE("synth generators are bit-reproducible") {
    SynthSpec spec;
    spec.seed = 1234;
    const Signal a = synth_noise(spec), b = synth_noise(spec);
    CHECK(a.samples() == b.samples());
    const Signal c = synth_broadband(spec), d = synth_broadband(spec);
    CHECK(c.samples() == d.samples());
}

TEST_CASE("ricker pulse: unit peak, symmetry, zero crossings at +-1") {
    CHECK(ricker(0.0) == 1.0);
    CHECK(ricker(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ricker(-1.0) == doctest::Approx(0.0).epsilon(1e-15));
    for (double x : {0.3, 0.9, 1.7, 2.4}) CHECK(ricker(x) == doctest::Approx(ricker(-x)));
    for (double x : {0.2, 0.5, 0.8, 1.5, 3.0}) CHECK(std::abs(ricker(x)) < 1.0);
}

TEST_CASE("a mid-trace ricker pulse has its extremum at the center sample") {
    const Eigen::Index n = 101;
    const double center = 50.0, width = 6.0;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = ricker((static_cast<double>(i) - center) / width);
    Eigen::Index argmax = 0;
    v.cwiseAbs().maxCoeff(&argmax);
    CHECK(argmax == 50);
    for (Eigen::Index k = 0; k < n; ++k)  // symmetric about the center
        CHECK(v[k] == doctest::Approx(v[n - 1 - k]));
}

TEST_CASE("disjoint pulses superpose pointwise") {
    const Eigen::Index n = 200;
    Eigen::VectorXd one = Eigen::VectorXd::Zero(n), two = Eigen::VectorXd::Zero(n), both(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        one[i] = ricker((static_cast<double>(i) - 50.0) / 4.0);
        two[i] = ricker((static_cast<double>(i) - 150.0) / 4.0);
        both[i] = one[i] + two[i];
    }
    CHECK((both - (one + two)).cwiseAbs().maxCoeff() == 0.0);
    // supports are effectively disjoint: each pulse is negligible at the other center
    CHECK(std::abs(one[150]) < 1e-100);
}

TEST_CASE("synth_broadband wavelet train is prefix-additive in the count") {
    SynthSpec base;
    base.seed = 77;
    SynthSpec more = base;
    more.wavelet_count = base.wavelet_count + 1;
    const Eigen::VectorXd extra = synth_broadband(more).samples() - synth_broadband(base).samples();
    // the difference is one more pulse: nonzero, bounded by 1.5 in magnitude
    CHECK(extra.cwiseAbs().maxCoeff() > 0.1);
    CHECK(extra.cwiseAbs().maxCoeff() <= 1.5 + 1e-12);
}

TEST_CASE("default broadband spec concentrates energy above the noise band") {
    const SynthSpec spec;  // defaults: length 403, seed 1, n_max 21
    const Signal s = synth_broadband(spec);
    const double frac = oracles::inband_energy_fraction(s.samples(), spec.noise_n_max);
    CHECK(frac < 0.20);
}

TEST_CASE("CSV round trip is exact and the reader validates") {
    RandomStream rng(5);
    Eigen::VectorXd v(37);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.gaussian() * 1e3;
    const Signal s(v, 0.0125, -3.5);

    const fs::path path = temp_file("subsep_test_roundtrip.csv");
    write_signal_csv(path, s);
    const Signal back = read_signal_csv(path);
    CHECK(back.samples() == s.samples());
    CHECK(back.dt() == doctest::Approx(s.dt()).epsilon(1e-12));
    CHECK(back.t0() == doctest::Approx(s.t0()).epsilon(1e-12));
    fs::remove(path);
}

TEST_CASE("CSV reader rejects malformed input") {
    const fs::path path = temp_file("subsep_test_bad.csv");

    auto write_text = [&](const char* text) {
        std::ofstream out(path);
        out << text;
    };

    write_text("time,value\n0,1\n1,2\n");
    CHECK_THROWS_AS(read_signal_csv(path), CsvError);

    write_text("t,value\n0,1\n");
    CHECK_THROWS_AS(read_signal_csv(path), CsvError);  // too short

    write_text("t,value\n0,1\n1,2\n2.5,3\n");
    CHECK_THROWS_AS(read_signal_csv(path), CsvError);  // non-uniform spacing

    write_text("t,value\n0,1\n1,abc\n");
    CHECK_THROWS_AS(read_signal_csv(path), CsvError);

    write_text("t,value\n1,1\n1,2\n");
    CHECK_THROWS_AS(read_signal_csv(path), CsvError);  // not increasing

    fs::remove(path);
}

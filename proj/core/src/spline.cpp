#include "subsep/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace subsep {

Partition::Partition(double c, double d, std::vector<double> interior)
    : c_(c), d_(d), interior_(std::move(interior)) {
    if (!std::isfinite(c_) || !std::isfinite(d_) || !(c_ < d_))
        throw InvalidSpecError("Partition: need finite c < d");
    double prev = c_;
    for (double x : interior_) {
        if (!std::isfinite(x) || !(prev < x))
            throw InvalidSpecError("Partition: interior knots must be strictly increasing inside (c, d)");
        prev = x;
    }
    if (!interior_.empty() && !(interior_.back() < d_))
        throw InvalidSpecError("Partition: interior knots must lie strictly below d");
}

std::string to_json(const Partition& p) {
    nlohmann::json j;
    j["c"] = p.c();
    j["d"] = p.d();
    j["interior"] = p.interior();
    return j.dump();
}

Partition partition_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpecError(std::string("Partition JSON: ") + e.what());
    }
    if (!j.contains("c") || !j.contains("d") || !j.contains("interior"))
        throw InvalidSpecError("Partition JSON: need fields c, d, interior");
    return Partition(j["c"].get<double>(), j["d"].get<double>(),
                     j["interior"].get<std::vector<double>>());
}

ExtendedPartition::ExtendedPartition(std::vector<double> knots, int order)
    : knots_(std::move(knots)), order_(order) {
    if (order_ < 1) throw InvalidSpecError("ExtendedPartition: order must be >= 1");
    if (knots_.size() < static_cast<std::size_t>(order_) + 1)
        throw InvalidSpecError("ExtendedPartition: need at least order+1 knots");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        if (!(knots_[i] <= knots_[i + 1]))
            throw InvalidSpecError("ExtendedPartition: knots must be nondecreasing");
    if (!(knots_.front() < knots_.back()))
        throw InvalidSpecError("ExtendedPartition: knot vector spans an empty interval");
}

ExtendedPartition make_extended(const Partition& p, int order) {
    if (order < 1) throw InvalidSpecError("make_extended: order must be >= 1");
    std::vector<double> knots;
    knots.reserve(2 * static_cast<std::size_t>(order) + p.interior().size());
    knots.insert(knots.end(), static_cast<std::size_t>(order), p.c());
    knots.insert(knots.end(), p.interior().begin(), p.interior().end());
    knots.insert(knots.end(), static_cast<std::size_t>(order), p.d());
    return ExtendedPartition(std::move(knots), order);
}

BSplineBasis::BSplineBasis(ExtendedPartition extended)
    : knots_(extended.knots()),
      order_(extended.order()),
      m_count_(static_cast<Eigen::Index>(knots_.size()) - order_) {}

double BSplineBasis::cox_de_boor(int m, Eigen::Index j, double x) const {
    if (m == 1) {
        const double lo = knots_[static_cast<std::size_t>(j)];
        const double hi = knots_[static_cast<std::size_t>(j) + 1];
        if (lo <= x && x < hi) return 1.0;
        // right end of the domain: the last nonempty interval is closed
        if (x == knots_.back() && x == hi && lo < hi) return 1.0;
        return 0.0;
    }
    const double yj = knots_[static_cast<std::size_t>(j)];
    const double yjm1 = knots_[static_cast<std::size_t>(j) + m - 1];
    const double yj1 = knots_[static_cast<std::size_t>(j) + 1];
    const double yjm = knots_[static_cast<std::size_t>(j) + m];
    double acc = 0.0;
    if (yjm1 > yj) acc += (x - yj) / (yjm1 - yj) * cox_de_boor(m - 1, j, x);
    if (yjm > yj1) acc += (yjm - x) / (yjm - yj1) * cox_de_boor(m - 1, j + 1, x);
    return acc;
}

double BSplineBasis::eval(Eigen::Index j, double x) const {
    if (j < 0 || j >= m_count_)
        throw IndexError("BSplineBasis::eval: index " + std::to_string(j) + " outside [0, " +
                         std::to_string(m_count_ - 1) + "]");
    if (!(x >= domain_lo() && x <= domain_hi()))
        throw DomainError("BSplineBasis::eval: x = " + std::to_string(x) + " outside [" +
                          std::to_string(domain_lo()) + ", " + std::to_string(domain_hi()) + "]");
    // outside the local support the value is 0 (except at the closed right end,
    // where the recursion itself resolves the boundary)
    if (x < knots_[static_cast<std::size_t>(j)] || x > knots_[static_cast<std::size_t>(j) + order_])
        return 0.0;
    return cox_de_boor(order_, j, x);
}

Eigen::MatrixXd design_matrix(const BSplineBasis& basis, const Eigen::VectorXd& grid) {
    const Eigen::Index rows = grid.size();
    const Eigen::Index cols = basis.size();
    const auto& knots = basis.knots();
    const int m = basis.order();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double x = grid[i];
        if (!(x >= basis.domain_lo() && x <= basis.domain_hi()))
            throw DomainError("design_matrix: grid point " + std::to_string(x) +
                              " outside the basis domain");
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (x < knots[static_cast<std::size_t>(j)]) break;  // supports start further right
            if (x > knots[static_cast<std::size_t>(j) + m]) continue;
            out(i, j) = basis.eval(j, x);
        }
    }
    return out;
}

Signal curvature(const Signal& s, const CurvatureConfig& cfg) {
    if (s.size() < 5)
        throw DimensionError("curvature: need at least 5 samples, got " + std::to_string(s.size()));
    const Signal d1 = central_difference(s);
    const Signal d2 = central_difference(d1);
    const Eigen::VectorXd& f1 = d1.samples();
    const Eigen::VectorXd& f2 = d2.samples();

    Eigen::VectorXd kappa(s.size());
    if (cfg.mode == CurvatureConfig::Mode::paper_literal) {
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (std::abs(f1[i]) >= 1.0)
                throw DomainError("curvature (paper-literal): |f'| >= 1 at sample " +
                                  std::to_string(i));
        for (Eigen::Index i = 0; i < s.size(); ++i)
            kappa[i] = f2[i] / std::pow(1.0 - f1[i] * f1[i], 1.5);
    } else {
        for (Eigen::Index i = 0; i < s.size(); ++i)
            kappa[i] = f2[i] / std::pow(1.0 + f1[i] * f1[i], 1.5);
    }
    return s.with_samples(std::move(kappa));
}

namespace {

/// Zero crossings of the curvature derivative, linearly interpolated,
/// restricted to the open interval; below-threshold plateaus flanked by
/// opposite signs contribute their midpoint.
std::vector<double> critical_points(const Signal& s, const CurvatureConfig& cfg) {
    const Signal kp = central_difference(curvature(s, cfg));
    const Eigen::VectorXd& v = kp.samples();
    const Eigen::Index n = v.size();

    const double vmax = v.cwiseAbs().maxCoeff();
    const double tol = cfg.zero_tol * vmax;
    std::vector<int> sgn(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        sgn[static_cast<std::size_t>(i)] = std::abs(v[i]) <= tol ? 0 : (v[i] > 0.0 ? 1 : -1);

    const double c = s.time(0);
    const double d = s.time(n - 1);
    std::vector<double> out;
    auto push = [&](double x) {
        if (x > c && x < d && (out.empty() || x > out.back())) out.push_back(x);
    };

    Eigen::Index i = 0;
    while (i + 1 < n) {
        const int a = sgn[static_cast<std::size_t>(i)];
        const int b = sgn[static_cast<std::size_t>(i + 1)];
        if (a != 0 && b != 0) {
            if (a != b) push(s.time(i) + s.dt() * v[i] / (v[i] - v[i + 1]));
            ++i;
            continue;
        }
        if (a != 0 && b == 0) {
            Eigen::Index j = i + 1;
            while (j < n && sgn[static_cast<std::size_t>(j)] == 0) ++j;
            if (j < n && sgn[static_cast<std::size_t>(j)] == -a)
                push(0.5 * (s.time(i + 1) + s.time(j - 1)));
            i = j > i + 1 ? j - 1 : i + 1;
            continue;
        }
        ++i;  // leading plateau or consecutive zeros
    }
    return out;
}

}  // namespace

Partition curvature_knots(const Signal& s, Eigen::Index target, const CurvatureConfig& cfg) {
    if (s.size() < 5)
        throw DimensionError("curvature_knots: need at least 5 samples, got " +
                             std::to_string(s.size()));
    const std::vector<double> crit = critical_points(s, cfg);
    const auto found = static_cast<Eigen::Index>(crit.size());
    if (target < found)
        throw CapacityError("curvature_knots: " + std::to_string(found) +
                                " critical points exceed the knot budget " + std::to_string(target),
                            found);

    const double c = s.time(0);
    const double d = s.time(s.size() - 1);

    // Segment boundaries: interval ends plus the critical points.
    std::vector<double> bounds;
    bounds.reserve(crit.size() + 2);
    bounds.push_back(c);
    bounds.insert(bounds.end(), crit.begin(), crit.end());
    bounds.push_back(d);
    const std::size_t nseg = bounds.size() - 1;

    // Uniform subdivision: spend the remaining budget one insertion at a
    // time on the segment whose current piece is longest (ties -> leftmost).
    std::vector<Eigen::Index> inserts(nseg, 0);
    for (Eigen::Index left = target - found; left > 0; --left) {
        std::size_t best = 0;
        double best_piece = -1.0;
        for (std::size_t k = 0; k < nseg; ++k) {
            const double piece =
                (bounds[k + 1] - bounds[k]) / static_cast<double>(inserts[k] + 1);
            if (piece > best_piece) {
                best_piece = piece;
                best = k;
            }
        }
        ++inserts[best];
    }

    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(target));
    for (std::size_t k = 0; k < nseg; ++k) {
        const double len = bounds[k + 1] - bounds[k];
        for (Eigen::Index j = 1; j <= inserts[k]; ++j)
            knots.push_back(bounds[k] + len * static_cast<double>(j) /
                                            static_cast<double>(inserts[k] + 1));
        if (k + 1 < nseg) knots.push_back(bounds[k + 1]);
    }
    std::sort(knots.begin(), knots.end());
    return Partition(c, d, std::move(knots));
}

}  // namespace subsep

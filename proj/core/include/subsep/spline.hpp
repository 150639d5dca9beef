#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "subsep/errors.hpp"
#include "subsep/signal.hpp"

namespace subsep {

/**
 * Knot set c < x_1 < ... < x_N < d over a closed interval [c, d].
 * N may be zero. Construction validates the ordering.
 */
class Partition {
public:
    Partition(double c, double d, std::vector<double> interior);

    double c() const { return c_; }
    double d() const { return d_; }
    const std::vector<double>& interior() const { return interior_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(interior_.size()); }

private:
    double c_;
    double d_;
    std::vector<double> interior_;
};

/// JSON round trip for knot sets: {"c": ..., "d": ..., "interior": [...]}.
std::string to_json(const Partition& p);
Partition partition_from_json(const std::string& text);

/**
 * Nondecreasing knot vector together with a spline order m. The generic
 * constructor accepts any valid knot vector with at least m+1 knots;
 * make_extended() builds the clamped extension of a Partition.
 */
class ExtendedPartition {
public:
    ExtendedPartition(std::vector<double> knots, int order);

    int order() const { return order_; }
    const std::vector<double>& knots() const { return knots_; }

private:
    std::vector<double> knots_;
    int order_;
};

/**
 * Clamped extension: the m boundary knots coincide at c and at d, interior
 * knots are copied. The resulting basis reproduces constants and
 * interpolates at the interval ends.
 */
ExtendedPartition make_extended(const Partition& p, int order);

/**
 * B-spline basis over an extended partition, evaluated by the Cox-de Boor
 * recursion. There are M = #knots - m basis functions; basis function j
 * (0-based) vanishes outside [y_j, y_{j+m}]. Terms with coincident knots
 * (zero denominator) are defined as zero. The evaluation domain is
 * [first knot, last knot]; at the right end the last nonempty knot
 * interval is treated as closed, so a clamped basis still sums to one
 * there.
 */
class BSplineBasis {
public:
    explicit BSplineBasis(ExtendedPartition extended);

    int order() const { return order_; }
    Eigen::Index size() const { return m_count_; }
    const std::vector<double>& knots() const { return knots_; }
    double domain_lo() const { return knots_.front(); }
    double domain_hi() const { return knots_.back(); }

    /// Value of basis function j at x. Throws IndexError / DomainError.
    double eval(Eigen::Index j, double x) const;

private:
    double cox_de_boor(int m, Eigen::Index j, double x) const;

    std::vector<double> knots_;
    int order_;
    Eigen::Index m_count_;
};

/**
 * Collocation matrix: entry (i, j) = B_j(grid[i]). For a clamped basis
 * every row sums to one, and each row has at most m nonzeros.
 */
Eigen::MatrixXd design_matrix(const BSplineBasis& basis, const Eigen::VectorXd& grid);

/// Curvature formula selection and the zero threshold for critical points.
struct CurvatureConfig {
    enum class Mode {
        standard,       ///< f'' / (1 + f'^2)^{3/2}
        paper_literal,  ///< f'' / (1 - f'^2)^{3/2}, defined only for |f'| < 1
    };
    Mode mode = Mode::standard;
    /// Relative threshold: curvature-derivative values below
    /// zero_tol * max|kappa'| count as zero when locating critical points.
    double zero_tol = 1e-12;
};

/**
 * Discrete curvature of a sampled signal using central differences.
 * paper_literal mode throws DomainError (naming the first offending
 * sample) when |f'| >= 1 anywhere.
 */
Signal curvature(const Signal& s, const CurvatureConfig& cfg = {});

/**
 * Curvature-driven knot selection. Initial knots are the zero crossings
 * of the curvature's discrete derivative (linearly interpolated; plateaus
 * of below-threshold values flanked by opposite signs contribute their
 * midpoint), restricted to the open sampling interval. The remaining
 * budget is spent by uniform subdivision: each inter-knot gap receives
 * equally spaced insertions, and the gap whose current piece is longest
 * (ties -> leftmost) is refined first, until exactly `target` interior
 * knots exist.
 *
 * Throws CapacityError when more critical points are detected than
 * `target` allows.
 */
Partition curvature_knots(const Signal& s, Eigen::Index target, const CurvatureConfig& cfg = {});

}  // namespace subsep

#pragma once

#include <Eigen/Core>

#include "subsep/errors.hpp"
#include "subsep/signal.hpp"

namespace subsep {

/// The fixed low-frequency noise subspace: Fourier indices |n| <= n_max on L samples.
struct NoiseSubspaceSpec {
    Eigen::Index length = 403;
    int n_max = 21;
    bool include_dc = true;  ///< keep the constant vector in the subspace

    void validate() const;  ///< throws InvalidSpecError
};

/**
 * Real spanning set of the noise subspace: the constant column (when
 * include_dc), then cos(2*pi*n*i/L) and sin(2*pi*n*i/L) for n = 1..n_max.
 * Spans the same real subspace as the complex exponentials with
 * |n| <= n_max. Columns are pairwise orthogonal on the uniform grid.
 */
Eigen::MatrixXd build_noise_atoms(const NoiseSubspaceSpec& spec);

/**
 * Orthogonal projector held as an explicit orthonormal basis Q of the
 * subspace. "project_onto" maps to Q Q^T s, "project_out" to s - Q Q^T s;
 * both are computed from a single Q^T s product, so they sum to the input.
 */
class Projector {
public:
    explicit Projector(Eigen::MatrixXd orthonormal_basis);

    const Eigen::MatrixXd& basis() const { return q_; }
    Eigen::Index ambient() const { return q_.rows(); }
    Eigen::Index rank() const { return q_.cols(); }

private:
    Eigen::MatrixXd q_;
};

/**
 * Pivoted modified Gram-Schmidt with re-orthogonalization. Columns whose
 * residual norm falls below tol times the largest input column norm are
 * dropped; throws RankError when nothing survives.
 */
Projector orthonormalize(const Eigen::MatrixXd& atoms, double tol = 1e-10);

/// Component inside the projector's subspace, Q(Q^T v).
Eigen::VectorXd project_onto(const Projector& p, const Eigen::VectorXd& v);
/// Complementary component, v - Q(Q^T v).
Eigen::VectorXd project_out(const Projector& p, const Eigen::VectorXd& v);

Signal project_onto(const Projector& p, const Signal& s);
Signal project_out(const Projector& p, const Signal& s);

/// Column-wise project_out over a design matrix: the solver dictionary.
Eigen::MatrixXd project_atoms(const Projector& p, const Eigen::MatrixXd& design);

}  // namespace subsep

#pragma once

#include <Eigen/Core>
#include <vector>

#include "subsep/errors.hpp"

namespace subsep {

/// Settings for the regularized re-weighted least-squares solver.
struct FocussConfig {
    double q = 0.5;             ///< sparsity exponent, 0 < q <= 1
    double lambda = 1e-8;       ///< regularization of the weighted solve
    double epsilon = 1e-8;      ///< relative step tolerance for convergence
    int max_iter = 500;
    double prune_floor = 1e-12; ///< coefficients below prune_floor * max|c| freeze at zero

    enum class Init { ridge, ones };
    Init init = Init::ridge;

    void validate() const;  ///< throws InvalidSpecError
};

/// Converged coefficients plus the iteration record.
struct FocussResult {
    Eigen::VectorXd coefficients;
    int iterations = 0;                  ///< number of update steps taken
    bool converged = false;              ///< step tolerance reached before max_iter
    std::vector<double> functional_trace;///< objective after init and after each step
    double residual_norm = 0.0;          ///< ||target - dict * coefficients||
};

/// Objective: sum_i |c_i|^q + lambda * ||target - dict * c||^2, with |0|^q = 0.
double functional_value(const Eigen::VectorXd& c, const Eigen::MatrixXd& dict,
                        const Eigen::VectorXd& target, double q, double lambda);

/**
 * One re-weighted least-squares update. Weights w_i = |c_prev_i|^{1-q/2}
 * (entries below prune_floor * max|c_prev| get weight zero and stay zero);
 * with A = dict * diag(w), returns
 *     diag(w) * A^T (A A^T + lambda I)^{-1} target,
 * solved through whichever of the L-sized or M-sized symmetric systems is
 * smaller -- the two are algebraically identical.
 */
Eigen::VectorXd focuss_step(const Eigen::VectorXd& c_prev, const Eigen::MatrixXd& dict,
                            const Eigen::VectorXd& target, const FocussConfig& cfg);

/**
 * Full solver loop: initialize per cfg.init (ridge: one unweighted
 * regularized solve; ones: all-ones vector), iterate focuss_step until
 * ||c_k - c_{k-1}|| <= epsilon * max(1, ||c_{k-1}||) or max_iter.
 * Exhausting max_iter is reported through converged = false, not an error.
 * Throws InvalidSpecError for an all-zero dictionary column.
 */
FocussResult run_focuss(const Eigen::MatrixXd& dict, const Eigen::VectorXd& target,
                        const FocussConfig& cfg);

/**
 * argmin_c ||target - dict c||^2 + lambda ||c||^2. lambda = 0 is allowed
 * only when the normal matrix is nonsingular; a singular system raises
 * ConditioningError.
 */
Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& dict, const Eigen::VectorXd& target,
                            double lambda);

}  // namespace subsep

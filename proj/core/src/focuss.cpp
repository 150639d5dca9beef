#include "subsep/focuss.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <string>
#include <utility>

namespace subsep {

void FocussConfig::validate() const {
    if (!(q > 0.0) || !(q <= 1.0))
        throw InvalidSpecError("FocussConfig: q must lie in (0, 1]");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidSpecError("FocussConfig: lambda must be positive and finite");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw InvalidSpecError("FocussConfig: epsilon must be positive and finite");
    if (max_iter < 1) throw InvalidSpecError("FocussConfig: max_iter must be >= 1");
    if (!(prune_floor >= 0.0) || !std::isfinite(prune_floor))
        throw InvalidSpecError("FocussConfig: prune_floor must be >= 0 and finite");
}

double functional_value(const Eigen::VectorXd& c, const Eigen::MatrixXd& dict,
                        const Eigen::VectorXd& target, double q, double lambda) {
    if (dict.cols() != c.size() || dict.rows() != target.size())
        throw DimensionError("functional_value: dimension mismatch");
    long double sparsity = 0.0L;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double a = std::abs(c[i]);
        if (a > 0.0) sparsity += std::pow(a, q);
    }
    const double residual = (target - dict * c).squaredNorm();
    return static_cast<double>(sparsity) + lambda * residual;
}

namespace {

/// Weights |c|^{1-q/2} with the prune floor applied; zero stays zero.
Eigen::VectorXd step_weights(const Eigen::VectorXd& c_prev, const FocussConfig& cfg) {
    const double cmax = c_prev.cwiseAbs().maxCoeff();
    const double floor = cfg.prune_floor * cmax;
    const double expo = 1.0 - 0.5 * cfg.q;
    Eigen::VectorXd w(c_prev.size());
    for (Eigen::Index i = 0; i < c_prev.size(); ++i) {
        const double a = std::abs(c_prev[i]);
        w[i] = (a == 0.0 || a < floor) ? 0.0 : std::pow(a, expo);
    }
    if (!w.allFinite())
        throw NumericError("focuss_step: non-finite weights (coefficients overflowed)");
    return w;
}

/// The regularized weighted solve shared by focuss_step and run_focuss.
/// `gram` and `proj` (dict^T dict and dict^T target) are used on the
/// M-sized path and may be precomputed by the caller.
Eigen::VectorXd weighted_step(const Eigen::MatrixXd& dict, const Eigen::MatrixXd& gram,
                              const Eigen::VectorXd& proj, const Eigen::VectorXd& target,
                              const Eigen::VectorXd& w, double lambda) {
    const Eigen::Index rows = dict.rows();
    const Eigen::Index cols = dict.cols();
    if (w.maxCoeff() == 0.0 && w.minCoeff() == 0.0) return Eigen::VectorXd::Zero(cols);

    if (cols <= rows) {
        // M-sized system: c = W (W G W + lambda I)^{-1} W h
        Eigen::MatrixXd sys = w.asDiagonal() * gram * w.asDiagonal();
        sys.diagonal().array() += lambda;
        Eigen::LLT<Eigen::MatrixXd> llt(sys);
        if (llt.info() != Eigen::Success)
            throw ConditioningError("focuss_step: Cholesky failed on the weighted system at lambda = " +
                                        std::to_string(lambda),
                                    lambda);
        return w.asDiagonal() * llt.solve(w.asDiagonal() * proj);
    }
    // L-sized system: c = W^2 dict^T (dict W^2 dict^T + lambda I)^{-1} target
    const Eigen::VectorXd w2 = w.array().square();
    Eigen::MatrixXd sys = dict * w2.asDiagonal() * dict.transpose();
    sys.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(sys);
    if (llt.info() != Eigen::Success)
        throw ConditioningError("focuss_step: Cholesky failed on the weighted system at lambda = " +
                                    std::to_string(lambda),
                                lambda);
    return w2.asDiagonal() * (dict.transpose() * llt.solve(target));
}

void check_dict(const Eigen::MatrixXd& dict, const Eigen::VectorXd& target) {
    if (dict.rows() != target.size())
        throw DimensionError("focuss: dictionary has " + std::to_string(dict.rows()) +
                             " rows, target has " + std::to_string(target.size()));
    if (dict.cols() == 0) throw DimensionError("focuss: empty dictionary");
}

}  // namespace

Eigen::VectorXd focuss_step(const Eigen::VectorXd& c_prev, const Eigen::MatrixXd& dict,
                            const Eigen::VectorXd& target, const FocussConfig& cfg) {
    cfg.validate();
    check_dict(dict, target);
    if (c_prev.size() != dict.cols())
        throw DimensionError("focuss_step: coefficient length does not match dictionary");
    if (!c_prev.allFinite()) throw NumericError("focuss_step: non-finite coefficients");

    const Eigen::VectorXd w = step_weights(c_prev, cfg);
    if (dict.cols() <= dict.rows()) {
        const Eigen::MatrixXd gram = dict.transpose() * dict;
        const Eigen::VectorXd proj = dict.transpose() * target;
        return weighted_step(dict, gram, proj, target, w, cfg.lambda);
    }
    return weighted_step(dict, Eigen::MatrixXd(), Eigen::VectorXd(), target, w, cfg.lambda);
}

FocussResult run_focuss(const Eigen::MatrixXd& dict, const Eigen::VectorXd& target,
                        const FocussConfig& cfg) {
    cfg.validate();
    check_dict(dict, target);
    for (Eigen::Index j = 0; j < dict.cols(); ++j)
        if (dict.col(j).norm() == 0.0)
            throw InvalidSpecError("run_focuss: dictionary column " + std::to_string(j) +
                                   " is identically zero");

    const bool use_gram = dict.cols() <= dict.rows();
    Eigen::MatrixXd gram;
    Eigen::VectorXd proj;
    if (use_gram) {
        gram = dict.transpose() * dict;
        proj = dict.transpose() * target;
    }

    Eigen::VectorXd c = cfg.init == FocussConfig::Init::ridge
                            ? ridge_solve(dict, target, cfg.lambda)
                            : Eigen::VectorXd::Ones(dict.cols());

    FocussResult result;
    result.functional_trace.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);
    result.functional_trace.push_back(functional_value(c, dict, target, cfg.q, cfg.lambda));

    for (int k = 1; k <= cfg.max_iter; ++k) {
        const Eigen::VectorXd w = step_weights(c, cfg);
        Eigen::VectorXd next = weighted_step(dict, gram, proj, target, w, cfg.lambda);
        result.functional_trace.push_back(
            functional_value(next, dict, target, cfg.q, cfg.lambda));
        const double change = (next - c).norm();
        const double scale = std::max(1.0, c.norm());
        c = std::move(next);
        result.iterations = k;
        if (change <= cfg.epsilon * scale) {
            result.converged = true;
            break;
        }
    }

    result.coefficients = std::move(c);
    result.residual_norm = (target - dict * result.coefficients).norm();
    return result;
}

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& dict, const Eigen::VectorXd& target,
                            double lambda) {
    check_dict(dict, target);
    if (lambda < 0.0) throw InvalidSpecError("ridge_solve: lambda must be >= 0");

    if (lambda == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dict);
        if (qr.rank() < dict.cols())
            throw ConditioningError("ridge_solve: normal matrix singular at lambda = 0", 0.0);
        return qr.solve(target);
    }

    if (dict.cols() <= dict.rows()) {
        Eigen::MatrixXd sys = dict.transpose() * dict;
        sys.diagonal().array() += lambda;
        Eigen::LLT<Eigen::MatrixXd> llt(sys);
        if (llt.info() != Eigen::Success)
            throw ConditioningError("ridge_solve: Cholesky failed at lambda = " +
                                        std::to_string(lambda),
                                    lambda);
        return llt.solve(dict.transpose() * target);
    }
    Eigen::MatrixXd sys = dict * dict.transpose();
    sys.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(sys);
    if (llt.info() != Eigen::Success)
        throw ConditioningError("ridge_solve: Cholesky failed at lambda = " +
                                    std::to_string(lambda),
                                lambda);
    return dict.transpose() * llt.solve(target);
}

}  // namespace subsep

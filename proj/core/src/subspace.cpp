#include "subsep/subspace.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace subsep {

void NoiseSubspaceSpec::validate() const {
    if (length < 2) throw InvalidSpecError("NoiseSubspaceSpec: length must be >= 2");
    if (n_max < 0) throw InvalidSpecError("NoiseSubspaceSpec: n_max must be >= 0");
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(n_max) + (include_dc ? 1 : 0);
    if (dim > length)
        throw InvalidSpecError("NoiseSubspaceSpec: subspace dimension " + std::to_string(dim) +
                               " exceeds ambient dimension " + std::to_string(length));
    if (dim == 0)
        throw InvalidSpecError("NoiseSubspaceSpec: empty subspace (n_max = 0 without DC)");
}

Eigen::MatrixXd build_noise_atoms(const NoiseSubspaceSpec& spec) {
    spec.validate();
    const Eigen::Index n = spec.length;
    const Eigen::Index cols = 2 * static_cast<Eigen::Index>(spec.n_max) + (spec.include_dc ? 1 : 0);
    Eigen::MatrixXd atoms(n, cols);
    Eigen::Index col = 0;
    if (spec.include_dc) atoms.col(col++).setOnes();
    for (int k = 1; k <= spec.n_max; ++k) {
        const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double phase = w * static_cast<double>(i);
            atoms(i, col) = std::cos(phase);
            atoms(i, col + 1) = std::sin(phase);
        }
        col += 2;
    }
    return atoms;
}

Projector::Projector(Eigen::MatrixXd orthonormal_basis) : q_(std::move(orthonormal_basis)) {
    if (q_.cols() < 1 || q_.rows() < q_.cols())
        throw InvalidSpecError("Projector: basis must be a tall nonempty matrix");
}

Projector orthonormalize(const Eigen::MatrixXd& atoms, double tol) {
    if (atoms.cols() == 0 || atoms.rows() == 0)
        throw InvalidSpecError("orthonormalize: empty atom matrix");
    if (!(tol > 0.0)) throw InvalidSpecError("orthonormalize: tol must be positive");

    const double scale = atoms.colwise().norm().maxCoeff();
    const double cutoff = tol * scale;

    Eigen::MatrixXd work = atoms;
    const Eigen::Index cols = work.cols();
    std::vector<bool> used(static_cast<std::size_t>(cols), false);
    Eigen::MatrixXd q(atoms.rows(), cols);
    Eigen::Index rank = 0;

    for (Eigen::Index step = 0; step < cols; ++step) {
        // pivot: the remaining column with the largest residual norm
        Eigen::Index pivot = -1;
        double best = cutoff;
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double nrm = work.col(j).norm();
            if (nrm > best) {
                best = nrm;
                pivot = j;
            }
        }
        if (pivot < 0) break;  // everything left is below tolerance
        used[static_cast<std::size_t>(pivot)] = true;

        Eigen::VectorXd v = work.col(pivot);
        // one re-orthogonalization pass keeps the basis orthonormal to
        // machine precision even for nearly dependent atoms
        for (int pass = 0; pass < 2; ++pass)
            if (rank > 0) v -= q.leftCols(rank) * (q.leftCols(rank).transpose() * v);
        const double nrm = v.norm();
        if (nrm <= cutoff) continue;
        q.col(rank) = v / nrm;

        // deflate the remaining columns against the new direction
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!used[static_cast<std::size_t>(j)])
                work.col(j) -= q.col(rank) * q.col(rank).dot(work.col(j));
        ++rank;
    }

    if (rank == 0)
        throw RankError("orthonormalize: all columns below tolerance, rank is zero");
    return Projector(q.leftCols(rank));
}

namespace {

void check_length(const Projector& p, Eigen::Index n, const char* where) {
    if (n != p.ambient())
        throw DimensionError(std::string(where) + ": length " + std::to_string(n) +
                             " does not match projector ambient dimension " +
                             std::to_string(p.ambient()));
}

}  // namespace

Eigen::VectorXd project_onto(const Projector& p, const Eigen::VectorXd& v) {
    check_length(p, v.size(), "project_onto");
    return p.basis() * (p.basis().transpose() * v);
}

Eigen::VectorXd project_out(const Projector& p, const Eigen::VectorXd& v) {
    check_length(p, v.size(), "project_out");
    return v - p.basis() * (p.basis().transpose() * v);
}

Signal project_onto(const Projector& p, const Signal& s) {
    return s.with_samples(project_onto(p, s.samples()));
}

Signal project_out(const Projector& p, const Signal& s) {
    return s.with_samples(project_out(p, s.samples()));
}

Eigen::MatrixXd project_atoms(const Projector& p, const Eigen::MatrixXd& design) {
    if (design.rows() != p.ambient())
        throw DimensionError("project_atoms: design has " + std::to_string(design.rows()) +
                             " rows, projector ambient dimension is " +
                             std::to_string(p.ambient()));
    return design - p.basis() * (p.basis().transpose() * design);
}

}  // namespace subsep

#include "iastab/nnls.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace iastab {

namespace {
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
    Eigen::MatrixXd sub(A.rows(), passive.size());
    for (std::size_t j = 0; j < passive.size(); ++j) sub.col(j) = A.col(passive[j]);
    return sub.colPivHouseholderQr().solve(b);
}
} // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol) {
    if (A.cols() < 1) throw std::invalid_argument("nnls: A must have at least one column");
    if (A.rows() != b.size()) throw std::invalid_argument("nnls: dimension mismatch");
    if (!(tol > 0.0)) throw std::invalid_argument("nnls: tolerance must be > 0");

    const int n = int(A.cols());
    const int max_outer = 10 * n;
    NnlsResult res;

    std::vector<bool> in_passive(n, false);
    std::vector<int> passive;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    // Column-normalized gradient threshold: a_j^T r / ||a_j|| <= tol means
    // column j cannot shave more than ~tol off the residual norm.
    Eigen::VectorXd col_scale(n);
    for (int j = 0; j < n; ++j) col_scale[j] = std::max(1.0, A.col(j).norm());
    const double x_zero = 1e-14 * (1.0 + b.norm());

    int outer = 0;
    while (outer < max_outer) {
        // Gradient of 0.5||Ax-b||^2 is -w; a positive w_j on the active side
        // means relaxing x_j >= 0 still improves the fit.
        const Eigen::VectorXd w = A.transpose() * (b - A * x);
        int enter = -1;
        double w_max = 0.0;
        for (int j = 0; j < n; ++j) {
            const double wj = w[j] / col_scale[j];
            if (!in_passive[j] && wj > tol && wj > w_max) {
                w_max = wj;
                enter = j;
            }
        }
        if (enter < 0) {
            res.converged = true;
            break;
        }
        ++outer;
        in_passive[enter] = true;
        passive.push_back(enter);

        // Inner loop: step toward the unconstrained passive-set solution,
        // dropping coordinates the step pins at zero.
        while (!passive.empty()) {
            const Eigen::VectorXd zp = solve_passive(A, b, passive);
            bool feasible = true;
            for (int j = 0; j < int(passive.size()); ++j)
                if (zp[j] <= 0.0) { feasible = false; break; }
            if (feasible) {
                x.setZero();
                for (int j = 0; j < int(passive.size()); ++j) x[passive[j]] = zp[j];
                break;
            }
            double step = std::numeric_limits<double>::infinity();
            for (int j = 0; j < int(passive.size()); ++j) {
                if (zp[j] <= 0.0) {
                    const double xj = x[passive[j]];
                    step = std::min(step, xj / (xj - zp[j]));
                }
            }
            std::vector<int> keep;
            for (int j = 0; j < int(passive.size()); ++j) {
                const int col = passive[j];
                x[col] += step * (zp[j] - x[col]);
                if (x[col] > x_zero) {
                    keep.push_back(col);
                } else {
                    x[col] = 0.0;
                    in_passive[col] = false;
                }
            }
            passive = keep;
        }
    }

    res.delta = x;
    res.residual_norm = (A * x - b).norm();
    res.iterations = outer;
    return res;
}

} // namespace iastab

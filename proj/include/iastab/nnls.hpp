#pragma once
#include <Eigen/Dense>

namespace iastab {

struct NnlsResult {
    Eigen::VectorXd delta;    // nonnegative coefficients
    double residual_norm = 0; // ||A delta - b||_2
    bool converged = false;
    int iterations = 0;
};

// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
// Deterministic: the most-violating variable enters first, smallest index on
// ties. Sets converged=false if the outer loop exceeds 10 * columns passes.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol);

} // namespace iastab

// Test-only oracles, independent of the production solver paths.
//
// solve_qp: small dense primal active-set method for strictly convex (on the
// feasible subspace) quadratic programs. prox_oracle / slope_lo_oracle wrap
// it in a cutting-plane loop: the sorted-l1 norm is the support function of
// the signed permutations of lambda, so each iteration adds the maximizing
// linear cut at the current point and re-solves the epigraph QP. Strong
// convexity turns the model gap into a distance bound, so the loop certifies
// its own precision.
#pragma once

#include <pfopt/sorted_l1.hpp>
#include <pfopt/types.hpp>

namespace pfopt::testing {

struct QpProblem {
    Matrix Q;      // n x n, PSD (PD on the feasible subspace given active cuts)
    Vector q;      // n
    Matrix A_eq;   // e x n (may be 0 x n)
    Vector b_eq;
    Matrix A_in;   // m x n, rows a_i with a_i'x <= b_i
    Vector b_in;
};

/// Primal active-set QP. `x0` must be feasible and `active0` lists the
/// inequality rows treated as active at x0. Throws if it fails to converge.
Vector solve_qp(const QpProblem& problem, const Vector& x0,
                std::vector<Eigen::Index> active0);

/// argmin_v 1/2 ||v - y||^2 + rho_lambda(v) by cutting planes; certified to
/// ||v - v*||_2 <= tol_distance.
Vector prox_oracle(const Vector& y, const LambdaSequence& lambda,
                   double tol_distance = 5e-7);

/// argmin_w (phi/2) w'Sigma w - mu'w + rho_lambda(w) s.t. e'w = 1, w >= 0.
/// Sigma must be PD; certified to ||w - w*||_2 <= tol_distance.
Vector slope_lo_oracle(const Matrix& sigma, const Vector& mu, double phi,
                       const LambdaSequence& lambda, double tol_distance = 5e-6);

}  // namespace pfopt::testing

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "heis/heisenberg.hpp"

namespace heis::subriemannian {

using RealPoint = HeisenbergPoint<double>;

/*
 * Horizontal frame.  The horizontal subspace at the identity is
 * R^n x R^n x {0}; pushing it around by right translations R_h(p) = p * h
 * gives the distribution.  Differentiating the group law in p shows dR_h
 * sends (dx, dy, dt) at p to (dx, dy, dt + dx . y_h) at p * h, so the frame
 *
 *     X_j = d/dx_j + y_j d/dt,      Y_j = d/dy_j
 *
 * is right-invariant and spans the distribution: a curve is horizontal
 * exactly when  t' = x' . y.  The metric makes {X_j, Y_j} orthonormal, so a
 * horizontal curve with controls (u, v) (coefficients on X, Y) has speed
 * sqrt(|u|^2 + |v|^2).
 */

// |x| + |y| + |t|^{1/2} with Euclidean norms on the vector parts; exactly
// homogeneous of degree 1 under dilations.
double box_quasinorm(const RealPoint& p);

/**
 * Piecewise-constant-control horizontal path on [0, 1]: m steps of duration
 * h = 1/m, step i applying velocities (u_i, v_i) on the frame (X, Y).  The
 * t-coordinate is forced by the constraint t' = x' . y and integrated
 * exactly per step (y is affine within a step).
 */
struct HorizontalPath {
    RealPoint start;
    std::size_t steps;
    // Layout: step i occupies entries [2n*i, 2n*(i+1)): first the n entries
    // of u_i, then the n entries of v_i.
    std::vector<double> controls;

    int dim() const { return start.dim(); }
    double step_size() const { return 1.0 / static_cast<double>(steps); }
};

double path_length(const HorizontalPath& path);
RealPoint path_endpoint(const HorizontalPath& path);

/**
 * Upper-bound estimate of the Carnot-Caratheodory distance d(0, p) for the
 * orthonormal-frame metric: multi-start penalized energy minimization over
 * piecewise-constant controls, with the penalty weight escalated until the
 * endpoint error drops below 1e-4 * quasinorm(p).  Deterministic for a fixed
 * seed; monotonically nonincreasing in restarts.  The input is first
 * normalized to the quasi-sphere via an exact dilation (control rescaling
 * maps feasible paths bijectively, so this loses nothing and fixes the
 * optimizer's scale).  Throws NoFeasiblePathError when no restart meets the
 * endpoint tolerance.
 */
double cc_distance_estimate(const RealPoint& p, std::size_t steps,
                            int restarts, std::uint64_t seed);

// General pairs reduce to the identity-based case by right invariance:
// d(g, h) = d(0, h * g^{-1}).
double cc_distance_estimate(const RealPoint& g, const RealPoint& h,
                            std::size_t steps, int restarts,
                            std::uint64_t seed);

// Returns (estimate at delta_s p, |s| * estimate at p); the two agree up to
// estimator tolerance.
std::pair<double, double> dilation_scaling_check(const RealPoint& p, double s,
                                                 std::size_t steps,
                                                 int restarts,
                                                 std::uint64_t seed);

// Monte Carlo exponent estimate for the volume of quasi-norm balls:
// log_2( vol{N <= 2 rho} / vol{N <= rho} ), expected 2n + 2.  Each radius is
// sampled in its own bounding box [-R, R]^{2n} x [-R^2, R^2], whose volume
// scales exactly like R^{2n+2}, so the estimator is unbiased around the true
// exponent.
double ball_volume_scaling(int n, double rho, std::size_t samples,
                           std::uint64_t seed);

enum class Side { kLeft, kRight };

// Max |det J - 1| of the translation p -> h*p (or p*h) over random probe
// points, J by central finite differences.  The translations are affine with
// unit-determinant (triangular) linear part, so the expected value is
// roundoff-sized.
double translation_jacobian_check(const RealPoint& h, Side side, int probes,
                                  std::uint64_t seed);

} // namespace heis::subriemannian

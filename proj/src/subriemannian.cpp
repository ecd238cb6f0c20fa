#include "heis/subriemannian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace heis::subriemannian {

namespace {

constexpr double kEndpointRelTol = 1e-4;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 step; decorrelates per-restart and per-stream generators.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (const double c : v) {
        s += c * c;
    }
    return std::sqrt(s);
}

RealPoint make_real_point(const std::vector<double>& coords, int n) {
    std::vector<double> x(coords.begin(), coords.begin() + n);
    std::vector<double> y(coords.begin() + n, coords.begin() + 2 * n);
    return RealPoint(std::move(x), std::move(y), coords[static_cast<std::size_t>(2 * n)]);
}

std::vector<double> flatten(const RealPoint& p) {
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(2 * p.dim() + 1));
    coords.insert(coords.end(), p.x().begin(), p.x().end());
    coords.insert(coords.end(), p.y().begin(), p.y().end());
    coords.push_back(p.t());
    return coords;
}

// Objective pieces for the penalty optimizer.  Target is the endpoint of the
// path from the identity; all scales are O(1) because the caller normalizes
// the target to quasinorm 1.
struct Objective {
    int n;
    std::size_t m;
    double h;
    const RealPoint* target;

    // Endpoint of the path with the given controls, starting at 0.
    RealPoint endpoint(const std::vector<double>& c) const {
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        std::vector<double> y(static_cast<std::size_t>(n), 0.0);
        double t = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double* u = &c[2 * static_cast<std::size_t>(n) * i];
            const double* v = u + n;
            double uy = 0.0;
            double uv = 0.0;
            for (int j = 0; j < n; ++j) {
                uy += u[j] * y[static_cast<std::size_t>(j)];
                uv += u[j] * v[j];
            }
            t += h * uy + 0.5 * h * h * uv;
            for (int j = 0; j < n; ++j) {
                x[static_cast<std::size_t>(j)] += h * u[j];
                y[static_cast<std::size_t>(j)] += h * v[j];
            }
        }
        return RealPoint(std::move(x), std::move(y), t);
    }

    double energy(const std::vector<double>& c) const {
        double e = 0.0;
        for (const double ci : c) {
            e += ci * ci;
        }
        return h * e;
    }

    double penalty(const std::vector<double>& c) const {
        const RealPoint e = endpoint(c);
        double p = 0.0;
        for (int j = 0; j < n; ++j) {
            const double dx = e.x(j) - target->x(j);
            const double dy = e.y(j) - target->y(j);
            p += dx * dx + dy * dy;
        }
        const double dt = e.t() - target->t();
        return p + dt * dt;
    }

    double value(const std::vector<double>& c, double w) const {
        return energy(c) + w * penalty(c);
    }

    // Analytic gradient of energy + w * penalty.  With y_i the y state
    // before step i and S_i the suffix sum of later u's:
    //   d t_end / d u_i = h y_i + (h^2/2) v_i
    //   d t_end / d v_i = (h^2/2) u_i + h^2 S_i
    void gradient(const std::vector<double>& c, double w,
                  std::vector<double>& grad) const {
        const std::size_t stride = 2 * static_cast<std::size_t>(n);
        grad.assign(c.size(), 0.0);
        // Forward pass: y states and endpoint.
        std::vector<double> ystate(static_cast<std::size_t>(n) * m, 0.0);
        std::vector<double> y(static_cast<std::size_t>(n), 0.0);
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        double t = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double* u = &c[stride * i];
            const double* v = u + n;
            for (int j = 0; j < n; ++j) {
                ystate[static_cast<std::size_t>(n) * i +
                       static_cast<std::size_t>(j)] =
                    y[static_cast<std::size_t>(j)];
            }
            double uy = 0.0;
            double uv = 0.0;
            for (int j = 0; j < n; ++j) {
                uy += u[j] * y[static_cast<std::size_t>(j)];
                uv += u[j] * v[j];
            }
            t += h * uy + 0.5 * h * h * uv;
            for (int j = 0; j < n; ++j) {
                x[static_cast<std::size_t>(j)] += h * u[j];
                y[static_cast<std::size_t>(j)] += h * v[j];
            }
        }
        std::vector<double> gapx(static_cast<std::size_t>(n));
        std::vector<double> gapy(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            gapx[static_cast<std::size_t>(j)] =
                x[static_cast<std::size_t>(j)] - target->x(j);
            gapy[static_cast<std::size_t>(j)] =
                y[static_cast<std::size_t>(j)] - target->y(j);
        }
        const double gapt = t - target->t();
        // Backward pass: suffix sums of u.
        std::vector<double> suffix(static_cast<std::size_t>(n), 0.0);
        for (std::size_t ri = m; ri-- > 0;) {
            const double* u = &c[stride * ri];
            const double* v = u + n;
            double* gu = &grad[stride * ri];
            double* gv = gu + n;
            for (int j = 0; j < n; ++j) {
                const double yij = ystate[static_cast<std::size_t>(n) * ri +
                                          static_cast<std::size_t>(j)];
                gu[j] = 2.0 * h * u[j] +
                        w * (2.0 * h * gapx[static_cast<std::size_t>(j)] +
                             2.0 * gapt * (h * yij + 0.5 * h * h * v[j]));
                gv[j] = 2.0 * h * v[j] +
                        w * (2.0 * h * gapy[static_cast<std::size_t>(j)] +
                             2.0 * gapt *
                                 (0.5 * h * h * u[j] +
                                  h * h * suffix[static_cast<std::size_t>(j)]));
            }
            for (int j = 0; j < n; ++j) {
                suffix[static_cast<std::size_t>(j)] += u[j];
            }
        }
    }
};

// Gradient descent with a bold-driver step size, one penalty stage.
void minimize_stage(const Objective& obj, double w, std::vector<double>& c,
                    int max_iters) {
    std::vector<double> grad;
    std::vector<double> trial(c.size());
    double value = obj.value(c, w);
    double step = 1e-2;
    for (int it = 0; it < max_iters; ++it) {
        obj.gradient(c, w, grad);
        bool advanced = false;
        while (step > 1e-14) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                trial[i] = c[i] - step * grad[i];
            }
            const double tv = obj.value(trial, w);
            if (tv < value) {
                c.swap(trial);
                value = tv;
                step *= 1.3;
                advanced = true;
                break;
            }
            step *= 0.5;
        }
        if (!advanced) {
            return; // converged at this stage's resolution
        }
    }
}

// Endpoint error measured group-invariantly: the quasinorm of the element
// carrying the endpoint to the target by right difference.
double endpoint_gap(const RealPoint& target, const RealPoint& end) {
    return box_quasinorm(compose(target, inverse(end)));
}

struct CandidateResult {
    double length = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
};

// One optimizer run from the given initial controls.  The endpoint-error
// yardstick is the quasinorm, whose sqrt(|t|) term turns a t-defect of 1e-8
// into a gap of 1e-4, so the penalty ladder has to climb well past the
// squared reciprocal of the tolerance.
CandidateResult run_candidate(const Objective& obj, std::vector<double> c) {
    static constexpr double kStages[] = {1e2, 1e4, 1e6, 1e8, 1e10, 1e12};
    CandidateResult out;
    for (const double w : kStages) {
        minimize_stage(obj, w, c, 400);
        const double gap = endpoint_gap(*obj.target, obj.endpoint(c));
        if (gap <= 0.1 * kEndpointRelTol) {
            break;
        }
    }
    HorizontalPath path{identity_like(*obj.target), obj.m, c};
    out.length = path_length(path);
    out.gap = endpoint_gap(*obj.target, obj.endpoint(c));
    return out;
}

// Distance estimate for a target already normalized to quasinorm 1.
double estimate_normalized(const RealPoint& q, std::size_t steps, int restarts,
                           std::uint64_t seed) {
    const int n = q.dim();
    const std::size_t stride = 2 * static_cast<std::size_t>(n);
    Objective obj{n, steps, 1.0 / static_cast<double>(steps), &q};

    // Straight init: constant controls reaching the planar projection.
    std::vector<double> straight(stride * steps);
    for (std::size_t i = 0; i < steps; ++i) {
        for (int j = 0; j < n; ++j) {
            straight[stride * i + static_cast<std::size_t>(j)] = q.x(j);
            straight[stride * i + static_cast<std::size_t>(n + j)] = q.y(j);
        }
    }
    // Residual t the straight path fails to produce; a circle in the
    // (x_1, y_1) plane with area |tau| closes the gap (the isoperimetric
    // mechanism), so superpose one as the second structured init.
    double straight_t = 0.0;
    {
        double xy = 0.0;
        for (int j = 0; j < n; ++j) {
            xy += q.x(j) * q.y(j);
        }
        straight_t = 0.5 * xy;
    }
    const double tau = q.t() - straight_t;

    double best_length = std::numeric_limits<double>::infinity();
    double best_gap = std::numeric_limits<double>::infinity();
    const double pi = 4.0 * std::atan(1.0);
    for (int restart = 0; restart < restarts; ++restart) {
        std::vector<double> init = straight;
        if (restart == 0) {
            // keep the plain straight init
        } else if (restart == 1) {
            const double radius = std::sqrt(std::fabs(tau) / pi);
            const double sign = tau >= 0.0 ? 1.0 : -1.0;
            for (std::size_t i = 0; i < steps; ++i) {
                const double s = (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(steps);
                init[stride * i] += 2.0 * pi * radius * std::cos(2.0 * pi * s);
                init[stride * i + static_cast<std::size_t>(n)] -=
                    sign * 2.0 * pi * radius * std::sin(2.0 * pi * s);
            }
        } else {
            std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
            std::uniform_real_distribution<double> jitter(-4.0, 4.0);
            for (double& ci : init) {
                ci += jitter(rng);
            }
        }
        const CandidateResult cand = run_candidate(obj, std::move(init));
        if (cand.gap <= kEndpointRelTol) {
            best_length = std::min(best_length, cand.length);
        }
        best_gap = std::min(best_gap, cand.gap);
    }
    if (!std::isfinite(best_length)) {
        throw NoFeasiblePathError(
            "no restart met the endpoint tolerance " +
                std::to_string(kEndpointRelTol) + "; best endpoint error " +
                std::to_string(best_gap),
            best_gap);
    }
    return best_length;
}

} // namespace

double box_quasinorm(const RealPoint& p) {
    return norm2(p.x()) + norm2(p.y()) + std::sqrt(std::fabs(p.t()));
}

double path_length(const HorizontalPath& path) {
    const int n = path.dim();
    const std::size_t stride = 2 * static_cast<std::size_t>(n);
    double len = 0.0;
    for (std::size_t i = 0; i < path.steps; ++i) {
        double speed2 = 0.0;
        for (std::size_t j = 0; j < stride; ++j) {
            const double c = path.controls[stride * i + j];
            speed2 += c * c;
        }
        len += path.step_size() * std::sqrt(speed2);
    }
    return len;
}

RealPoint path_endpoint(const HorizontalPath& path) {
    const int n = path.dim();
    const std::size_t stride = 2 * static_cast<std::size_t>(n);
    const double h = path.step_size();
    std::vector<double> x = path.start.x();
    std::vector<double> y = path.start.y();
    double t = path.start.t();
    for (std::size_t i = 0; i < path.steps; ++i) {
        const double* u = &path.controls[stride * i];
        const double* v = u + n;
        // Exact step: y is affine in time, so the t increment of the
        // constraint t' = u . y integrates to h u.y0 + (h^2/2) u.v.
        double uy = 0.0;
        double uv = 0.0;
        for (int j = 0; j < n; ++j) {
            uy += u[j] * y[static_cast<std::size_t>(j)];
            uv += u[j] * v[j];
        }
        t += h * uy + 0.5 * h * h * uv;
        for (int j = 0; j < n; ++j) {
            x[static_cast<std::size_t>(j)] += h * u[j];
            y[static_cast<std::size_t>(j)] += h * v[j];
        }
    }
    return RealPoint(std::move(x), std::move(y), t);
}

double cc_distance_estimate(const RealPoint& p, std::size_t steps,
                            int restarts, std::uint64_t seed) {
    if (steps < 1 || restarts < 1) {
        throw Error("cc_distance_estimate needs steps >= 1 and restarts >= 1");
    }
    const double scale = box_quasinorm(p);
    if (scale == 0.0) {
        return 0.0;
    }
    // Normalize to the quasi-sphere; control rescaling is an exact bijection
    // on feasible paths, so d(0, p) = scale * d(0, delta_{1/scale} p).
    const RealPoint q = dilate(p, 1.0 / scale);
    return scale * estimate_normalized(q, steps, restarts, seed);
}

double cc_distance_estimate(const RealPoint& g, const RealPoint& h,
                            std::size_t steps, int restarts,
                            std::uint64_t seed) {
    return cc_distance_estimate(compose(h, inverse(g)), steps, restarts, seed);
}

std::pair<double, double> dilation_scaling_check(const RealPoint& p, double s,
                                                 std::size_t steps,
                                                 int restarts,
                                                 std::uint64_t seed) {
    const double dilated = cc_distance_estimate(dilate(p, s), steps, restarts, seed);
    const double scaled = std::fabs(s) * cc_distance_estimate(p, steps, restarts, seed);
    return {dilated, scaled};
}

double ball_volume_scaling(int n, double rho, std::size_t samples,
                           std::uint64_t seed) {
    if (n < 1 || rho <= 0.0 || samples < 1) {
        throw Error("ball_volume_scaling needs n >= 1, rho > 0, samples >= 1");
    }
    std::size_t hits[2] = {0, 0};
    for (int which = 0; which < 2; ++which) {
        const double radius = which == 0 ? rho : 2.0 * rho;
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(which)));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (std::size_t i = 0; i < samples; ++i) {
            std::vector<double> x(static_cast<std::size_t>(n));
            std::vector<double> y(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                x[static_cast<std::size_t>(j)] = radius * unit(rng);
                y[static_cast<std::size_t>(j)] = radius * unit(rng);
            }
            const double t = radius * radius * unit(rng);
            if (box_quasinorm(RealPoint(std::move(x), std::move(y), t)) <=
                radius) {
                ++hits[which];
            }
        }
    }
    if (hits[0] == 0 || hits[1] == 0) {
        throw Error("ball_volume_scaling: no hits; samples too small");
    }
    // vol{N <= R} = hitrate(R) * 2^{2n+1} R^{2n+2}, so the ratio of the two
    // volumes is (hits2/hits1) * 2^{2n+2}.
    const double ratio = static_cast<double>(hits[1]) / static_cast<double>(hits[0]);
    return static_cast<double>(2 * n + 2) + std::log2(ratio);
}

double translation_jacobian_check(const RealPoint& h, Side side, int probes,
                                  std::uint64_t seed) {
    if (probes < 1) {
        throw Error("translation_jacobian_check needs probes >= 1");
    }
    const int n = h.dim();
    const int dim = 2 * n + 1;
    const double delta = 1e-5;
    std::mt19937_64 rng(mix_seed(seed, 0xfeedULL));
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    double worst = 0.0;
    for (int probe = 0; probe < probes; ++probe) {
        std::vector<double> base(static_cast<std::size_t>(dim));
        for (double& c : base) {
            c = coord(rng);
        }
        // Central-difference Jacobian of q -> h*q (or q*h), column by column.
        std::vector<std::vector<double>> jac(
            static_cast<std::size_t>(dim),
            std::vector<double>(static_cast<std::size_t>(dim)));
        for (int k = 0; k < dim; ++k) {
            std::vector<double> plus = base;
            std::vector<double> minus = base;
            plus[static_cast<std::size_t>(k)] += delta;
            minus[static_cast<std::size_t>(k)] -= delta;
            const RealPoint qp = make_real_point(plus, n);
            const RealPoint qm = make_real_point(minus, n);
            const RealPoint fp =
                side == Side::kLeft ? compose(h, qp) : compose(qp, h);
            const RealPoint fm =
                side == Side::kLeft ? compose(h, qm) : compose(qm, h);
            const std::vector<double> cp = flatten(fp);
            const std::vector<double> cm = flatten(fm);
            for (int rr = 0; rr < dim; ++rr) {
                jac[static_cast<std::size_t>(rr)][static_cast<std::size_t>(k)] =
                    (cp[static_cast<std::size_t>(rr)] -
                     cm[static_cast<std::size_t>(rr)]) /
                    (2.0 * delta);
            }
        }
        // Determinant by Gaussian elimination with partial pivoting.
        double det = 1.0;
        for (int col = 0; col < dim; ++col) {
            int pivot = col;
            for (int row = col + 1; row < dim; ++row) {
                if (std::fabs(jac[static_cast<std::size_t>(row)]
                                 [static_cast<std::size_t>(col)]) >
                    std::fabs(jac[static_cast<std::size_t>(pivot)]
                                 [static_cast<std::size_t>(col)])) {
                    pivot = row;
                }
            }
            if (pivot != col) {
                std::swap(jac[static_cast<std::size_t>(pivot)],
                          jac[static_cast<std::size_t>(col)]);
                det = -det;
            }
            const double d = jac[static_cast<std::size_t>(col)]
                                [static_cast<std::size_t>(col)];
            det *= d;
            if (d == 0.0) {
                break;
            }
            for (int row = col + 1; row < dim; ++row) {
                const double f = jac[static_cast<std::size_t>(row)]
                                    [static_cast<std::size_t>(col)] /
                                 d;
                for (int cc = col; cc < dim; ++cc) {
                    jac[static_cast<std::size_t>(row)]
                       [static_cast<std::size_t>(cc)] -=
                        f * jac[static_cast<std::size_t>(col)]
                              [static_cast<std::size_t>(cc)];
                }
            }
        }
        worst = std::max(worst, std::fabs(det - 1.0));
    }
    return worst;
}

} // namespace heis::subriemannian

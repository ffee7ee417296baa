#pragma once

#include <cstdint>
#include <vector>

#include "chlab/model.hpp"

namespace chlab {

/// Search state over the constrained metric family. The parameters are
/// u = ln p and r; q = (1 + r^2) e^{-u} is always derived, so pq - r^2 = 1
/// holds exactly along the whole run.
struct OptState {
    ScalarField u, r;
    double energy = 0.0;
    double grad_norm = 0.0;
    int iter = 0;
    double step = 0.0;
};

struct OptConfig {
    int max_iter = 200;
    double grad_tol = 1e-8;
    double armijo_c = 1e-4;      // sufficient-decrease constant, in (0,1)
    double shrink = 0.5;         // backtracking factor, in (0,1)
    double initial_step = 1.0;
    int trace_every = 1;
    double u_cap = 30.0;         // reject steps with |u| beyond this (exp overflow)
};

struct TraceRow {
    int iter = 0;
    double energy = 0.0;
    double grad_norm = 0.0;
    double residual = 0.0;
    double step = 0.0;
};

struct InitOptions {
    double u0 = 0.0;
    double r0 = 0.0;
    double perturb_amplitude = 0.0;  // band-limited seeded perturbation
    std::uint64_t seed = 0;
};

struct MinimizeResult {
    OptState state;
    std::vector<TraceRow> trace;
    bool converged = false;  // grad_norm <= grad_tol
    bool stalled = false;    // line search failed 60 consecutive shrinks
    double constraint_drift = 0.0;  // max |pq - r^2 - 1| over the run (0 by construction)
};

/// Discrete torsion-energy objective on the model's parameter coframe.
/// Precomputes everything parameter-independent: the bracket matrix of R
/// against the adapted frame, quadrature weights and the (constant) volume
/// density. objective() and gradient() are pure in (u, r).
class ParamProblem {
public:
    explicit ParamProblem(const Model& model);

    std::size_t sites() const { return n_; }
    double objective(const ScalarField& u, const ScalarField& r) const;
    void gradient(const ScalarField& u, const ScalarField& r, ScalarField& du,
                  ScalarField& dr) const;

    /// Backend-frame metric of the current parameters (for residual reports).
    MetricField metric(const ScalarField& u, const ScalarField& r) const;

    const Model& model() const { return *model_; }

private:
    void tau_hat(const std::vector<Mat3>& ghat, std::vector<Mat3>& out) const;

    const Model* model_;
    std::size_t n_ = 0;
    MatrixField bracket_;       // B(c,a) = adapted-frame components of [R, F_a]
    ScalarField weight_;        // quadrature weight x volume density per site
    bool flat_calculus_ = false;  // homogeneous backend: all derivatives vanish
};

ScalarField seeded_fields(const Model& model, const InitOptions& init, bool for_r);

double objective(const ScalarField& u, const ScalarField& r, const Model& model);
void gradient(const ScalarField& u, const ScalarField& r, const Model& model, ScalarField& du,
              ScalarField& dr);

MinimizeResult minimize(const Model& model, const OptConfig& config, const InitOptions& init);

/// Parametrized torsion energy density over the calibrated background,
/// divided by 8: (r^2+1) L^2 + ((r^2+1) Rlnp - r Rr) L
///   + (r Rlnp - Rr)^2 / 4 + Rlnp^2 / 4,
/// where L is the background eigenvalue and Rlnp, Rr are the Reeb
/// derivatives of ln p and r. Closed-form reference for the tests.
double param_lambda_sq_closed_form(double lambda, double r, double r_ln_p, double r_r);

}  // namespace chlab

#include "chlab/optimizer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "chlab/connection.hpp"
#include "chlab/tensor_ops.hpp"

namespace chlab {

namespace {

// Kahan sum of f * w
double weighted_sum(const ScalarField& f, const ScalarField& w) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t s = 0; s < f.size(); ++s) {
        const double y = f[s] * w[s] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Mat3 ghat_of(double p, double q, double r) {
    Mat3 g = Mat3::zero();
    g(0, 0) = 1.0;
    g(1, 1) = p;
    g(2, 2) = q;
    g(1, 2) = g(2, 1) = r;
    return g;
}

Mat3 inverse_ghat(double p, double q, double r) {
    // det of the contact block is pq - r^2 = 1
    Mat3 m = Mat3::zero();
    m(0, 0) = 1.0;
    m(1, 1) = q;
    m(2, 2) = p;
    m(1, 2) = m(2, 1) = -r;
    return m;
}

}  // namespace

ParamProblem::ParamProblem(const Model& model) : model_(&model), n_(model.backend->sites()) {
    const GeometryBackend& be = *model.backend;
    flat_calculus_ = dynamic_cast<const HomogeneousBackend*>(&be) != nullptr;

    // adapted frame vectors F_a = columns of the inverse coframe matrix
    VectorField f1 = zero_vector_field(n_), f2 = zero_vector_field(n_);
    MatrixField coframe = zero_matrix_field(n_);
    for (std::size_t s = 0; s < n_; ++s) {
        Mat3 A;
        for (int j = 0; j < 3; ++j) {
            A(0, j) = model.contact.alpha[s][static_cast<std::size_t>(j)];
            A(1, j) = model.e1[s][static_cast<std::size_t>(j)];
            A(2, j) = model.e2[s][static_cast<std::size_t>(j)];
        }
        coframe[s] = A;
        const Mat3 Ainv = A.inverse();
        for (int i = 0; i < 3; ++i) {
            f1[s][static_cast<std::size_t>(i)] = Ainv(i, 1);
            f2[s][static_cast<std::size_t>(i)] = Ainv(i, 2);
        }
    }

    // B(c, a): adapted-frame components of [R, F_a]; parameter-independent
    bracket_ = zero_matrix_field(n_);
    const VectorField br1 = lie_bracket(model.contact.reeb, f1, be);
    const VectorField br2 = lie_bracket(model.contact.reeb, f2, be);
    for (std::size_t s = 0; s < n_; ++s)
        for (int c = 0; c < 3; ++c) {
            Vec3 row{coframe[s](c, 0), coframe[s](c, 1), coframe[s](c, 2)};
            bracket_[s](c, 1) = dot(row, br1[s]);
            bracket_[s](c, 2) = dot(row, br2[s]);
        }

    // quadrature weight times sqrt(det g) in the backend frame; constant
    // across the family since the adapted-frame determinant is pinned to 1
    // both backends weight sites uniformly, so one integrate() call fixes it
    weight_.assign(n_, 0.0);
    {
        ScalarField unit(n_, 1.0);
        const double w = be.integrate(unit) / static_cast<double>(n_);
        for (std::size_t s = 0; s < n_; ++s)
            weight_[s] = w * std::abs(coframe[s].det());
    }
}

void ParamProblem::tau_hat(const std::vector<Mat3>& ghat, std::vector<Mat3>& out) const {
    out.assign(n_, Mat3::zero());
    // algebraic part: -(B^t G + G B)
    for (std::size_t s = 0; s < n_; ++s) {
        const Mat3& B = bracket_[s];
        const Mat3& G = ghat[s];
        out[s] = (B.transposed() * G + G * B) * -1.0;
    }
    if (flat_calculus_) return;
    // transport part: R(G_ab), contact-block components only (row/col 0 is constant)
    const GeometryBackend& be = *model_->backend;
    ScalarField comp(n_);
    for (int i = 1; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            for (std::size_t s = 0; s < n_; ++s) comp[s] = ghat[s](i, j);
            const ScalarField d = be.derive(comp, model_->contact.reeb);
            for (std::size_t s = 0; s < n_; ++s) {
                out[s](i, j) += d[s];
                if (j != i) out[s](j, i) += d[s];
            }
        }
}

double ParamProblem::objective(const ScalarField& u, const ScalarField& r) const {
    if (u.size() != n_ || r.size() != n_)
        throw std::invalid_argument("ParamProblem::objective: field size mismatch");
    std::vector<Mat3> ghat(n_);
    for (std::size_t s = 0; s < n_; ++s) {
        if (std::abs(u[s]) > 30.0)
            throw std::invalid_argument("ParamProblem::objective: |u| > 30 overflows exp(u)");
        const double p = std::exp(u[s]);
        ghat[s] = ghat_of(p, (1.0 + r[s] * r[s]) / p, r[s]);
    }
    std::vector<Mat3> tau;
    tau_hat(ghat, tau);
    ScalarField dens(n_);
    for (std::size_t s = 0; s < n_; ++s) {
        const double p = std::exp(u[s]);
        const Mat3 gi = inverse_ghat(p, (1.0 + r[s] * r[s]) / p, r[s]);
        const Mat3 m = gi * tau[s];
        dens[s] = (m * m).trace();
    }
    return weighted_sum(dens, weight_);
}

void ParamProblem::gradient(const ScalarField& u, const ScalarField& r, ScalarField& du,
                            ScalarField& dr) const {
    std::vector<Mat3> ghat(n_);
    ScalarField p(n_), q(n_);
    for (std::size_t s = 0; s < n_; ++s) {
        p[s] = std::exp(u[s]);
        q[s] = (1.0 + r[s] * r[s]) / p[s];
        ghat[s] = ghat_of(p[s], q[s], r[s]);
    }
    std::vector<Mat3> tau;
    tau_hat(ghat, tau);

    // reverse sweep: F = sum_s w_s tr((G^{-1} tau)^2)
    std::vector<Mat3> tau_bar(n_), g_bar(n_);
    for (std::size_t s = 0; s < n_; ++s) {
        const Mat3 gi = inverse_ghat(p[s], q[s], r[s]);
        const Mat3 w = gi * tau[s] * gi;           // d/d tau
        const Mat3 z = w * tau[s] * gi;            // d/d G through G^{-1}
        tau_bar[s] = w * (2.0 * weight_[s]);
        g_bar[s] = z * (-2.0 * weight_[s]);
    }

    // adjoint of tau_hat: algebraic part
    for (std::size_t s = 0; s < n_; ++s) {
        const Mat3& B = bracket_[s];
        g_bar[s] = g_bar[s] - (B * tau_bar[s] + tau_bar[s] * B.transposed());
    }
    // adjoint of the transport part: G_bar += -sum_k d_k(R^k tau_bar)
    // (difference kernels are antisymmetric, so the transpose of f -> R^k d_k f
    // is f -> -d_k(R^k f))
    if (!flat_calculus_) {
        const GeometryBackend& be = *model_->backend;
        ScalarField comp(n_);
        for (int i = 1; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                ScalarField acc(n_, 0.0);
                for (int k = 0; k < 3; ++k) {
                    for (std::size_t s = 0; s < n_; ++s)
                        comp[s] = model_->contact.reeb[s][static_cast<std::size_t>(k)] *
                                  (i == j ? tau_bar[s](i, j)
                                          : tau_bar[s](i, j) + tau_bar[s](j, i));
                    const ScalarField d = be.derive_frame(comp, k);
                    for (std::size_t s = 0; s < n_; ++s) acc[s] -= d[s];
                }
                // the folded pair adjoint lands on the upper entry only; the
                // forward pass never reads ghat(j, i) for j > i
                for (std::size_t s = 0; s < n_; ++s) g_bar[s](i, j) += acc[s];
            }
    }

    du.assign(n_, 0.0);
    dr.assign(n_, 0.0);
    for (std::size_t s = 0; s < n_; ++s) {
        // dG/du = diag(0, p, -q); dG/dr has 1 on the off-diagonal pair and 2r/p on q
        du[s] = g_bar[s](1, 1) * p[s] - g_bar[s](2, 2) * q[s];
        dr[s] = g_bar[s](1, 2) + g_bar[s](2, 1) + g_bar[s](2, 2) * (2.0 * r[s] / p[s]);
    }
}

MetricField ParamProblem::metric(const ScalarField& u, const ScalarField& r) const {
    ScalarField p(n_), q(n_);
    for (std::size_t s = 0; s < n_; ++s) {
        p[s] = std::exp(u[s]);
        q[s] = (1.0 + r[s] * r[s]) / p[s];
    }
    return metric_from_params(model_->params(p, q, r));
}

ScalarField seeded_fields(const Model& model, const InitOptions& init, bool for_r) {
    const std::size_t n = model.backend->sites();
    ScalarField f(n, for_r ? init.r0 : init.u0);
    if (init.perturb_amplitude == 0.0) return f;

    std::mt19937_64 rng(init.seed * 2 + (for_r ? 1 : 0));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const auto* torus = dynamic_cast<const TorusBackend*>(model.backend.get());
    if (torus == nullptr) {
        f[0] += init.perturb_amplitude * unif(rng);
        return f;
    }
    // band-limited bump: modes with max frequency 2 per axis
    double c[6];
    for (double& x : c) x = unif(rng);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3 x = torus->coords(s);
        const double bump = c[0] * std::sin(x[0]) + c[1] * std::cos(x[1]) + c[2] * std::sin(x[2]) +
                            c[3] * std::cos(x[0] + x[2]) + c[4] * std::sin(x[1] + x[2]) +
                            c[5] * std::cos(2.0 * x[2]);
        f[s] += init.perturb_amplitude * bump / 3.0;
    }
    return f;
}

double objective(const ScalarField& u, const ScalarField& r, const Model& model) {
    return ParamProblem(model).objective(u, r);
}

void gradient(const ScalarField& u, const ScalarField& r, const Model& model, ScalarField& du,
              ScalarField& dr) {
    ParamProblem(model).gradient(u, r, du, dr);
}

namespace {

double l2_norm(const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (double x : a) s += x * x;
    for (double x : b) s += x * x;
    return std::sqrt(s);
}

double tanno_l2(const ParamProblem& prob, const ScalarField& u, const ScalarField& r) {
    const MetricField g = prob.metric(u, r);
    return tanno_residual(g, prob.model().contact, *prob.model().backend).l2;
}

}  // namespace

MinimizeResult minimize(const Model& model, const OptConfig& config, const InitOptions& init) {
    if (!(config.armijo_c > 0.0 && config.armijo_c < 1.0))
        throw std::invalid_argument("minimize: armijo_c must lie in (0, 1)");
    if (!(config.shrink > 0.0 && config.shrink < 1.0))
        throw std::invalid_argument("minimize: shrink must lie in (0, 1)");

    ParamProblem prob(model);
    const std::size_t n = prob.sites();

    MinimizeResult res;
    res.state.u = seeded_fields(model, init, false);
    res.state.r = seeded_fields(model, init, true);
    res.state.energy = prob.objective(res.state.u, res.state.r);
    res.state.step = config.initial_step;

    ScalarField du, dr;
    auto push_trace = [&](int iter, double step) {
        res.trace.push_back(TraceRow{iter, res.state.energy, res.state.grad_norm,
                                     tanno_l2(prob, res.state.u, res.state.r), step});
    };

    for (int iter = 0; iter <= config.max_iter; ++iter) {
        prob.gradient(res.state.u, res.state.r, du, dr);
        res.state.grad_norm = l2_norm(du, dr);
        res.state.iter = iter;

        if (iter % std::max(1, config.trace_every) == 0) push_trace(iter, res.state.step);

        if (res.state.grad_norm <= config.grad_tol) {
            res.converged = true;
            break;
        }
        if (iter == config.max_iter) break;

        // Armijo backtracking on F(x - s grad)
        double step = config.initial_step;
        bool accepted = false;
        ScalarField u_trial(n), r_trial(n);
        for (int attempt = 0; attempt < 60; ++attempt) {
            bool in_range = true;
            for (std::size_t s = 0; s < n; ++s) {
                u_trial[s] = res.state.u[s] - step * du[s];
                r_trial[s] = res.state.r[s] - step * dr[s];
                if (std::abs(u_trial[s]) > config.u_cap) in_range = false;
            }
            if (in_range) {
                const double e_trial = prob.objective(u_trial, r_trial);
                const double required =
                    res.state.energy - config.armijo_c * step * res.state.grad_norm * res.state.grad_norm;
                if (e_trial <= required) {
                    res.state.u.swap(u_trial);
                    res.state.r.swap(r_trial);
                    res.state.energy = e_trial;
                    res.state.step = step;
                    accepted = true;
                    break;
                }
            }
            step *= config.shrink;
        }
        if (!accepted) {
            res.stalled = true;
            break;
        }
    }

    // final trace row if the loop ended between trace points
    if (res.trace.empty() || res.trace.back().iter != res.state.iter)
        push_trace(res.state.iter, res.state.step);
    return res;
}

double param_lambda_sq_closed_form(double lambda, double r, double r_ln_p, double r_r) {
    const double rr1 = r * r + 1.0;
    const double cross = r * r_ln_p - r_r;
    return rr1 * lambda * lambda + (rr1 * r_ln_p - r * r_r) * lambda + 0.25 * cross * cross +
           0.25 * r_ln_p * r_ln_p;
}

}  // namespace chlab

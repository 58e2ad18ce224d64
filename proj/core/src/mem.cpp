#include "memkit/mem.hpp"

#include "memkit/errors.hpp"

#include <cmath>

namespace memkit {

namespace {

constexpr double kStationarityMargin = 1e-6;
constexpr int kMaxHalvings = 60;

void check_inputs(const Eigen::VectorXd& x_xi, const Eigen::VectorXd& neg_indicator) {
    if (x_xi.size() != neg_indicator.size())
        throw InvalidArgument("x_xi and neg_indicator must share one length");
    if (x_xi.size() < 2) throw InvalidArgument("need at least two observations");
    for (Eigen::Index t = 0; t < x_xi.size(); ++t) {
        if (!std::isfinite(x_xi[t]) || x_xi[t] < 0.0)
            throw InvalidArgument("x_xi must be finite and non-negative");
        if (neg_indicator[t] != 0.0 && neg_indicator[t] != 1.0)
            throw InvalidArgument("neg_indicator entries must be 0 or 1");
    }
}

// Filter pass that reports failure instead of throwing; the optimizer uses
// it to probe trial points cheaply.
bool filter_xi(const Eigen::Vector3d& theta, const Eigen::VectorXd& x,
               const Eigen::VectorXd& dneg, Eigen::VectorXd& xi) {
    const double beta = theta[0], alpha = theta[1], gamma = theta[2];
    const double omega = 1.0 - (beta + alpha + 0.5 * gamma);
    const auto t_len = x.size();
    xi.resize(t_len);
    xi[0] = 1.0;
    for (Eigen::Index t = 1; t < t_len; ++t) {
        const double xm = x[t - 1];
        xi[t] = omega + beta * xi[t - 1] + alpha * xm + gamma * xm * dneg[t - 1];
        if (!(xi[t] > 0.0) || !std::isfinite(xi[t])) return false;
    }
    return true;
}

double quasi_loglik(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
    // sum_t (ln eps_t - eps_t) up to the theta-free constant sum ln x_t,
    // which keeps the objective finite when the data contain zeros.
    double value = 0.0;
    for (Eigen::Index t = 0; t < x.size(); ++t) value -= std::log(xi[t]) + x[t] / xi[t];
    return value;
}

}  // namespace

XiState xi_filter(const UniParams& params, const Eigen::VectorXd& x_xi,
                  const Eigen::VectorXd& neg_indicator) {
    check_inputs(x_xi, neg_indicator);
    Eigen::VectorXd xi;
    if (!filter_xi(params.flatten(), x_xi, neg_indicator, xi)) {
        for (Eigen::Index t = 1; t < xi.size(); ++t)
            if (!(xi[t] > 0.0) || !std::isfinite(xi[t]))
                throw NonPositiveXi(static_cast<std::size_t>(t), 0);
    }
    XiState state;
    state.v = x_xi - xi;
    state.v_minus = x_xi.cwiseProduct(neg_indicator) - 0.5 * xi;
    state.xi = std::move(xi);
    return state;
}

Eigen::MatrixXd xi_gradient(const UniParams& params, const Eigen::VectorXd& x_xi,
                            const Eigen::VectorXd& neg_indicator) {
    const XiState state = xi_filter(params, x_xi, neg_indicator);
    const auto t_len = x_xi.size();
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(t_len, 3);
    const double beta = params.beta1;
    for (Eigen::Index t = 1; t < t_len; ++t) {
        const double xm = x_xi[t - 1];
        grad(t, 0) = (state.xi[t - 1] - 1.0) + beta * grad(t - 1, 0);
        grad(t, 1) = (xm - 1.0) + beta * grad(t - 1, 1);
        grad(t, 2) = (xm * neg_indicator[t - 1] - 0.5) + beta * grad(t - 1, 2);
    }
    return grad;
}

Eigen::Vector3d gmm_criterion(const UniParams& params, const Eigen::VectorXd& x_xi,
                              const Eigen::VectorXd& neg_indicator) {
    const XiState state = xi_filter(params, x_xi, neg_indicator);
    const Eigen::MatrixXd grad = xi_gradient(params, x_xi, neg_indicator);
    Eigen::Vector3d score = Eigen::Vector3d::Zero();
    for (Eigen::Index t = 0; t < x_xi.size(); ++t) {
        const double eps = x_xi[t] / state.xi[t];
        score += (eps - 1.0) / state.xi[t] * grad.row(t).transpose();
    }
    return score;
}

FitResult fit_mem(const Eigen::VectorXd& x_xi, const Eigen::VectorXd& neg_indicator,
                  const MemFitOptions& options) {
    check_inputs(x_xi, neg_indicator);
    const auto t_len = x_xi.size();

    Eigen::Vector3d theta = options.start ? options.start->flatten() : Eigen::Vector3d(0.70, 0.15, 0.05);
    if (!UniParams::is_admissible(theta, kStationarityMargin))
        throw StationarityError("starting point is not stationary");

    Eigen::VectorXd xi;
    if (!filter_xi(theta, x_xi, neg_indicator, xi))
        throw StationarityError("starting point yields a non-positive xi path");
    double objective = quasi_loglik(x_xi, xi);

    Eigen::MatrixXd grad(t_len, 3);
    Eigen::Matrix3d score_outer;
    Eigen::Vector3d score;
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        iterations = iter + 1;
        // Gradient recursion at the current point.
        const double beta = theta[0];
        grad.row(0).setZero();
        for (Eigen::Index t = 1; t < t_len; ++t) {
            const double xm = x_xi[t - 1];
            grad(t, 0) = (xi[t - 1] - 1.0) + beta * grad(t - 1, 0);
            grad(t, 1) = (xm - 1.0) + beta * grad(t - 1, 1);
            grad(t, 2) = (xm * neg_indicator[t - 1] - 0.5) + beta * grad(t - 1, 2);
        }
        score.setZero();
        score_outer.setZero();
        for (Eigen::Index t = 0; t < t_len; ++t) {
            const Eigen::Vector3d a = grad.row(t).transpose() / xi[t];
            const double eps = x_xi[t] / xi[t];
            score += (eps - 1.0) * a;
            score_outer += a * a.transpose();
        }
        grad_norm = score.cwiseAbs().maxCoeff();
        if (grad_norm < options.grad_tol) {
            converged = true;
            break;
        }

        // Fisher-scoring direction; a collinear moment matrix (constant
        // series) is reported, not patched.
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(score_outer);
        if (es.info() != Eigen::Success || !(es.eigenvalues()[0] > 1e-12 * std::max(1.0, es.eigenvalues()[2])))
            throw SingularA("gradient moment matrix is singular");
        const Eigen::Vector3d direction = es.eigenvectors() *
                                          (es.eigenvectors().transpose() * score).cwiseQuotient(es.eigenvalues());

        double step = 1.0;
        bool accepted = false;
        Eigen::VectorXd xi_trial;
        const double flat_band = 1e-9 * std::max(1.0, std::fabs(objective));
        for (int halving = 0; halving < kMaxHalvings; ++halving, step *= 0.5) {
            const Eigen::Vector3d trial = theta + step * direction;
            if (!UniParams::is_admissible(trial, kStationarityMargin)) continue;
            if (!filter_xi(trial, x_xi, neg_indicator, xi_trial)) continue;
            const double trial_objective = quasi_loglik(x_xi, xi_trial);
            bool take = trial_objective > objective;
            if (!take && trial_objective > objective - flat_band) {
                // The objective is flat to float resolution near the
                // optimum; require a clear score contraction instead.
                Eigen::Vector3d trial_score = Eigen::Vector3d::Zero();
                Eigen::Vector3d g_prev = Eigen::Vector3d::Zero();
                const double trial_beta = trial[0];
                for (Eigen::Index t = 1; t < t_len; ++t) {
                    const double xm = x_xi[t - 1];
                    Eigen::Vector3d g_t;
                    g_t[0] = (xi_trial[t - 1] - 1.0) + trial_beta * g_prev[0];
                    g_t[1] = (xm - 1.0) + trial_beta * g_prev[1];
                    g_t[2] = (xm * neg_indicator[t - 1] - 0.5) + trial_beta * g_prev[2];
                    trial_score += (x_xi[t] / xi_trial[t] - 1.0) / xi_trial[t] * g_t;
                    g_prev = g_t;
                }
                take = trial_score.norm() < 0.9 * score.norm();
            }
            if (take) {
                theta = trial;
                xi.swap(xi_trial);
                objective = trial_objective;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no admissible ascent step left
    }
    if (!converged) throw NoConvergence(iterations, grad_norm);

    const UniParams params = UniParams::from_flat(theta);
    Eigen::VectorXd residuals = x_xi.cwiseQuotient(xi);
    const double sigma2 = (residuals.array() - 1.0).square().mean();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(score_outer);
    if (!(es.eigenvalues()[0] > 0.0)) throw SingularA("gradient moment matrix is singular at the optimum");
    const Eigen::Matrix3d avar =
        sigma2 * es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

    // Squared correlation between the input series and the fitted path;
    // zero when the fitted path has no variation.
    double rsq = 0.0;
    {
        const Eigen::ArrayXd xc = x_xi.array() - x_xi.mean();
        const Eigen::ArrayXd fc = xi.array() - xi.mean();
        const double sxx = (xc * xc).sum(), sff = (fc * fc).sum();
        if (sxx > 0.0 && sff > 0.0) {
            const double sxf = (xc * fc).sum();
            rsq = sxf * sxf / (sxx * sff);
        }
    }

    FitResult fit{params,
                  Eigen::VectorXd::Constant(1, x_xi.mean()),
                  Eigen::VectorXd::Ones(t_len),
                  xi,
                  residuals,
                  Eigen::MatrixXd::Constant(1, 1, sigma2),
                  avar,
                  Eigen::VectorXd::Constant(1, rsq),
                  true,
                  iterations};
    return fit;
}

double forecast_xi(const UniParams& params, double xi_t, double x_xi_t, double neg_t, int h) {
    if (h < 1) throw InvalidArgument("forecast horizon must be >= 1");
    const double omega = 1.0 - params.beta1_star();
    const double one_step =
        omega + params.beta1 * xi_t + params.alpha1 * x_xi_t + params.gamma1 * x_xi_t * neg_t;
    if (h == 1) return one_step;
    return 1.0 + std::pow(params.beta1_star(), h - 1) * (one_step - 1.0);
}

}  // namespace memkit

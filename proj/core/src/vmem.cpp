#include "memkit/vmem.hpp"

#include "memkit/errors.hpp"
#include "memkit/special.hpp"

#include <cmath>

namespace memkit {

namespace {

constexpr double kStationarityMargin = 1e-6;
constexpr int kMaxHalvings = 60;

void check_inputs(const Eigen::MatrixXd& x, const Eigen::VectorXd& dneg) {
    if (x.rows() != dneg.size()) throw InvalidArgument("x_xi rows and neg_indicator must match");
    if (x.rows() < 2) throw InvalidArgument("need at least two observations");
    if ((x.array() < 0.0).any() || !x.allFinite())
        throw InvalidArgument("x_xi must be finite and non-negative");
    for (Eigen::Index t = 0; t < dneg.size(); ++t)
        if (dneg[t] != 0.0 && dneg[t] != 1.0)
            throw InvalidArgument("neg_indicator entries must be 0 or 1");
}

// theta layout: per equation i, (beta_ii, alpha_i1..alpha_iK, gamma_ii).
struct FlatView {
    int k;
    int block() const { return k + 2; }
    int size() const { return k * (k + 2); }
    int beta(int i) const { return i * block(); }
    int alpha(int i, int j) const { return i * block() + 1 + j; }
    int gamma(int i) const { return i * block() + 1 + k; }
};

bool filter_vxi(const Eigen::VectorXd& theta, int k, const Eigen::MatrixXd& x,
                const Eigen::VectorXd& dneg, Eigen::MatrixXd& xi, Eigen::Index* bad_t = nullptr,
                Eigen::Index* bad_i = nullptr) {
    const FlatView view{k};
    const auto t_len = x.rows();
    xi.resize(t_len, k);
    xi.row(0).setOnes();
    for (Eigen::Index t = 1; t < t_len; ++t) {
        const double d = dneg[t - 1];
        for (int i = 0; i < k; ++i) {
            const double beta = theta[view.beta(i)];
            const double gamma = theta[view.gamma(i)];
            double omega = 1.0 - beta - 0.5 * gamma;
            double value = beta * xi(t - 1, i) + gamma * x(t - 1, i) * d;
            for (int j = 0; j < k; ++j) {
                const double alpha = theta[view.alpha(i, j)];
                omega -= alpha;
                value += alpha * x(t - 1, j);
            }
            value += omega;
            if (!(value > 0.0) || !std::isfinite(value)) {
                if (bad_t) *bad_t = t;
                if (bad_i) *bad_i = i;
                return false;
            }
            xi(t, i) = value;
        }
    }
    return true;
}

// Column j of grad is d xi_{t, eq(j)} / d theta_j; beta1 diagonal keeps the
// derivative recursions confined to their own equation.
void gradient_vxi(const Eigen::VectorXd& theta, int k, const Eigen::MatrixXd& x,
                  const Eigen::VectorXd& dneg, const Eigen::MatrixXd& xi, Eigen::MatrixXd& grad) {
    const FlatView view{k};
    const auto t_len = x.rows();
    grad.setZero(t_len, view.size());
    for (Eigen::Index t = 1; t < t_len; ++t) {
        const double d = dneg[t - 1];
        for (int i = 0; i < k; ++i) {
            const double beta = theta[view.beta(i)];
            const int jb = view.beta(i);
            grad(t, jb) = (xi(t - 1, i) - 1.0) + beta * grad(t - 1, jb);
            for (int j = 0; j < k; ++j) {
                const int ja = view.alpha(i, j);
                grad(t, ja) = (x(t - 1, j) - 1.0) + beta * grad(t - 1, ja);
            }
            const int jg = view.gamma(i);
            grad(t, jg) = (x(t - 1, i) * d - 0.5) + beta * grad(t - 1, jg);
        }
    }
}

Eigen::MatrixXd inverse_sigma(const Eigen::MatrixXd& sigma) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) throw SingularSigma("Sigma is not positive definite");
    return llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
}

struct MomentWorkspace {
    Eigen::MatrixXd xi;    // T x K
    Eigen::MatrixXd grad;  // T x p
    Eigen::MatrixXd eps;   // T x K
    Eigen::MatrixXd b;     // T x p, grad scaled by 1/xi of the owning equation
    Eigen::VectorXd score;
};

// Assembles the stacked criterion and, when requested, the scoring matrix
// H_jl = sum_t b_tj b_tl W_{eq(j), eq(l)} via per-equation-block products.
void moments(const Eigen::VectorXd& theta, int k, const Eigen::MatrixXd& x,
             const Eigen::VectorXd& dneg, const Eigen::MatrixXd& w, MomentWorkspace& ws,
             Eigen::MatrixXd* h_out) {
    const FlatView view{k};
    const int p = view.size();
    Eigen::Index bad_t = 0, bad_i = 0;
    if (!filter_vxi(theta, k, x, dneg, ws.xi, &bad_t, &bad_i))
        throw NonPositiveXi(static_cast<std::size_t>(bad_t), static_cast<std::size_t>(bad_i));
    gradient_vxi(theta, k, x, dneg, ws.xi, ws.grad);
    ws.eps = x.cwiseQuotient(ws.xi);
    ws.b.resize(x.rows(), p);
    for (int j = 0; j < p; ++j) ws.b.col(j) = ws.grad.col(j).cwiseQuotient(ws.xi.col(j / view.block()));
    const Eigen::MatrixXd m = (ws.eps.array() - 1.0).matrix() * w;  // rows (eps_t - 1)' W
    ws.score.resize(p);
    for (int j = 0; j < p; ++j) ws.score[j] = ws.b.col(j).dot(m.col(j / view.block()));
    if (h_out) {
        h_out->resize(p, p);
        const int block = view.block();
        for (int ei = 0; ei < k; ++ei)
            for (int el = ei; el < k; ++el) {
                const Eigen::MatrixXd cross =
                    ws.b.middleCols(ei * block, block).transpose() * ws.b.middleCols(el * block, block);
                h_out->block(ei * block, el * block, block, block) = w(ei, el) * cross;
                if (el != ei)
                    h_out->block(el * block, ei * block, block, block) = w(el, ei) * cross.transpose();
            }
    }
}

Eigen::MatrixXd mom_sigma(const Eigen::MatrixXd& eps, bool diagonal) {
    const auto t_len = eps.rows();
    const Eigen::MatrixXd centered = eps.array() - 1.0;
    Eigen::MatrixXd sigma = centered.transpose() * centered / static_cast<double>(t_len);
    if (diagonal) sigma = Eigen::MatrixXd(sigma.diagonal().asDiagonal());
    return sigma;
}

}  // namespace

std::vector<int> equation_of(int k) {
    std::vector<int> eq(static_cast<std::size_t>(VecParams::n_params(k)));
    for (int j = 0; j < VecParams::n_params(k); ++j) eq[static_cast<std::size_t>(j)] = j / (k + 2);
    return eq;
}

VXiState vxi_filter(const VecParams& params, const Eigen::MatrixXd& x_xi,
                    const Eigen::VectorXd& neg_indicator) {
    check_inputs(x_xi, neg_indicator);
    Eigen::MatrixXd xi;
    Eigen::Index bad_t = 0, bad_i = 0;
    if (!filter_vxi(params.flatten(), params.dim(), x_xi, neg_indicator, xi, &bad_t, &bad_i))
        throw NonPositiveXi(static_cast<std::size_t>(bad_t), static_cast<std::size_t>(bad_i));
    VXiState state;
    state.v = x_xi - xi;
    state.v_minus = (x_xi.array().colwise() * neg_indicator.array()).matrix() - 0.5 * xi;
    state.xi = std::move(xi);
    return state;
}

Eigen::MatrixXd vxi_gradient(const VecParams& params, const Eigen::MatrixXd& x_xi,
                             const Eigen::VectorXd& neg_indicator) {
    const VXiState state = vxi_filter(params, x_xi, neg_indicator);
    Eigen::MatrixXd grad;
    gradient_vxi(params.flatten(), params.dim(), x_xi, neg_indicator, state.xi, grad);
    return grad;
}

Eigen::VectorXd vgmm_criterion(const VecParams& params, const Eigen::MatrixXd& x_xi,
                               const Eigen::VectorXd& neg_indicator, const Eigen::MatrixXd& sigma) {
    check_inputs(x_xi, neg_indicator);
    const int k = params.dim();
    if (sigma.rows() != k || sigma.cols() != k) throw InvalidArgument("sigma must be K x K");
    const Eigen::MatrixXd w = inverse_sigma(sigma);
    const Eigen::VectorXd theta = params.flatten();
    MomentWorkspace ws;
    Eigen::Index bad_t = 0, bad_i = 0;
    if (!filter_vxi(theta, k, x_xi, neg_indicator, ws.xi, &bad_t, &bad_i))
        throw NonPositiveXi(static_cast<std::size_t>(bad_t), static_cast<std::size_t>(bad_i));
    moments(theta, k, x_xi, neg_indicator, w, ws, nullptr);
    return ws.score;
}

FitResult vgmm_fit(const Eigen::MatrixXd& x_xi, const Eigen::VectorXd& neg_indicator,
                   const VmemFitOptions& options) {
    check_inputs(x_xi, neg_indicator);
    const int k = static_cast<int>(x_xi.cols());
    if (k < 2) throw InvalidArgument("vgmm_fit needs K >= 2 series");
    const FlatView view{k};
    const int p = view.size();

    std::vector<int> free_idx;
    free_idx.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const int eq = j / view.block();
        const int off = j % view.block();
        const bool off_diag_alpha = off >= 1 && off <= k && (off - 1) != eq;
        if (!(options.diagonal_alpha && off_diag_alpha)) free_idx.push_back(j);
    }
    const int n_free = static_cast<int>(free_idx.size());

    Eigen::VectorXd theta;
    if (options.start) {
        if (options.start->dim() != k) throw InvalidArgument("start has wrong dimension");
        theta = options.start->flatten();
    } else {
        theta = Eigen::VectorXd::Zero(p);
        for (int i = 0; i < k; ++i) {
            theta[view.beta(i)] = 0.70;
            theta[view.alpha(i, i)] = 0.15;
            theta[view.gamma(i)] = 0.05;
        }
    }
    if (options.diagonal_alpha)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) theta[view.alpha(i, j)] = 0.0;
    if (!VecParams::is_admissible(theta, k, kStationarityMargin))
        throw StationarityError("starting point is not stationary");
    {
        Eigen::MatrixXd probe;
        if (!filter_vxi(theta, k, x_xi, neg_indicator, probe))
            throw StationarityError("starting point yields a non-positive xi path");
    }

    Eigen::MatrixXd sigma = options.initial_sigma.size() > 0 ? options.initial_sigma
                                                             : Eigen::MatrixXd::Identity(k, k);
    if (sigma.rows() != k || sigma.cols() != k) throw InvalidArgument("initial_sigma must be K x K");
    Eigen::MatrixXd w = inverse_sigma(sigma);

    MomentWorkspace ws;
    Eigen::MatrixXd h(p, p);
    int iterations = 0;
    double crit_norm = 0.0;

    // Gauss-Newton on the stacked moments under a fixed weight; accepted
    // steps must shrink the criterion norm. Returns true when the norm
    // reached crit_tol.
    auto solve_criterion = [&]() -> bool {
        while (iterations < options.max_iter) {
            ++iterations;
            moments(theta, k, x_xi, neg_indicator, w, ws, &h);
            crit_norm = ws.score.cwiseAbs().maxCoeff();
            if (crit_norm < options.crit_tol) return true;

            Eigen::MatrixXd h_free(n_free, n_free);
            Eigen::VectorXd g_free(n_free);
            for (int a = 0; a < n_free; ++a) {
                g_free[a] = ws.score[free_idx[static_cast<std::size_t>(a)]];
                for (int b = 0; b < n_free; ++b)
                    h_free(a, b) =
                        h(free_idx[static_cast<std::size_t>(a)], free_idx[static_cast<std::size_t>(b)]);
            }
            Eigen::LDLT<Eigen::MatrixXd> ldlt(h_free);
            if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
                throw SingularA("scoring matrix is singular");
            const Eigen::VectorXd step_free = ldlt.solve(g_free);
            Eigen::VectorXd direction = Eigen::VectorXd::Zero(p);
            for (int a = 0; a < n_free; ++a) direction[free_idx[static_cast<std::size_t>(a)]] = step_free[a];

            const double score_norm = ws.score.norm();
            double lambda = 1.0;
            bool accepted = false;
            MomentWorkspace trial;
            for (int halving = 0; halving < kMaxHalvings; ++halving, lambda *= 0.5) {
                const Eigen::VectorXd candidate = theta + lambda * direction;
                if (!VecParams::is_admissible(candidate, k, kStationarityMargin)) continue;
                if (!filter_vxi(candidate, k, x_xi, neg_indicator, trial.xi)) continue;
                moments(candidate, k, x_xi, neg_indicator, w, trial, nullptr);
                if (trial.score.norm() < score_norm) {
                    theta = candidate;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) return false;  // stalled under this weight
        }
        return false;
    };

    bool converged = false;
    for (int round = 0; round < options.max_sigma_updates; ++round) {
        const Eigen::VectorXd theta_before = theta;
        const bool solved = solve_criterion();
        moments(theta, k, x_xi, neg_indicator, w, ws, nullptr);
        sigma = mom_sigma(ws.eps, options.diagonal_sigma);
        w = inverse_sigma(sigma);
        if (!solved) break;
        if (round > 0 && (theta - theta_before).cwiseAbs().maxCoeff() < options.param_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NoConvergence(iterations, crit_norm);

    // Final paths, residuals, Sigma and covariance at theta-hat.
    moments(theta, k, x_xi, neg_indicator, w, ws, nullptr);
    const Eigen::MatrixXd sigma_hat = mom_sigma(ws.eps, options.diagonal_sigma);

    // avar = (sum_t A_t Sigma A_t')^{-1}; entry (j, l) of the inner sum is
    // sum_t b_tj b_tl (W Sigma W)_{eq(j), eq(l)}, which collapses to the
    // scoring matrix when the weight equals the MoM Sigma.
    const Eigen::MatrixXd wsw = w * sigma_hat * w;
    Eigen::MatrixXd info(p, p);
    {
        const int block = view.block();
        for (int ei = 0; ei < k; ++ei)
            for (int el = ei; el < k; ++el) {
                const Eigen::MatrixXd cross =
                    ws.b.middleCols(ei * block, block).transpose() * ws.b.middleCols(el * block, block);
                info.block(ei * block, el * block, block, block) = wsw(ei, el) * cross;
                if (el != ei)
                    info.block(el * block, ei * block, block, block) = wsw(el, ei) * cross.transpose();
            }
    }
    Eigen::LDLT<Eigen::MatrixXd> info_ldlt(info);
    if (info_ldlt.info() != Eigen::Success || !info_ldlt.isPositive())
        throw SingularA("information matrix is singular at the optimum");
    const Eigen::MatrixXd avar = info_ldlt.solve(Eigen::MatrixXd::Identity(p, p));

    Eigen::VectorXd rsq(k);
    for (int i = 0; i < k; ++i) {
        const Eigen::ArrayXd xc = x_xi.col(i).array() - x_xi.col(i).mean();
        const Eigen::ArrayXd fc = ws.xi.col(i).array() - ws.xi.col(i).mean();
        const double sxx = (xc * xc).sum(), sff = (fc * fc).sum();
        rsq[i] = (sxx > 0.0 && sff > 0.0) ? std::pow((xc * fc).sum(), 2) / (sxx * sff) : 0.0;
    }

    FitResult fit{VecParams::from_flat(theta, k),
                  x_xi.colwise().mean(),
                  Eigen::VectorXd::Ones(x_xi.rows()),
                  ws.xi,
                  ws.eps,
                  sigma_hat,
                  avar,
                  rsq,
                  true,
                  iterations};
    return fit;
}

WaldResult wald_test(const FitResult& fit, const std::vector<int>& restricted_indices, int df) {
    if (df < 1) throw NonPositiveDf("Wald degrees of freedom must be >= 1");
    const Eigen::VectorXd theta = fit.theta();
    const int r = static_cast<int>(restricted_indices.size());
    if (r < 1) throw InvalidArgument("need at least one restricted index");
    Eigen::VectorXd theta_r(r);
    Eigen::MatrixXd avar_rr(r, r);
    for (int a = 0; a < r; ++a) {
        const int ia = restricted_indices[static_cast<std::size_t>(a)];
        if (ia < 0 || ia >= theta.size()) throw InvalidArgument("restricted index out of range");
        theta_r[a] = theta[ia];
        for (int b = 0; b < r; ++b)
            avar_rr(a, b) = fit.avar(ia, restricted_indices[static_cast<std::size_t>(b)]);
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(avar_rr);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw SingularSubmatrix("restricted covariance block is singular");
    const double statistic = theta_r.dot(ldlt.solve(theta_r));
    return WaldResult{statistic, df, chi_square_sf(statistic, df)};
}

Eigen::VectorXd vforecast(const VecParams& params, const Eigen::VectorXd& xi_t,
                          const Eigen::VectorXd& x_xi_t, double neg_t, int h) {
    if (h < 1) throw InvalidArgument("forecast horizon must be >= 1");
    const int k = params.dim();
    if (xi_t.size() != k || x_xi_t.size() != k) throw InvalidArgument("state dimension mismatch");
    const Eigen::MatrixXd star = params.beta1_star();
    const Eigen::VectorXd intercept = Eigen::VectorXd::Ones(k) - star * Eigen::VectorXd::Ones(k);
    Eigen::VectorXd forecast = intercept + params.beta1_diag.cwiseProduct(xi_t) +
                               params.alpha1 * x_xi_t +
                               neg_t * params.gamma1_diag.cwiseProduct(x_xi_t);
    for (int step = 2; step <= h; ++step) forecast = intercept + star * forecast;
    return forecast;
}

}  // namespace memkit

#include "memkit/spfit.hpp"

#include "memkit/errors.hpp"

#include <cmath>
#include <optional>
#include <ostream>

namespace memkit {

namespace {

constexpr int kMinSpObs = 300;

double safe_rsq(const Eigen::VectorXd& observed, const Eigen::VectorXd& fitted) {
    const Eigen::ArrayXd xc = observed.array() - observed.mean();
    const Eigen::ArrayXd fc = fitted.array() - fitted.mean();
    const double sxx = (xc * xc).sum(), sff = (fc * fc).sum();
    if (!(sxx > 0.0) || !(sff > 0.0)) return 0.0;
    const double sxf = (xc * fc).sum();
    return sxf * sxf / (sxx * sff);
}

Eigen::VectorXd positive_means(const Eigen::MatrixXd& values) {
    Eigen::VectorXd mu = values.colwise().mean();
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (!(mu[i] > 0.0)) throw InvalidArgument("series " + std::to_string(i) + " has non-positive mean");
    return mu;
}

double sup_rel_change(const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
    double worst = 0.0;
    for (Eigen::Index t = 0; t < next.size(); ++t)
        worst = std::max(worst, std::fabs(next[t] - prev[t]) / std::max(std::fabs(prev[t]), 1e-12));
    return worst;
}

double theta_rel_change(const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < next.size(); ++j)
        worst = std::max(worst, std::fabs(next[j] - prev[j]) / std::max(std::fabs(prev[j]), 1.0));
    return worst;
}

}  // namespace

FitResult fit_mem_series(const ObservationSeries& series, const MemFitOptions& options) {
    const Eigen::VectorXd mu = positive_means(series.values);
    const Eigen::VectorXd x_xi = series.values / mu[0];
    FitResult fit = fit_mem(x_xi, negative_return_indicator(series.returns), options);
    fit.mu = mu;
    fit.rsq[0] = safe_rsq(series.values, mu[0] * fit.xi.col(0));
    return fit;
}

FitResult fit_vmem_panel(const AlignedPanel& panel, const VmemFitOptions& options) {
    const Eigen::VectorXd mu = positive_means(panel.values);
    Eigen::MatrixXd x_xi = panel.values.array().rowwise() / mu.transpose().array();
    FitResult fit = vgmm_fit(x_xi, negative_return_indicator(panel.returns), options);
    fit.mu = mu;
    for (int i = 0; i < fit.n_series(); ++i)
        fit.rsq[i] = safe_rsq(panel.values.col(i), mu[i] * fit.xi.col(i));
    return fit;
}

FitResult fit_spmem(const ObservationSeries& series, const SpFitOptions& options) {
    const int t_len = series.size();
    if (t_len < kMinSpObs) throw InvalidArgument("fit_spmem needs at least 300 observations");
    const Eigen::VectorXd mu = positive_means(series.values);
    const Eigen::VectorXd dneg = negative_return_indicator(series.returns);

    Eigen::VectorXd tau = Eigen::VectorXd::Ones(t_len);
    Eigen::VectorXd xi = Eigen::VectorXd::Ones(t_len);
    std::optional<FitResult> fit;
    Eigen::Vector3d theta_prev = Eigen::Vector3d::Zero();
    bool converged = false;
    int outer = 0;

    for (outer = 1; outer <= options.max_outer_iter; ++outer) {
        const Eigen::VectorXd target = series.values.cwiseQuotient(mu[0] * xi);
        const Eigen::VectorXd tau_new = nw_smooth(target, options.smoother);
        const Eigen::VectorXd x_xi = series.values.cwiseQuotient(mu[0] * tau_new);

        MemFitOptions inner = options.inner;
        const bool have_fit = fit.has_value();
        if (have_fit) inner.start = fit->uni();
        try {
            fit = fit_mem(x_xi, dneg, inner);
        } catch (const Error&) {
            inner.start = options.inner.start;  // retry once from the default start
            fit = fit_mem(x_xi, dneg, inner);
        }

        const double dtau = sup_rel_change(tau_new, tau);
        const double dtheta = have_fit ? theta_rel_change(fit->uni().flatten(), theta_prev) : 1.0;
        tau = tau_new;
        xi = fit->xi.col(0);
        theta_prev = fit->uni().flatten();
        if (options.trace)
            (*options.trace) << "spmem outer " << outer << ": dtau=" << dtau << " dtheta=" << dtheta
                             << " beta1*=" << fit->uni().beta1_star() << '\n';
        if (std::max(dtau, dtheta) < options.outer_tol) {
            converged = true;
            break;
        }
    }

    fit->mu = mu;
    fit->tau = tau;
    fit->converged = converged;
    fit->iterations = std::min(outer, options.max_outer_iter);
    fit->rsq[0] = safe_rsq(series.values, (mu[0] * tau.array() * fit->xi.col(0).array()).matrix());
    return *fit;
}

FitResult fit_spvmem(const AlignedPanel& panel, const SpFitOptions& options) {
    const int t_len = panel.n_obs();
    const int k = panel.n_series();
    if (t_len < kMinSpObs) throw InvalidArgument("fit_spvmem needs at least 300 observations");
    if (k < 2) throw InvalidArgument("fit_spvmem needs K >= 2 series");
    const Eigen::VectorXd mu = positive_means(panel.values);
    const Eigen::VectorXd dneg = negative_return_indicator(panel.returns);

    Eigen::VectorXd tau = Eigen::VectorXd::Ones(t_len);
    Eigen::MatrixXd xi = Eigen::MatrixXd::Ones(t_len, k);
    Eigen::VectorXd sigma_diag = Eigen::VectorXd::Ones(k);
    std::optional<FitResult> fit;
    Eigen::VectorXd theta_prev;
    bool converged = false;
    int outer = 0;

    for (outer = 1; outer <= options.max_outer_iter; ++outer) {
        Eigen::MatrixXd scaled(t_len, k);
        for (int i = 0; i < k; ++i) scaled.col(i) = panel.values.col(i).cwiseQuotient(mu[i] * xi.col(i));
        const Eigen::VectorXd target = precision_weighted_target(scaled, sigma_diag);
        const Eigen::VectorXd tau_new = nw_smooth(target, options.smoother);

        Eigen::MatrixXd x_xi(t_len, k);
        for (int i = 0; i < k; ++i) x_xi.col(i) = panel.values.col(i).cwiseQuotient(mu[i] * tau_new);

        VmemFitOptions inner = options.vinner;
        const bool have_fit = fit.has_value();
        if (have_fit) {
            inner.start = fit->vec();
            inner.initial_sigma = fit->sigma2;
        }
        try {
            fit = vgmm_fit(x_xi, dneg, inner);
        } catch (const Error&) {
            inner.start = options.vinner.start;
            inner.initial_sigma = options.vinner.initial_sigma;
            fit = vgmm_fit(x_xi, dneg, inner);
        }

        const double dtau = sup_rel_change(tau_new, tau);
        const double dtheta = have_fit ? theta_rel_change(fit->vec().flatten(), theta_prev) : 1.0;
        tau = tau_new;
        xi = fit->xi;
        sigma_diag = fit->sigma2.diagonal();
        theta_prev = fit->vec().flatten();
        if (options.trace)
            (*options.trace) << "spvmem outer " << outer << ": dtau=" << dtau << " dtheta=" << dtheta << '\n';
        if (std::max(dtau, dtheta) < options.outer_tol) {
            converged = true;
            break;
        }
    }

    fit->mu = mu;
    fit->tau = tau;
    fit->converged = converged;
    fit->iterations = std::min(outer, options.max_outer_iter);
    for (int i = 0; i < k; ++i)
        fit->rsq[i] = safe_rsq(panel.values.col(i), (mu[i] * tau.array() * fit->xi.col(i).array()).matrix());
    return *fit;
}

}  // namespace memkit

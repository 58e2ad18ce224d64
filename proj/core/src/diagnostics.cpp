#include "memkit/diagnostics.hpp"

#include "memkit/errors.hpp"
#include "memkit/special.hpp"

#include <cmath>

namespace memkit {

AcfResult acf(const Eigen::VectorXd& residuals, int max_lag) {
    const auto t_len = static_cast<int>(residuals.size());
    if (max_lag < 1) throw InvalidArgument("max_lag must be >= 1");
    if (max_lag >= t_len / 4) throw InvalidArgument("max_lag must be below T/4");
    const Eigen::ArrayXd centered = residuals.array() - residuals.mean();
    const double denom = (centered * centered).sum();
    if (!(denom > 0.0)) throw ConstantSeries("autocorrelation of a constant series is undefined");
    Eigen::VectorXd rho(max_lag + 1);
    rho[0] = 1.0;
    for (int j = 1; j <= max_lag; ++j) {
        double num = 0.0;
        for (int t = j; t < t_len; ++t) num += centered[t] * centered[t - j];
        rho[j] = num / denom;
    }
    return AcfResult{std::move(rho), 1.96 / std::sqrt(static_cast<double>(t_len))};
}

LjungBoxResult ljung_box(const Eigen::VectorXd& residuals, int lags, int n_params) {
    const int df = lags - n_params;
    if (df < 1) throw NonPositiveDf("ljung_box: lags must exceed the parameter count");
    const auto t_len = static_cast<double>(residuals.size());
    const AcfResult rho = acf(residuals, lags);
    double q = 0.0;
    for (int j = 1; j <= lags; ++j) q += rho.acf[j] * rho.acf[j] / (t_len - j);
    q *= t_len * (t_len + 2.0);
    return LjungBoxResult{lags, q, df, chi_square_sf(q, df)};
}

LjungBoxResult mv_portmanteau(const Eigen::MatrixXd& residuals, int lags, int n_params) {
    const auto t_len = static_cast<int>(residuals.rows());
    const auto k = static_cast<int>(residuals.cols());
    const int df = k * k * lags - n_params;
    if (df < 1) throw NonPositiveDf("mv_portmanteau: K^2 * lags must exceed the parameter count");
    if (lags >= t_len / 4) throw InvalidArgument("lags must be below T/4");

    const Eigen::MatrixXd centered = residuals.rowwise() - residuals.colwise().mean();
    const Eigen::MatrixXd c0 = centered.transpose() * centered / static_cast<double>(t_len);
    Eigen::LLT<Eigen::MatrixXd> llt(c0);
    if (llt.info() != Eigen::Success) throw SingularC0("lag-0 residual covariance is singular");
    const Eigen::MatrixXd c0_inv = llt.solve(Eigen::MatrixXd::Identity(k, k));

    double q = 0.0;
    for (int j = 1; j <= lags; ++j) {
        Eigen::MatrixXd cj = Eigen::MatrixXd::Zero(k, k);
        for (int t = j; t < t_len; ++t)
            cj.noalias() += centered.row(t).transpose() * centered.row(t - j);
        cj /= static_cast<double>(t_len);
        q += (cj.transpose() * c0_inv * cj * c0_inv).trace() / static_cast<double>(t_len - j);
    }
    q *= static_cast<double>(t_len) * static_cast<double>(t_len);
    return LjungBoxResult{lags, q, df, chi_square_sf(q, df)};
}

double r_squared(const Eigen::VectorXd& observed, const Eigen::VectorXd& fitted) {
    if (observed.size() != fitted.size()) throw InvalidArgument("r_squared: length mismatch");
    const Eigen::ArrayXd oc = observed.array() - observed.mean();
    const Eigen::ArrayXd fc = fitted.array() - fitted.mean();
    const double soo = (oc * oc).sum();
    const double sff = (fc * fc).sum();
    if (!(soo > 0.0) || !(sff > 0.0)) throw ConstantSeries("r_squared of a constant series is undefined");
    const double sof = (oc * fc).sum();
    return sof * sof / (soo * sff);
}

}  // namespace memkit

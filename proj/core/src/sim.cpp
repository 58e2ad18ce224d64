#include "memkit/sim.hpp"

#include "memkit/errors.hpp"
#include "memkit/special.hpp"

#include <cmath>
#include <numbers>

namespace memkit {

namespace {

// Weekday date index starting 2000-01-03 (a Monday).
std::vector<DateOrdinal> weekday_dates(int t_len) {
    std::vector<DateOrdinal> dates;
    dates.reserve(static_cast<std::size_t>(t_len));
    DateOrdinal d = days_from_civil(2000, 1, 3);
    while (static_cast<int>(dates.size()) < t_len) {
        const int weekday = static_cast<int>(((d % 7) + 7 + 4) % 7);  // 1970-01-01 was a Thursday
        if (weekday != 6 && weekday != 0) dates.push_back(d);
        ++d;
    }
    return dates;
}

void validate(const DgpSpec& spec, int t_len) {
    const int k = spec.dim();
    if (k < 1) throw InvalidSpec("mu must have at least one entry");
    if (t_len < 100) throw InvalidSpec("need T >= 100");
    for (int i = 0; i < k; ++i)
        if (!(spec.mu[i] > 0.0)) throw InvalidSpec("mu entries must be positive");
    if (static_cast<int>(spec.error.size()) != k)
        throw InvalidSpec("need one error DistSpec per series");
    for (const auto& e : spec.error)
        if (!(e.sigma2 > 0.0)) throw InvalidSpec("error sigma2 must be positive");
    if (!(spec.neg_prob >= 0.0 && spec.neg_prob <= 1.0))
        throw InvalidSpec("neg_prob must lie in [0, 1]");
    const bool is_uni = std::holds_alternative<UniParams>(spec.params);
    if (is_uni && k != 1) throw InvalidSpec("UniParams require a single series");
    if (!is_uni && std::get<VecParams>(spec.params).dim() != k)
        throw InvalidSpec("VecParams dimension must match mu");
    if (spec.dependence) {
        const auto& c = *spec.dependence;
        if (c.rows() != k || c.cols() != k) throw InvalidSpec("dependence must be K x K");
        if (!c.isApprox(c.transpose(), 1e-12)) throw InvalidSpec("dependence must be symmetric");
        for (int i = 0; i < k; ++i)
            if (std::fabs(c(i, i) - 1.0) > 1e-12) throw InvalidSpec("dependence needs a unit diagonal");
        Eigen::LLT<Eigen::MatrixXd> llt(c);
        if (llt.info() != Eigen::Success) throw InvalidSpec("dependence must be positive definite");
    }
}

}  // namespace

TauProfile TauProfile::sinusoid(double amplitude, double periods, double phase) {
    TauProfile p;
    p.kind = Kind::Sinusoid;
    p.amplitude = amplitude;
    p.periods = periods;
    p.phase = phase;
    return p;
}

TauProfile TauProfile::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    TauProfile p;
    p.kind = Kind::PiecewiseLinear;
    p.knots = std::move(knots);
    return p;
}

Eigen::VectorXd TauProfile::path(int t_len) const {
    Eigen::VectorXd tau(t_len);
    switch (kind) {
        case Kind::Constant:
            tau.setOnes();
            return tau;
        case Kind::Sinusoid: {
            if (!(amplitude >= 0.0 && amplitude < 1.0))
                throw InvalidSpec("sinusoid amplitude must lie in [0, 1)");
            for (int t = 0; t < t_len; ++t) {
                const double z = static_cast<double>(t + 1) / t_len;
                tau[t] = 1.0 + amplitude * std::sin(2.0 * std::numbers::pi * periods * z + phase);
            }
            break;
        }
        case Kind::PiecewiseLinear: {
            if (knots.size() < 2) throw InvalidSpec("piecewise profile needs at least two knots");
            for (std::size_t i = 0; i < knots.size(); ++i) {
                if (!(knots[i].second > 0.0)) throw InvalidSpec("knot levels must be positive");
                if (i > 0 && !(knots[i].first > knots[i - 1].first))
                    throw InvalidSpec("knot positions must be strictly increasing");
            }
            for (int t = 0; t < t_len; ++t) {
                const double z = static_cast<double>(t + 1) / t_len;
                if (z <= knots.front().first) {
                    tau[t] = knots.front().second;
                } else if (z >= knots.back().first) {
                    tau[t] = knots.back().second;
                } else {
                    std::size_t seg = 1;
                    while (knots[seg].first < z) ++seg;
                    const auto& [z0, v0] = knots[seg - 1];
                    const auto& [z1, v1] = knots[seg];
                    tau[t] = v0 + (v1 - v0) * (z - z0) / (z1 - z0);
                }
            }
            break;
        }
    }
    const double mean = tau.mean();
    if (!(mean > 0.0)) throw InvalidSpec("tau profile must have a positive mean");
    return tau / mean;
}

SimOutput simulate(const DgpSpec& spec, int t_len) {
    validate(spec, t_len);
    const int k = spec.dim();
    Rng rng(spec.seed);

    const Eigen::VectorXd tau = spec.tau_profile.path(t_len);

    Eigen::MatrixXd eps(t_len, k);
    Eigen::VectorXd dneg(t_len);
    Eigen::VectorXd returns(t_len);
    Eigen::MatrixXd chol;
    if (spec.dependence && k > 1)
        chol = Eigen::LLT<Eigen::MatrixXd>(*spec.dependence).matrixL();

    // Draw order per date: return sign, return magnitude, then the error
    // vector; the order is part of the determinism contract.
    for (int t = 0; t < t_len; ++t) {
        const bool down = rng.bernoulli(spec.neg_prob);
        const double magnitude = 0.01 * std::fabs(rng.normal());
        dneg[t] = down ? 1.0 : 0.0;
        returns[t] = down ? -magnitude : magnitude;
        if (spec.dependence && k > 1) {
            Eigen::VectorXd z(k);
            for (int i = 0; i < k; ++i) z[i] = rng.normal();
            const Eigen::VectorXd correlated = chol * z;
            for (int i = 0; i < k; ++i)
                eps(t, i) = quantile(spec.error[static_cast<std::size_t>(i)], normal_cdf(correlated[i]));
        } else {
            for (int i = 0; i < k; ++i) eps(t, i) = sample(spec.error[static_cast<std::size_t>(i)], rng);
        }
    }

    // Propagate xi through the exact filter recursion; x^(xi)_t = xi_t eps_t.
    Eigen::MatrixXd xi(t_len, k);
    xi.row(0).setOnes();
    if (std::holds_alternative<UniParams>(spec.params)) {
        const auto& p = std::get<UniParams>(spec.params);
        const double omega = 1.0 - p.beta1_star();
        for (int t = 1; t < t_len; ++t) {
            const double x_prev = xi(t - 1, 0) * eps(t - 1, 0);
            const double value = omega + p.beta1 * xi(t - 1, 0) + p.alpha1 * x_prev +
                                 p.gamma1 * x_prev * dneg[t - 1];
            if (!(value > 0.0)) throw NonPositiveXi(static_cast<std::size_t>(t), 0);
            xi(t, 0) = value;
        }
    } else {
        const auto& p = std::get<VecParams>(spec.params);
        const Eigen::MatrixXd star = p.beta1_star();
        const Eigen::VectorXd intercept = Eigen::VectorXd::Ones(k) - star * Eigen::VectorXd::Ones(k);
        for (int t = 1; t < t_len; ++t) {
            const Eigen::VectorXd x_prev = xi.row(t - 1).cwiseProduct(eps.row(t - 1)).transpose();
            Eigen::VectorXd value = intercept + p.beta1_diag.cwiseProduct(xi.row(t - 1).transpose()) +
                                    p.alpha1 * x_prev +
                                    dneg[t - 1] * p.gamma1_diag.cwiseProduct(x_prev);
            for (int i = 0; i < k; ++i) {
                if (!(value[i] > 0.0))
                    throw NonPositiveXi(static_cast<std::size_t>(t), static_cast<std::size_t>(i));
                xi(t, i) = value[i];
            }
        }
    }

    Eigen::MatrixXd values(t_len, k);
    for (int i = 0; i < k; ++i)
        values.col(i) = spec.mu[i] * tau.array() * xi.col(i).array() * eps.col(i).array();

    std::vector<std::string> labels = spec.labels;
    while (static_cast<int>(labels.size()) < k)
        labels.push_back("sim" + std::to_string(labels.size() + 1));

    AlignedPanel panel{weekday_dates(t_len), std::move(values), std::move(returns), std::move(labels)};
    return SimOutput{std::move(panel), tau, std::move(xi), std::move(eps), std::move(dneg)};
}

}  // namespace memkit

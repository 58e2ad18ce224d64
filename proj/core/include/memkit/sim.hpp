#pragma once

#include "memkit/distributions.hpp"
#include "memkit/params.hpp"
#include "memkit/series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace memkit {

// Deterministic slow-component profiles; every profile is renormalized to
// unit sample mean after evaluation.
struct TauProfile {
    enum class Kind { Constant, Sinusoid, PiecewiseLinear };
    Kind kind = Kind::Constant;
    double amplitude = 0.0;  // Sinusoid: tau(z) = 1 + amplitude sin(2 pi periods z + phase)
    double periods = 1.0;
    double phase = 0.0;
    std::vector<std::pair<double, double>> knots;  // PiecewiseLinear: (z, level)

    static TauProfile constant() { return {}; }
    static TauProfile sinusoid(double amplitude, double periods, double phase = 0.0);
    static TauProfile piecewise_linear(std::vector<std::pair<double, double>> knots);

    Eigen::VectorXd path(int t_len) const;
};

// Data-generating process x_t = mu .* tau_t .* xi_t .* eps_t. Multivariate
// error dependence uses a Gaussian draw mapped through the marginal
// quantiles (a simulation convenience; estimation never assumes it).
struct DgpSpec {
    std::variant<UniParams, VecParams> params;
    Eigen::VectorXd mu;
    TauProfile tau_profile{};
    std::vector<DistSpec> error;
    std::optional<Eigen::MatrixXd> dependence;  // K x K correlation of the Gaussian scores
    double neg_prob = 0.5;
    std::uint64_t seed = 0;
    std::vector<std::string> labels;  // defaults to sim1..simK

    int dim() const { return static_cast<int>(mu.size()); }
};

// Simulated panel plus the true component paths for oracle comparisons.
struct SimOutput {
    AlignedPanel panel;
    Eigen::VectorXd tau;
    Eigen::MatrixXd xi;
    Eigen::MatrixXd eps;
    Eigen::VectorXd neg_indicator;
};

SimOutput simulate(const DgpSpec& spec, int t_len);

}  // namespace memkit

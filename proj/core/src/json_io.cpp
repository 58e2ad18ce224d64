#include "memkit/json_io.hpp"

#include "memkit/errors.hpp"

#include <json.hpp>

namespace memkit {

namespace {

using nlohmann::json;

json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json mat_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::VectorXd vec_from(const json& a) {
    Eigen::VectorXd v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    return v;
}

Eigen::MatrixXd mat_from(const json& a) {
    const auto rows = static_cast<Eigen::Index>(a.size());
    if (rows == 0) return Eigen::MatrixXd(0, 0);
    const auto cols = static_cast<Eigen::Index>(a[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = a[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw InvalidArgument("ragged matrix in JSON");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

json params_json(const UniParams& p) {
    return {{"beta1", p.beta1}, {"alpha1", p.alpha1}, {"gamma1", p.gamma1}};
}

json params_json(const VecParams& p) {
    return {{"beta1", vec_json(p.beta1_diag)},
            {"alpha1", mat_json(p.alpha1)},
            {"gamma1", vec_json(p.gamma1_diag)}};
}

std::variant<UniParams, VecParams> params_from(const json& j) {
    if (j.at("beta1").is_number())
        return UniParams(j.at("beta1").get<double>(), j.at("alpha1").get<double>(),
                         j.at("gamma1").get<double>());
    return VecParams(vec_from(j.at("beta1")), mat_from(j.at("alpha1")), vec_from(j.at("gamma1")));
}

// T x K paths serialize flat for K = 1, nested otherwise.
json paths_json(const Eigen::MatrixXd& m) {
    if (m.cols() == 1) return vec_json(m.col(0));
    return mat_json(m);
}

Eigen::MatrixXd paths_from(const json& a) {
    if (!a.empty() && a[0].is_number()) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), 1);
        m.col(0) = vec_from(a);
        return m;
    }
    return mat_from(a);
}

}  // namespace

std::string json_string(const UniParams& params) { return params_json(params).dump(); }
std::string json_string(const VecParams& params) { return params_json(params).dump(); }

std::string json_string(const FitResult& fit) {
    json j;
    j["params"] = fit.is_multivariate() ? params_json(fit.vec()) : params_json(fit.uni());
    j["mu"] = vec_json(fit.mu);
    j["tau"] = vec_json(fit.tau);
    j["xi"] = paths_json(fit.xi);
    j["residuals"] = paths_json(fit.residuals);
    if (fit.sigma2.rows() == 1 && fit.sigma2.cols() == 1) {
        j["sigma2"] = fit.sigma2(0, 0);
    } else {
        j["sigma2"] = mat_json(fit.sigma2);
    }
    j["avar"] = mat_json(fit.avar);
    j["rsq"] = vec_json(fit.rsq);
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j.dump();
}

FitResult fit_result_from_json(const std::string& text) {
    const json j = json::parse(text);
    FitResult fit{params_from(j.at("params")),
                  vec_from(j.at("mu")),
                  vec_from(j.at("tau")),
                  paths_from(j.at("xi")),
                  paths_from(j.at("residuals")),
                  Eigen::MatrixXd(),
                  mat_from(j.at("avar")),
                  vec_from(j.at("rsq")),
                  j.at("converged").get<bool>(),
                  j.at("iterations").get<int>()};
    if (j.at("sigma2").is_number()) {
        fit.sigma2 = Eigen::MatrixXd::Constant(1, 1, j.at("sigma2").get<double>());
    } else {
        fit.sigma2 = mat_from(j.at("sigma2"));
    }
    return fit;
}

std::string json_string(const ObservationSeries& series) {
    json j;
    j["label"] = series.label;
    json dates = json::array();
    for (const auto d : series.dates) dates.push_back(format_date(d));
    j["dates"] = std::move(dates);
    j["values"] = vec_json(series.values);
    j["returns"] = vec_json(series.returns);
    return j.dump();
}

ObservationSeries series_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<DateOrdinal> dates;
    for (const auto& d : j.at("dates")) dates.push_back(parse_date(d.get<std::string>()));
    return ObservationSeries(std::move(dates), vec_from(j.at("values")), vec_from(j.at("returns")),
                             j.at("label").get<std::string>());
}

std::string json_string(const AlignedPanel& panel) {
    json j;
    j["labels"] = panel.labels;
    json dates = json::array();
    for (const auto d : panel.dates) dates.push_back(format_date(d));
    j["dates"] = std::move(dates);
    j["values"] = mat_json(panel.values);
    j["returns"] = vec_json(panel.returns);
    return j.dump();
}

AlignedPanel panel_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<DateOrdinal> dates;
    for (const auto& d : j.at("dates")) dates.push_back(parse_date(d.get<std::string>()));
    return AlignedPanel{std::move(dates), mat_from(j.at("values")), vec_from(j.at("returns")),
                        j.at("labels").get<std::vector<std::string>>()};
}

std::string json_string(const DistSpec& spec) {
    json j;
    j["kind"] = dist_kind_name(spec.kind);
    switch (spec.kind) {
        case DistKind::LogNormal:
            j["params"] = {{"m", spec.a}, {"V", spec.b}};
            break;
        default:
            j["params"] = {{"alpha", spec.a}, {"beta", spec.b}};
            break;
    }
    j["sigma2"] = spec.sigma2;
    return j.dump();
}

DistSpec dist_spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    const DistKind kind = dist_kind_from_name(j.at("kind").get<std::string>());
    const auto& p = j.at("params");
    double a, b;
    if (kind == DistKind::LogNormal) {
        a = p.at("m").get<double>();
        b = p.at("V").get<double>();
    } else {
        a = p.at("alpha").get<double>();
        b = p.at("beta").get<double>();
    }
    return DistSpec{kind, a, b, j.at("sigma2").get<double>()};
}

}  // namespace memkit

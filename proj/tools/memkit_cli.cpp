// memkit command-line front end: fit / gof / forecast / simulate.
//
// Every command computes first and writes all outputs at the end, under
// --out only, so a failing run leaves no partial files. Outputs come in
// CSV/JSON twins with deterministic content (no timestamps): identical
// inputs and seed give identical bytes.

#include "memkit/csv.hpp"
#include "memkit/diagnostics.hpp"
#include "memkit/distributions.hpp"
#include "memkit/errors.hpp"
#include "memkit/gof.hpp"
#include "memkit/json_io.hpp"
#include "memkit/mem.hpp"
#include "memkit/sim.hpp"
#include "memkit/spfit.hpp"
#include "memkit/vmem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace memkit;

namespace {

struct FitConfig {
    std::string kind = "mem";
    std::string input;
    std::string date_column = "date";
    std::vector<std::string> value_columns;
    std::string returns_column = "ret";
    std::string date_format = "%Y-%m-%d";
    std::string delimiter = ",";
    std::vector<std::string> transforms;  // none | absret | rkvar, per value column
    double bandwidth_months = 6.0;
    int annualization_days = 252;
    std::vector<int> lags = {5, 10, 15, 20};
    std::string out = ".";
    bool verbose = false;
};

constexpr int kTradingDaysPerMonth = 21;

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
    return items;
}

std::vector<std::string> header_columns(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, delimiter)) cols.push_back(col);
    return cols;
}

// Loads the panel described by a FitConfig, applying per-column transforms.
AlignedPanel load_panel(const FitConfig& config) {
    const char delim = config.delimiter.empty() ? ',' : config.delimiter[0];
    std::vector<std::string> columns = config.value_columns;
    if (columns.empty()) {
        for (const auto& col : header_columns(config.input, delim))
            if (col != config.date_column && col != config.returns_column) columns.push_back(col);
    }
    if (columns.empty()) throw InvalidArgument("no value columns found in '" + config.input + "'");

    const bool has_returns = [&] {
        for (const auto& col : header_columns(config.input, delim))
            if (col == config.returns_column) return true;
        return false;
    }();

    std::vector<ObservationSeries> series;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        CsvLayout layout;
        layout.path = config.input;
        layout.date_column = config.date_column;
        layout.value_column = columns[i];
        if (has_returns) layout.return_column = config.returns_column;
        layout.date_format = config.date_format;
        layout.delimiter = delim;
        layout.label = columns[i];
        const RawSeries raw = load_csv(layout);
        const std::string transform = i < config.transforms.size() ? config.transforms[i] : "none";
        if (transform == "absret") {
            series.push_back(absolute_returns_to_vol(raw, config.annualization_days, columns[i]));
        } else if (transform == "rkvar") {
            series.push_back(realized_kernel_to_vol(raw, config.annualization_days, columns[i]));
        } else if (transform == "none" || transform.empty()) {
            series.push_back(as_vol_series(raw, columns[i]));
        } else {
            throw InvalidArgument("unknown transform '" + transform + "'");
        }
    }
    return validate_panel(series);
}

std::string format_double(double value, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    return buf;
}

// Estimates table mirroring the paper layout: beta1* / alpha / gamma rows
// with z-statistics, then sigma, rho, R2 and Ljung-Box p-values.
std::string estimates_csv(const FitResult& fit, const std::vector<std::string>& labels,
                          const std::vector<LjungBoxResult>& lb) {
    std::ostringstream out;
    out << "param,est,zstat\n";
    const Eigen::VectorXd theta = fit.theta();
    const Eigen::VectorXd se = fit.std_errors();
    const auto names = fit.theta_names();
    const Eigen::VectorXd bstar = fit.beta1_star();
    const Eigen::VectorXd bstar_se = fit.beta1_star_se();
    const int k = fit.n_series();

    for (int i = 0; i < k; ++i) {
        const std::string suffix = k == 1 ? "" : "_" + std::to_string(i + 1) + "," + std::to_string(i + 1);
        out << "beta1*" << suffix << "," << format_double(bstar[i], 4) << ","
            << format_double(bstar[i] / bstar_se[i], 2) << "\n";
        for (int j = 0; j < static_cast<int>(theta.size()); ++j) {
            const bool in_block = k == 1 || (j / (k + 2)) == i;
            const bool is_beta = k == 1 ? j == 0 : (j % (k + 2)) == 0;
            if (in_block && !is_beta)
                out << names[static_cast<std::size_t>(j)] << "," << format_double(theta[j], 4) << ","
                    << format_double(theta[j] / se[j], 2) << "\n";
        }
    }
    if (k == 1) {
        out << "sigma," << format_double(std::sqrt(fit.sigma2(0, 0)), 4) << ",\n";
    } else {
        for (int i = 0; i < k; ++i)
            out << "sigma_" << i + 1 << "," << format_double(std::sqrt(fit.sigma2(i, i)), 4) << ",\n";
        const Eigen::MatrixXd rho = fit.residual_correlation();
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                out << "rho_" << i + 1 << "," << j + 1 << "," << format_double(rho(i, j), 4) << "\n";
    }
    for (int i = 0; i < k; ++i) {
        out << "R2";
        if (k > 1) out << "(" << i + 1 << ")";
        out << "," << format_double(fit.rsq[i], 4) << ",\n";
    }
    for (const auto& r : lb)
        out << "LB(" << r.lags << ")," << format_double(r.pvalue, 4) << ",\n";
    (void)labels;
    return out.str();
}

std::string components_csv(const FitResult& fit, const AlignedPanel& panel) {
    std::ostringstream out;
    out << "date";
    for (const auto& label : panel.labels)
        out << ",x_" << label << ",mu_" << label << ",mu_tau_" << label << ",cond_mean_" << label;
    out << "\n";
    out.precision(10);
    for (int t = 0; t < panel.n_obs(); ++t) {
        out << format_date(panel.dates[static_cast<std::size_t>(t)]);
        for (int i = 0; i < panel.n_series(); ++i) {
            const double mu = fit.mu[i];
            const double mu_tau = mu * fit.tau[t];
            out << "," << panel.values(t, i) << "," << mu << "," << mu_tau << ","
                << mu_tau * fit.xi(t, i);
        }
        out << "\n";
    }
    return out.str();
}

std::string acf_csv(const FitResult& fit, int max_lag) {
    std::ostringstream out;
    out << "lag";
    for (int i = 0; i < fit.n_series(); ++i) out << ",acf_" << i + 1;
    out << ",band\n";
    std::vector<AcfResult> results;
    for (int i = 0; i < fit.n_series(); ++i) results.push_back(acf(fit.residuals.col(i), max_lag));
    for (int lag = 0; lag <= max_lag; ++lag) {
        out << lag;
        for (const auto& r : results) out << "," << format_double(r.acf[lag], 6);
        out << "," << format_double(results.front().band, 6) << "\n";
    }
    return out.str();
}

// HEAVY-style restriction indices for series 1: its own alpha/gamma and its
// feeds into every other equation.
std::vector<int> heavy_indices(int k) {
    std::vector<int> idx;
    const int block = k + 2;
    idx.push_back(1);          // alpha_{1,1}
    idx.push_back(1 + k);      // gamma_{1,1}
    for (int i = 1; i < k; ++i) idx.push_back(i * block + 1);  // alpha_{i,1}
    return idx;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw InvalidArgument("failed while writing '" + path.string() + "'");
}

int run_fit(const FitConfig& config) {
    const AlignedPanel panel = load_panel(config);
    const int k = panel.n_series();
    const int bandwidth_days =
        std::max(5, static_cast<int>(std::lround(config.bandwidth_months * kTradingDaysPerMonth)));

    if ((config.kind == "vmem" || config.kind == "spvmem") && k < 2)
        throw InvalidArgument(config.kind + " needs at least two value columns");
    if ((config.kind == "mem" || config.kind == "spmem") && k != 1)
        throw InvalidArgument(config.kind + " needs exactly one value column");

    FitResult fit = [&] {
        SpFitOptions sp;
        sp.smoother.bandwidth_days = bandwidth_days;
        if (config.verbose) sp.trace = &std::cerr;
        if (config.kind == "mem") return fit_mem_series(panel.series(0));
        if (config.kind == "spmem") return fit_spmem(panel.series(0), sp);
        if (config.kind == "vmem") return fit_vmem_panel(panel);
        if (config.kind == "spvmem") return fit_spvmem(panel, sp);
        throw InvalidArgument("unknown kind '" + config.kind + "'");
    }();

    // Diagnostics: per-lag portmanteau with df net of the short-run
    // parameter count.
    const int n_params = k == 1 ? 3 : k * k + 2 * k;
    std::vector<LjungBoxResult> lb;
    for (int m : config.lags) {
        if (k == 1) {
            lb.push_back(ljung_box(fit.residuals.col(0), m, n_params));
        } else {
            lb.push_back(mv_portmanteau(fit.residuals, m, n_params));
        }
    }

    json doc;
    doc["kind"] = config.kind;
    doc["labels"] = panel.labels;
    doc["bandwidth_days"] = bandwidth_days;
    doc["annualization_days"] = config.annualization_days;
    doc["fit"] = json::parse(json_string(fit));
    json lbj = json::array();
    for (const auto& r : lb)
        lbj.push_back({{"lags", r.lags}, {"statistic", r.statistic}, {"df", r.df}, {"pvalue", r.pvalue}});
    doc["diagnostics"] = {{"ljung_box", lbj}};
    doc["last"] = {{"date", format_date(panel.dates.back())},
                   {"neg_indicator", panel.returns[panel.n_obs() - 1] < 0.0 ? 1 : 0}};

    std::optional<WaldResult> heavy;
    if (k >= 2) {
        const auto idx = heavy_indices(k);
        heavy = wald_test(fit, idx, static_cast<int>(idx.size()));
        doc["wald_heavy"] = {{"statistic", heavy->statistic}, {"df", heavy->df}, {"pvalue", heavy->pvalue}};
    }

    const fs::path out_dir(config.out);
    fs::create_directories(out_dir);
    write_file(out_dir / "fit.json", doc.dump(2) + "\n");
    write_file(out_dir / "estimates.csv", estimates_csv(fit, panel.labels, lb));
    write_file(out_dir / "components.csv", components_csv(fit, panel));
    write_file(out_dir / "acf.csv", acf_csv(fit, config.lags.empty() ? 20 : config.lags.back()));
    if (heavy) {
        std::ostringstream wald;
        wald << "test,statistic,df,pvalue\n"
             << "heavy," << format_double(heavy->statistic, 4) << "," << heavy->df << ","
             << format_double(heavy->pvalue, 4) << "\n";
        write_file(out_dir / "wald.csv", wald.str());
    }
    if (config.verbose)
        std::cerr << "fit written to " << out_dir.string() << " (converged="
                  << (fit.converged ? "yes" : "no") << ", iterations=" << fit.iterations << ")\n";
    return 0;
}

int run_gof(const std::string& fit_path, const std::string& out) {
    std::ifstream in(fit_path);
    if (!in) throw InvalidArgument("cannot open '" + fit_path + "'");
    json doc = json::parse(in);
    const FitResult fit = fit_result_from_json(doc.at("fit").dump());
    const std::vector<std::string> labels = doc.at("labels").get<std::vector<std::string>>();
    const int k = fit.n_series();

    std::ostringstream csv;
    csv << "series,test,dist,statistic,pvalue,n_used\n";
    json rows = json::array();
    for (int i = 0; i < k; ++i) {
        const double sigma2 = fit.sigma2(i, i);
        for (DistKind kind :
             {DistKind::Gamma, DistKind::LogNormal, DistKind::BetaPrime, DistKind::LogLogistic}) {
            const DistSpec spec = calibrate(kind, sigma2);
            for (const char* test : {"AD", "CvM"}) {
                const GofResult res = std::string(test) == "AD" ? ad_test(fit.residuals.col(i), spec)
                                                                : cvm_test(fit.residuals.col(i), spec);
                csv << labels[static_cast<std::size_t>(i)] << "," << test << ","
                    << dist_kind_name(kind) << "," << format_double(res.statistic, 6) << ","
                    << format_double(res.pvalue, 4) << "," << res.n_used << "\n";
                rows.push_back({{"series", labels[static_cast<std::size_t>(i)]},
                                {"test", test},
                                {"dist", dist_kind_name(kind)},
                                {"statistic", res.statistic},
                                {"pvalue", res.pvalue},
                                {"n_used", res.n_used}});
            }
        }
    }
    // p-values use simple-null asymptotics; sigma2 estimation is not
    // adjusted for, mirrored in the metadata.
    json out_doc = {{"tests", rows}, {"null", "asymptotic simple hypothesis"}};
    const fs::path out_dir(out);
    fs::create_directories(out_dir);
    write_file(out_dir / "gof.csv", csv.str());
    write_file(out_dir / "gof.json", out_doc.dump(2) + "\n");
    return 0;
}

int run_forecast(const std::string& fit_path, int horizons, const std::string& out) {
    if (horizons < 1) throw InvalidArgument("--horizons must be >= 1");
    std::ifstream in(fit_path);
    if (!in) throw InvalidArgument("cannot open '" + fit_path + "'");
    json doc = json::parse(in);
    const FitResult fit = fit_result_from_json(doc.at("fit").dump());
    const std::vector<std::string> labels = doc.at("labels").get<std::vector<std::string>>();
    const double neg_last = doc.at("last").at("neg_indicator").get<int>();
    const int k = fit.n_series();
    const int t_last = fit.n_obs() - 1;

    // x^(xi)_T = eps_T * xi_T; tau_{T+h|T} = tau_T.
    Eigen::VectorXd xi_last(k), x_last(k);
    for (int i = 0; i < k; ++i) {
        xi_last[i] = fit.xi(t_last, i);
        x_last[i] = fit.residuals(t_last, i) * fit.xi(t_last, i);
    }
    const double tau_last = fit.tau[t_last];

    std::ostringstream csv;
    csv << "h";
    for (const auto& label : labels) csv << ",xi_" << label << ",mean_" << label;
    csv << "\n";
    csv.precision(10);
    for (int h = 1; h <= horizons; ++h) {
        Eigen::VectorXd xi_h(k);
        if (fit.is_multivariate()) {
            xi_h = vforecast(fit.vec(), xi_last, x_last, neg_last, h);
        } else {
            xi_h[0] = forecast_xi(fit.uni(), xi_last[0], x_last[0], neg_last, h);
        }
        csv << h;
        for (int i = 0; i < k; ++i) csv << "," << xi_h[i] << "," << fit.mu[i] * tau_last * xi_h[i];
        csv << "\n";
    }
    const fs::path out_dir(out);
    fs::create_directories(out_dir);
    write_file(out_dir / "forecast.csv", csv.str());
    return 0;
}

struct SimulateConfig {
    int t_len = 1000;
    double beta1 = 0.70;
    double alpha1 = 0.15;
    double gamma1 = 0.05;
    double mu = 10.0;
    double sigma2 = 0.15;
    std::string dist = "gamma";
    std::string tau_profile = "constant";
    double tau_amplitude = 0.3;
    double tau_periods = 2.0;
    double neg_prob = 0.5;
    std::uint64_t seed = 1;
    std::string label = "sim1";
    std::string dgp_path;  // full DgpSpec as JSON for multivariate runs
    std::string out_file = "simulated.csv";
};

DgpSpec dgp_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    json j = json::parse(in);
    DgpSpec spec;
    const auto& pj = j.at("params");
    if (pj.at("beta1").is_number()) {
        spec.params = UniParams(pj.at("beta1").get<double>(), pj.at("alpha1").get<double>(),
                                pj.at("gamma1").get<double>());
    } else {
        const auto beta = pj.at("beta1").get<std::vector<double>>();
        const auto gamma = pj.at("gamma1").get<std::vector<double>>();
        const auto alpha_rows = pj.at("alpha1").get<std::vector<std::vector<double>>>();
        const int k = static_cast<int>(beta.size());
        Eigen::VectorXd b(k), g(k);
        Eigen::MatrixXd a(k, k);
        for (int i = 0; i < k; ++i) {
            b[i] = beta[static_cast<std::size_t>(i)];
            g[i] = gamma[static_cast<std::size_t>(i)];
            for (int l = 0; l < k; ++l) a(i, l) = alpha_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
        }
        spec.params = VecParams(b, a, g);
    }
    const auto mu = j.at("mu").get<std::vector<double>>();
    spec.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(mu.size()));
    for (const auto& ej : j.at("error")) {
        spec.error.push_back(calibrate(dist_kind_from_name(ej.at("kind").get<std::string>()),
                                       ej.at("sigma2").get<double>()));
    }
    if (j.contains("dependence")) {
        const auto rows = j.at("dependence").get<std::vector<std::vector<double>>>();
        const int k = static_cast<int>(rows.size());
        Eigen::MatrixXd dep(k, k);
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l) dep(i, l) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
        spec.dependence = dep;
    }
    if (j.contains("tau_profile")) {
        const auto& tj = j.at("tau_profile");
        const std::string kind = tj.at("kind").get<std::string>();
        if (kind == "sinusoid") {
            spec.tau_profile = TauProfile::sinusoid(tj.at("amplitude").get<double>(),
                                                    tj.at("periods").get<double>(),
                                                    tj.value("phase", 0.0));
        } else if (kind == "piecewise") {
            std::vector<std::pair<double, double>> knots;
            for (const auto& knot : tj.at("knots"))
                knots.emplace_back(knot[0].get<double>(), knot[1].get<double>());
            spec.tau_profile = TauProfile::piecewise_linear(std::move(knots));
        }
    }
    spec.neg_prob = j.value("neg_prob", 0.5);
    spec.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("labels")) spec.labels = j.at("labels").get<std::vector<std::string>>();
    return spec;
}

int run_simulate(const SimulateConfig& config) {
    DgpSpec spec;
    if (!config.dgp_path.empty()) {
        spec = dgp_from_json_file(config.dgp_path);
        spec.seed = config.seed;
    } else {
        if (!(config.sigma2 > 0.0)) throw InvalidArgument("--sigma2 must be positive");
        spec.params = UniParams(config.beta1, config.alpha1, config.gamma1);
        spec.mu = Eigen::VectorXd::Constant(1, config.mu);
        spec.error = {calibrate(dist_kind_from_name(config.dist), config.sigma2)};
        if (config.tau_profile == "sinusoid") {
            spec.tau_profile = TauProfile::sinusoid(config.tau_amplitude, config.tau_periods);
        } else if (config.tau_profile != "constant") {
            throw InvalidArgument("unknown tau profile '" + config.tau_profile + "'");
        }
        spec.neg_prob = config.neg_prob;
        spec.seed = config.seed;
        spec.labels = {config.label};
    }
    const SimOutput sim = simulate(spec, config.t_len);
    const fs::path out_path(config.out_file);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    write_panel_csv(sim.panel, out_path.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplicative error models for non-negative financial time series"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML config file");

    FitConfig fit_config;
    std::string lags_text = "5,10,15,20";
    std::string value_columns_text, transforms_text;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a MEM/SpMEM/vMEM/SpvMEM and write tables");
    fit_cmd->add_option("--kind", fit_config.kind, "Model kind: mem | spmem | vmem | spvmem")
        ->check(CLI::IsMember({"mem", "spmem", "vmem", "spvmem"}));
    fit_cmd->add_option("--input", fit_config.input, "Input CSV path")->required();
    fit_cmd->add_option("--date-column", fit_config.date_column, "Date column name");
    fit_cmd->add_option("--value-columns", value_columns_text,
                        "Comma-separated value columns (default: all non-date, non-return)");
    fit_cmd->add_option("--returns-column", fit_config.returns_column, "Signed return column name");
    fit_cmd->add_option("--date-format", fit_config.date_format, "Date pattern, e.g. %Y-%m-%d");
    fit_cmd->add_option("--delimiter", fit_config.delimiter, "Field delimiter");
    fit_cmd->add_option("--transform", transforms_text,
                        "Comma-separated per-column transforms: none | absret | rkvar");
    fit_cmd->add_option("--bandwidth-months", fit_config.bandwidth_months,
                        "Kernel bandwidth in 21-trading-day months (sp* kinds)");
    fit_cmd->add_option("--annualization-days", fit_config.annualization_days, "Trading days per year");
    fit_cmd->add_option("--lags", lags_text, "Ljung-Box lags, comma-separated");
    fit_cmd->add_option("--out", fit_config.out, "Output directory");
    fit_cmd->add_flag("--verbose", fit_config.verbose, "Trace outer iterations to stderr");

    std::string gof_fit_path, gof_out = ".";
    auto* gof_cmd = app.add_subcommand("gof", "Distribution goodness-of-fit tests on fit residuals");
    gof_cmd->add_option("--fit", gof_fit_path, "fit.json produced by the fit command")->required();
    gof_cmd->add_option("--out", gof_out, "Output directory");

    std::string fc_fit_path, fc_out = ".";
    int horizons = 1;
    auto* fc_cmd = app.add_subcommand("forecast", "h-step conditional mean forecasts from a fit");
    fc_cmd->add_option("--fit", fc_fit_path, "fit.json produced by the fit command")->required();
    fc_cmd->add_option("--horizons", horizons, "Forecast horizon H (steps 1..H)");
    fc_cmd->add_option("--out", fc_out, "Output directory");

    SimulateConfig sim_config;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic panel CSV");
    sim_cmd->add_option("--T", sim_config.t_len, "Number of observations");
    sim_cmd->add_option("--beta1", sim_config.beta1, "Short-run beta1");
    sim_cmd->add_option("--alpha1", sim_config.alpha1, "Short-run alpha1");
    sim_cmd->add_option("--gamma1", sim_config.gamma1, "Asymmetry gamma1");
    sim_cmd->add_option("--mu", sim_config.mu, "Unconditional mean");
    sim_cmd->add_option("--sigma2", sim_config.sigma2, "Error variance");
    sim_cmd->add_option("--dist", sim_config.dist, "Error distribution")
        ->check(CLI::IsMember({"gamma", "lognormal", "betaprime", "loglogistic"}));
    sim_cmd->add_option("--tau-profile", sim_config.tau_profile, "constant | sinusoid");
    sim_cmd->add_option("--tau-amplitude", sim_config.tau_amplitude, "Sinusoid amplitude");
    sim_cmd->add_option("--tau-periods", sim_config.tau_periods, "Sinusoid periods over the sample");
    sim_cmd->add_option("--neg-prob", sim_config.neg_prob, "P(negative return)");
    sim_cmd->add_option("--seed", sim_config.seed, "RNG seed");
    sim_cmd->add_option("--label", sim_config.label, "Series label");
    sim_cmd->add_option("--dgp", sim_config.dgp_path, "Full DgpSpec JSON (multivariate)");
    sim_cmd->add_option("--out", sim_config.out_file, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit_cmd->parsed()) {
            if (!value_columns_text.empty()) fit_config.value_columns = split_csv_list(value_columns_text);
            if (!transforms_text.empty()) fit_config.transforms = split_csv_list(transforms_text);
            fit_config.lags.clear();
            for (const auto& lag : split_csv_list(lags_text)) fit_config.lags.push_back(std::stoi(lag));
            return run_fit(fit_config);
        }
        if (gof_cmd->parsed()) return run_gof(gof_fit_path, gof_out);
        if (fc_cmd->parsed()) return run_forecast(fc_fit_path, horizons, fc_out);
        if (sim_cmd->parsed()) return run_simulate(sim_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

#include "memkit/series.hpp"

#include "memkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace memkit {

namespace {
constexpr int kMinPanelObs = 50;
}

ObservationSeries::ObservationSeries(std::vector<DateOrdinal> dates_,
                                     Eigen::VectorXd values_,
                                     Eigen::VectorXd returns_,
                                     std::string label_)
    : dates(std::move(dates_)),
      values(std::move(values_)),
      returns(std::move(returns_)),
      label(std::move(label_)) {
    const auto n = static_cast<std::ptrdiff_t>(dates.size());
    if (values.size() != n || returns.size() != n)
        throw InvalidArgument("ObservationSeries: dates, values and returns must share one length");
    for (std::size_t t = 1; t < dates.size(); ++t)
        if (dates[t] <= dates[t - 1])
            throw InvalidArgument("ObservationSeries: dates must be strictly increasing");
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        if (!std::isfinite(values[t]))
            throw InvalidArgument("ObservationSeries: non-finite value at " + format_date(dates[static_cast<std::size_t>(t)]));
        if (values[t] < 0.0)
            throw NegativeValue("negative value " + std::to_string(values[t]) + " at " +
                                format_date(dates[static_cast<std::size_t>(t)]));
    }
}

ObservationSeries AlignedPanel::series(int i) const {
    return ObservationSeries(dates, values.col(i), returns, labels[static_cast<std::size_t>(i)]);
}

AlignedPanel validate_panel(const std::vector<ObservationSeries>& series_list) {
    if (series_list.empty()) throw InvalidArgument("validate_panel: need at least one series");
    for (const auto& s : series_list)
        if (s.size() < kMinPanelObs)
            throw InvalidArgument("validate_panel: series '" + s.label + "' has fewer than 50 observations");

    // Intersect date indices, keeping the first series' order.
    std::vector<DateOrdinal> common = series_list.front().dates;
    for (std::size_t i = 1; i < series_list.size(); ++i) {
        std::vector<DateOrdinal> next;
        next.reserve(common.size());
        std::set_intersection(common.begin(), common.end(),
                              series_list[i].dates.begin(), series_list[i].dates.end(),
                              std::back_inserter(next));
        common.swap(next);
    }
    if (static_cast<int>(common.size()) < kMinPanelObs)
        throw EmptyIntersection("common date index has " + std::to_string(common.size()) +
                                " entries; need at least " + std::to_string(kMinPanelObs));

    const int t_len = static_cast<int>(common.size());
    const int k = static_cast<int>(series_list.size());
    Eigen::MatrixXd x(t_len, k);
    Eigen::VectorXd returns(t_len);
    std::vector<std::string> labels;
    labels.reserve(series_list.size());

    for (int i = 0; i < k; ++i) {
        const auto& s = series_list[static_cast<std::size_t>(i)];
        labels.push_back(s.label);
        std::unordered_map<DateOrdinal, int> index;
        index.reserve(s.dates.size());
        for (std::size_t t = 0; t < s.dates.size(); ++t)
            index.emplace(s.dates[t], static_cast<int>(t));
        const bool has_returns = s.returns.cwiseAbs().maxCoeff() > 0.0;
        for (int t = 0; t < t_len; ++t) {
            const int src = index.at(common[static_cast<std::size_t>(t)]);
            const double v = s.values[src];
            if (v < 0.0) throw NegativeValue("negative value in series '" + s.label + "'");
            x(t, i) = v;
            if (i == 0) {
                returns[t] = s.returns[src];
            } else if (has_returns) {
                // All measures of one market share its daily return; a
                // series with a conflicting non-trivial return column is a
                // data error, not something to pick silently.
                const double r0 = returns[t];
                const double ri = s.returns[src];
                if (std::fabs(ri - r0) > 1e-12 * std::max({1.0, std::fabs(r0), std::fabs(ri)}))
                    throw MismatchedReturns("series '" + s.label + "' disagrees with '" +
                                            series_list.front().label + "' on the return at " +
                                            format_date(common[static_cast<std::size_t>(t)]));
            }
        }
    }
    return AlignedPanel{std::move(common), std::move(x), std::move(returns), std::move(labels)};
}

Eigen::VectorXd negative_return_indicator(const Eigen::VectorXd& returns) {
    Eigen::VectorXd d(returns.size());
    for (Eigen::Index t = 0; t < returns.size(); ++t) d[t] = returns[t] < 0.0 ? 1.0 : 0.0;
    return d;
}

}  // namespace memkit

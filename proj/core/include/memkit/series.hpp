#pragma once

#include "memkit/dates.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace memkit {

// One dated non-negative volatility measure plus the signed return series
// used for the negative-return indicator. Immutable after construction.
struct ObservationSeries {
    ObservationSeries(std::vector<DateOrdinal> dates,
                      Eigen::VectorXd values,
                      Eigen::VectorXd returns,
                      std::string label);

    std::vector<DateOrdinal> dates;  // strictly increasing
    Eigen::VectorXd values;          // non-negative, volatility units
    Eigen::VectorXd returns;         // signed, only the sign is consumed
    std::string label;               // arVol | rkVol | impVol | custom

    int size() const { return static_cast<int>(values.size()); }
};

// K co-dated series sharing one date index and one market return series.
struct AlignedPanel {
    std::vector<DateOrdinal> dates;
    Eigen::MatrixXd values;  // T x K
    Eigen::VectorXd returns;
    std::vector<std::string> labels;

    int n_obs() const { return static_cast<int>(values.rows()); }
    int n_series() const { return static_cast<int>(values.cols()); }

    ObservationSeries series(int i) const;
};

// Restricts the series to their common dates (>= 50 required); returns are
// taken from the first series. Throws EmptyIntersection, NegativeValue or
// MismatchedReturns.
AlignedPanel validate_panel(const std::vector<ObservationSeries>& series_list);

// D^-_t = I(r_t < 0).
Eigen::VectorXd negative_return_indicator(const Eigen::VectorXd& returns);

}  // namespace memkit

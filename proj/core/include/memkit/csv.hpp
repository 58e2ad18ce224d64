#pragma once

#include "memkit/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace memkit {

// Column mapping for one series in a delimited text file with a header row.
struct CsvLayout {
    std::string path;
    std::string date_column = "date";
    std::string value_column = "value";
    std::optional<std::string> return_column;
    std::string date_format = "%Y-%m-%d";
    char delimiter = ',';
    std::string label = "custom";
};

// A parsed but not yet validated dated series (values may be signed, e.g.
// raw returns before the volatility transform).
struct RawSeries {
    std::vector<DateOrdinal> dates;
    std::vector<double> values;
    std::vector<double> returns;  // zeros when no return column is mapped
    std::string label;
};

// Reads rows in file order, sorts by date, and rejects duplicate dates and
// unparseable cells (ParseError carries the 1-based data row index).
RawSeries load_csv(const CsvLayout& layout);

// Measurement conventions. Annualization uses a trading-day count
// (default 252; the same count is assumed for absolute returns and
// realized kernel variances).

// |r_t| * sqrt(pi/2) * 100 * sqrt(days): open-to-close decimal returns to
// annualized percent volatility units; the signed return is kept alongside.
ObservationSeries absolute_returns_to_vol(const RawSeries& returns_series,
                                          int annualization_days = 252,
                                          const std::string& label = "arVol");

// 100 * sqrt(days * RK_t): daily realized kernel variance (decimal^2) to
// annualized percent volatility.
ObservationSeries realized_kernel_to_vol(const RawSeries& rk_series,
                                         int annualization_days = 252,
                                         const std::string& label = "rkVol");

// Pass-through for series already in annualized percent units (e.g. implied
// volatility index levels); validates non-negativity.
ObservationSeries as_vol_series(const RawSeries& series, const std::string& label = "impVol");

// Exact inverses of the two transforms (for round-trip checks and
// replication against other data vintages).
double vol_to_absolute_return(double vol, int annualization_days = 252);
double vol_to_realized_kernel(double vol, int annualization_days = 252);

// Writes a panel in the same layout load_csv reads: date, one column per
// series label, and a trailing return column.
void write_panel_csv(const AlignedPanel& panel, const std::string& path,
                     const std::string& return_column = "ret", char delimiter = ',');

}  // namespace memkit

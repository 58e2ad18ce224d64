#include "memkit/csv.hpp"

#include "memkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace memkit {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
    if (!line.empty() && line.back() == delimiter) cells.emplace_back();
    return cells;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
    const std::string text = strip(cell);
    if (text.empty()) throw ParseError("empty cell", row, column);
    std::size_t pos = 0;
    double value;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("non-numeric cell '" + text + "'", row, column);
    }
    if (pos != text.size()) throw ParseError("non-numeric cell '" + text + "'", row, column);
    return value;
}

double annualization_scale(int days) {
    if (days < 1) throw InvalidArgument("annualization_days must be >= 1");
    return std::sqrt(static_cast<double>(days));
}

}  // namespace

RawSeries load_csv(const CsvLayout& layout) {
    std::ifstream in(layout.path);
    if (!in) throw InvalidArgument("cannot open '" + layout.path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 0, layout.date_column);
    const auto header = split_line(line, layout.delimiter);
    auto column_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (strip(header[i]) == name) return static_cast<int>(i);
        throw InvalidArgument("column '" + name + "' not found in '" + layout.path + "'");
    };
    const int date_idx = column_index(layout.date_column);
    const int value_idx = column_index(layout.value_column);
    const int return_idx = layout.return_column ? column_index(*layout.return_column) : -1;

    struct Row {
        DateOrdinal date;
        double value;
        double ret;
    };
    std::vector<Row> rows;
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        ++row_no;
        if (strip(line).empty()) continue;
        const auto cells = split_line(line, layout.delimiter);
        const auto need = static_cast<std::size_t>(std::max({date_idx, value_idx, return_idx})) + 1;
        if (cells.size() < need) throw ParseError("too few cells", row_no, layout.value_column);
        DateOrdinal date;
        try {
            date = parse_date(strip(cells[static_cast<std::size_t>(date_idx)]), layout.date_format);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), row_no, layout.date_column);
        }
        const double value = parse_cell(cells[static_cast<std::size_t>(value_idx)], row_no, layout.value_column);
        const double ret = return_idx >= 0
                               ? parse_cell(cells[static_cast<std::size_t>(return_idx)], row_no, *layout.return_column)
                               : 0.0;
        rows.push_back({date, value, ret});
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw DuplicateDate("duplicate date " + format_date(rows[i].date) + " in '" + layout.path + "'");

    RawSeries out;
    out.label = layout.label;
    out.dates.reserve(rows.size());
    out.values.reserve(rows.size());
    out.returns.reserve(rows.size());
    for (const auto& r : rows) {
        out.dates.push_back(r.date);
        out.values.push_back(r.value);
        out.returns.push_back(r.ret);
    }
    return out;
}

ObservationSeries absolute_returns_to_vol(const RawSeries& returns_series, int annualization_days,
                                          const std::string& label) {
    const double scale = std::sqrt(std::numbers::pi / 2.0) * 100.0 * annualization_scale(annualization_days);
    const auto n = static_cast<Eigen::Index>(returns_series.values.size());
    Eigen::VectorXd values(n), rets(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const double r = returns_series.values[static_cast<std::size_t>(t)];
        if (!std::isfinite(r)) throw InvalidArgument("non-finite return in '" + returns_series.label + "'");
        values[t] = std::fabs(r) * scale;
        rets[t] = r;
    }
    return ObservationSeries(returns_series.dates, std::move(values), std::move(rets), label);
}

ObservationSeries realized_kernel_to_vol(const RawSeries& rk_series, int annualization_days,
                                         const std::string& label) {
    const auto n = static_cast<Eigen::Index>(rk_series.values.size());
    Eigen::VectorXd values(n), rets(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const double rk = rk_series.values[static_cast<std::size_t>(t)];
        if (rk < 0.0)
            throw NegativeValue("negative realized kernel variance at " +
                                format_date(rk_series.dates[static_cast<std::size_t>(t)]));
        values[t] = 100.0 * std::sqrt(static_cast<double>(annualization_days) * rk);
        rets[t] = rk_series.returns[static_cast<std::size_t>(t)];
    }
    return ObservationSeries(rk_series.dates, std::move(values), std::move(rets), label);
}

ObservationSeries as_vol_series(const RawSeries& series, const std::string& label) {
    const auto n = static_cast<Eigen::Index>(series.values.size());
    Eigen::VectorXd values(n), rets(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        values[t] = series.values[static_cast<std::size_t>(t)];
        rets[t] = series.returns[static_cast<std::size_t>(t)];
    }
    return ObservationSeries(series.dates, std::move(values), std::move(rets), label);
}

double vol_to_absolute_return(double vol, int annualization_days) {
    return vol / (std::sqrt(std::numbers::pi / 2.0) * 100.0 * annualization_scale(annualization_days));
}

double vol_to_realized_kernel(double vol, int annualization_days) {
    const double s = vol / 100.0;
    return s * s / static_cast<double>(annualization_days);
}

void write_panel_csv(const AlignedPanel& panel, const std::string& path,
                     const std::string& return_column, char delimiter) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << "date";
    for (const auto& label : panel.labels) out << delimiter << label;
    out << delimiter << return_column << "\n";
    out.precision(17);
    for (int t = 0; t < panel.n_obs(); ++t) {
        out << format_date(panel.dates[static_cast<std::size_t>(t)]);
        for (int i = 0; i < panel.n_series(); ++i) out << delimiter << panel.values(t, i);
        out << delimiter << panel.returns[t] << "\n";
    }
    if (!out) throw InvalidArgument("failed while writing '" + path + "'");
}

}  // namespace memkit

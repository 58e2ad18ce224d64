#include "memkit/dates.hpp"

#include "memkit/errors.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace memkit {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[static_cast<std::size_t>(m - 1)];
}

}  // namespace

// Howard Hinnant's civil-days algorithm.
DateOrdinal days_from_civil(int year, int month, int day) {
    year -= month <= 2;
    const DateOrdinal era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<DateOrdinal>(doe) - 719468;
}

void civil_from_days(DateOrdinal ordinal, int& year, int& month, int& day) {
    ordinal += 719468;
    const DateOrdinal era = (ordinal >= 0 ? ordinal : ordinal - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(ordinal - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = y + (month <= 2);
}

DateOrdinal parse_date(const std::string& text, const std::string& format) {
    int year = 0, month = 0, day = 0;
    bool saw_y = false, saw_m = false, saw_d = false;
    std::size_t ti = 0;
    for (std::size_t fi = 0; fi < format.size(); ++fi) {
        if (format[fi] == '%' && fi + 1 < format.size()) {
            const char spec = format[++fi];
            int digits = (spec == 'Y') ? 4 : 2;
            int value = 0;
            int consumed = 0;
            while (consumed < digits && ti < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[ti]))) {
                value = value * 10 + (text[ti] - '0');
                ++ti;
                ++consumed;
            }
            if (consumed == 0) throw InvalidArgument("cannot parse date '" + text + "' with format '" + format + "'");
            switch (spec) {
                case 'Y': year = value; saw_y = true; break;
                case 'm': month = value; saw_m = true; break;
                case 'd': day = value; saw_d = true; break;
                default: throw InvalidArgument(std::string("unsupported date format specifier %") + spec);
            }
        } else {
            if (ti >= text.size() || text[ti] != format[fi])
                throw InvalidArgument("cannot parse date '" + text + "' with format '" + format + "'");
            ++ti;
        }
    }
    if (ti != text.size() || !(saw_y && saw_m && saw_d))
        throw InvalidArgument("cannot parse date '" + text + "' with format '" + format + "'");
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        throw InvalidArgument("impossible calendar date '" + text + "'");
    return days_from_civil(year, month, day);
}

std::string format_date(DateOrdinal ordinal) {
    int y, m, d;
    civil_from_days(ordinal, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
    return buf;
}

}  // namespace memkit

#pragma once

#include <cstdint>
#include <string>

namespace memkit {

// Calendar dates are held as integer day ordinals (days since 1970-01-01,
// proleptic Gregorian). ISO-8601 strings are the exchange format; ordinals
// make alignment an integer comparison.
using DateOrdinal = std::int64_t;

DateOrdinal days_from_civil(int year, int month, int day);
void civil_from_days(DateOrdinal ordinal, int& year, int& month, int& day);

// Parses a date string following a strftime-like pattern built from
// %Y, %m, %d and literal separators (e.g. "%Y-%m-%d", "%d/%m/%Y").
// Throws InvalidArgument on malformed input or impossible dates.
DateOrdinal parse_date(const std::string& text, const std::string& format = "%Y-%m-%d");

// ISO-8601 rendering (YYYY-MM-DD).
std::string format_date(DateOrdinal ordinal);

}  // namespace memkit

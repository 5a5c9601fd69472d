#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ordstat/bounds.hpp"
#include "ordstat/mc.hpp"

namespace ordstat {

/// One output row: ordered (column, value) pairs.
struct Field {
  std::string name;
  std::variant<double, std::int64_t, std::uint64_t, bool, std::string> value;
};
using Record = std::vector<Field>;

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

/// name, k, p, lower, upper, params, citation, assertable, seed (0), samples (0).
Record to_record(const BoundReport& report);
/// label, mean, std_error, median, median_lo, median_hi, samples, seed.
Record to_record(const McEstimate& estimate, std::string_view label);

/// Header is the union of columns in order of first appearance; missing cells are empty.
void write_csv(std::ostream& out, std::span<const Record> records);

nlohmann::json to_json(const Record& record);
/// {"command": ..., <meta>..., "records": [...]}.
void write_json(std::ostream& out, std::string_view command, const nlohmann::json& meta,
                std::span<const Record> records);

}  // namespace ordstat

#include "ordstat/report.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace ordstat {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>)
          return format_double(v);
        else if constexpr (std::is_same_v<V, bool>)
          return v ? "true" : "false";
        else if constexpr (std::is_same_v<V, std::string>)
          return csv_escape(v);
        else
          return std::to_string(v);
      },
      f.value);
}

std::string format_params(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += ';';
    out += key + '=' + format_double(value);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

Record to_record(const BoundReport& r) {
  return {{"name", r.name},
          {"k", static_cast<std::int64_t>(r.k)},
          {"p", r.p},
          {"lower", r.lower},
          {"upper", r.upper},
          {"params", format_params(r.params)},
          {"citation", r.citation},
          {"assertable", r.assertable},
          {"seed", std::uint64_t{0}},
          {"samples", std::int64_t{0}}};
}

Record to_record(const McEstimate& e, std::string_view label) {
  return {{"label", std::string(label)},
          {"mean", e.mean},
          {"std_error", e.std_error},
          {"median", e.median},
          {"median_lo", e.median_ci.first},
          {"median_hi", e.median_ci.second},
          {"samples", static_cast<std::int64_t>(e.samples)},
          {"seed", e.seed}};
}

void write_csv(std::ostream& out, std::span<const Record> records) {
  std::vector<std::string> columns;
  for (const auto& rec : records)
    for (const auto& f : rec)
      if (std::find(columns.begin(), columns.end(), f.name) == columns.end()) columns.push_back(f.name);
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& rec : records) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ',';
      const auto it = std::find_if(rec.begin(), rec.end(), [&](const Field& f) { return f.name == columns[c]; });
      if (it != rec.end()) out << cell(*it);
    }
    out << '\n';
  }
}

nlohmann::json to_json(const Record& record) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& f : record) {
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>) {
            if (std::isfinite(v))
              obj[f.name] = v;
            else
              obj[f.name] = format_double(v);
          } else {
            obj[f.name] = v;
          }
        },
        f.value);
  }
  return obj;
}

void write_json(std::ostream& out, std::string_view command, const nlohmann::json& meta,
                std::span<const Record> records) {
  nlohmann::json doc = nlohmann::json::object();
  doc["command"] = std::string(command);
  for (auto it = meta.begin(); it != meta.end(); ++it) doc[it.key()] = it.value();
  doc["records"] = nlohmann::json::array();
  for (const auto& r : records) doc["records"].push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

}  // namespace ordstat

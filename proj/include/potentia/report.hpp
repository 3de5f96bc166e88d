#pragma once

// Machine-readable run reports.  JSON carries numbers at 17 significant
// digits (round-trip safe), CSV uses RFC-4180 quoting with '.' decimals, and
// the human table renders at 9 digits.  All formatting goes through
// std::to_chars, so no locale can leak in.  With include_wall_time off the
// serialized bytes are a pure function of the computed values.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace potentia {

struct Cell {
  double number = 0.0;
  std::string flag;  // nonempty: render the flag instead of the number

  static Cell num(double v) {
    Cell c;
    c.number = v;
    if (std::isnan(v))
      c.flag = "singular";
    else if (std::isinf(v))
      c.flag = "divergent";
    return c;
  }
  static Cell text(std::string s) {
    Cell c;
    c.flag = std::move(s);
    return c;
  }
  bool is_number() const { return flag.empty(); }
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> verdicts;
  double wall_time_seconds = 0.0;
  bool include_wall_time = true;

  bool failed() const {
    for (const auto& v : verdicts)
      if (v.rfind("FAIL", 0) == 0) return true;
    return false;
  }
};

namespace detail {

inline std::string format_double(double v, int digits) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

inline std::string csv_quote(const std::string& s) {
  bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  out += "\"";
  return out;
}

}  // namespace detail

inline void write_json(const RunReport& rep, std::ostream& os) {
  os << "{\"command\":\"" << detail::json_escape(rep.command) << "\",";
  os << "\"parameters\":{";
  for (std::size_t i = 0; i < rep.parameters.size(); ++i) {
    if (i) os << ",";
    os << "\"" << detail::json_escape(rep.parameters[i].first) << "\":\""
       << detail::json_escape(rep.parameters[i].second) << "\"";
  }
  os << "},\"results\":{\"columns\":[";
  for (std::size_t i = 0; i < rep.columns.size(); ++i) {
    if (i) os << ",";
    os << "\"" << detail::json_escape(rep.columns[i]) << "\"";
  }
  os << "],\"rows\":[";
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    if (r) os << ",";
    os << "[";
    for (std::size_t c = 0; c < rep.rows[r].size(); ++c) {
      if (c) os << ",";
      const Cell& cell = rep.rows[r][c];
      if (cell.is_number())
        os << detail::format_double(cell.number, 17);
      else
        os << "\"" << detail::json_escape(cell.flag) << "\"";
    }
    os << "]";
  }
  os << "]},\"verdicts\":[";
  for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
    if (i) os << ",";
    os << "\"" << detail::json_escape(rep.verdicts[i]) << "\"";
  }
  os << "]";
  if (rep.include_wall_time)
    os << ",\"wall_time_seconds\":" << detail::format_double(rep.wall_time_seconds, 6);
  os << "}\n";
}

inline void write_csv(const RunReport& rep, std::ostream& os) {
  for (std::size_t i = 0; i < rep.columns.size(); ++i) {
    if (i) os << ",";
    os << detail::csv_quote(rep.columns[i]);
  }
  os << "\r\n";
  for (const auto& row : rep.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      if (row[c].is_number())
        os << detail::format_double(row[c].number, 17);
      else
        os << detail::csv_quote(row[c].flag);
    }
    os << "\r\n";
  }
}

inline void write_table(const RunReport& rep, std::ostream& os) {
  os << "# " << rep.command << "\n";
  for (const auto& [k, v] : rep.parameters) os << "  " << k << " = " << v << "\n";
  if (!rep.columns.empty()) {
    os << "\n";
    for (std::size_t i = 0; i < rep.columns.size(); ++i) {
      if (i) os << "  ";
      os << rep.columns[i];
    }
    os << "\n";
    for (const auto& row : rep.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << "  ";
        if (row[c].is_number())
          os << detail::format_double(row[c].number, 9);
        else
          os << row[c].flag;
      }
      os << "\n";
    }
  }
  for (const auto& v : rep.verdicts) os << v << "\n";
  if (rep.include_wall_time)
    os << "wall_time_seconds " << detail::format_double(rep.wall_time_seconds, 6)
       << "\n";
}

enum class ReportFormat { Table, Csv, Json };

inline void write_report(const RunReport& rep, ReportFormat fmt, std::ostream& os) {
  switch (fmt) {
    case ReportFormat::Json: write_json(rep, os); break;
    case ReportFormat::Csv: write_csv(rep, os); break;
    default: write_table(rep, os); break;
  }
}

}  // namespace potentia

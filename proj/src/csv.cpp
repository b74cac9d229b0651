#include "spdmlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spdmlab/errors.hpp"

namespace spdm {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), width_(header.size()) {
  if (!out_) throw Error("cannot open '" + path + "' for writing");
  for (const auto& h : header) field(h);
  end_row();
}

void CsvWriter::separator() {
  if (column_ > 0) row_ += ',';
  ++column_;
}

CsvWriter& CsvWriter::field(double x) {
  separator();
  row_ += format_real(x);
  return *this;
}

CsvWriter& CsvWriter::field(long long x) {
  separator();
  row_ += std::to_string(x);
  return *this;
}

CsvWriter& CsvWriter::field(bool x) {
  separator();
  row_ += x ? "true" : "false";
  return *this;
}

CsvWriter& CsvWriter::field(const std::string& s) {
  separator();
  row_ += csv_escape(s);
  return *this;
}

void CsvWriter::end_row() {
  const std::size_t got = column_;
  column_ = 0;
  if (got != width_) {
    row_.clear();
    throw Error("csv row in '" + path_ + "' has " + std::to_string(got) +
                " fields, header has " + std::to_string(width_));
  }
  out_ << row_ << "\r\n";
  row_.clear();
  if (!out_) throw Error("write to '" + path_ + "' failed");
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw Error("closing '" + path_ + "' failed");
}

namespace {

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ConfigError("csv has no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_record(line);
      first = false;
    } else {
      table.rows.push_back(split_record(line));
    }
  }
  return table;
}

}  // namespace spdm

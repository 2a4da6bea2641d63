#include <fstream>
#include <istream>
#include <ostream>

#include "edgelearn/errors.h"
#include "edgelearn/harness.h"

namespace edgelearn {

namespace {

void write_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

// One RFC 4180 record; false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  for (int ch = in.get(); ch != std::char_traits<char>::eof(); ch = in.get()) {
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (in.peek() == '"') {
        field += static_cast<char>(in.get());
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw InvalidConfig("csv: unterminated quoted field");
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InvalidConfig("no column '" + std::string(name) + "'");
}

void Table::write_csv(std::ostream& out) const {
  auto record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out << ',';
      write_field(out, fields[i]);
    }
    out << '\n';
  };
  record(columns);
  for (const auto& row : rows) record(row);
}

Table Table::read_csv(std::istream& in) {
  Table t;
  if (!read_record(in, t.columns)) throw InvalidConfig("csv: missing header");
  std::vector<std::string> row;
  while (read_record(in, row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != t.columns.size()) {
      throw InvalidConfig("csv: row " + std::to_string(t.rows.size() + 1) + " has " +
                          std::to_string(row.size()) + " fields, header has " +
                          std::to_string(t.columns.size()));
    }
    t.rows.push_back(row);
  }
  return t;
}

void write_table(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  table.write_csv(out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Table::read_csv(in);
}

}  // namespace edgelearn

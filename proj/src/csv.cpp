#include "causaltree/csv.hpp"

#include <charconv>
#include <sstream>

namespace causaltree {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  out.push_back(field);
  return out;
}

int parse_int(const std::string& s, int line_no) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + s + "' on dataset line " +
                     std::to_string(line_no));
  return v;
}

}  // namespace

std::string dataset_to_csv(const Dataset& data, const VariableSpace& space) {
  std::ostringstream out;
  out << "step,intervened_var,intervened_val";
  for (const std::string& name : space.names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << (i + 1) << ',';
    if (!data[i].j.empty())
      out << space.names[data[i].j.target->variable] << ',' << data[i].j.target->value;
    else
      out << ',';
    for (int v : data[i].x) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

Dataset dataset_from_csv(const std::string& text, const VariableSpace& space) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset file");
  const std::vector<std::string> header = split_csv_line(line);
  const std::size_t want = 3 + space.names.size();
  if (header.size() != want || header[0] != "step" || header[1] != "intervened_var" ||
      header[2] != "intervened_val")
    throw ParseError("unexpected dataset header");
  for (int v = 0; v < space.size(); ++v)
    if (header[3 + v] != space.names[v])
      throw ParseError("dataset column '" + header[3 + v] + "' does not match variable '" +
                       space.names[v] + "'");

  Dataset data;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != want)
      throw ParseError("expected " + std::to_string(want) + " fields on dataset line " +
                       std::to_string(line_no));
    DataRecord rec;
    if (f[1].empty() != f[2].empty())
      throw ParseError("intervened_var/intervened_val must be both set or both empty, line " +
                       std::to_string(line_no));
    if (!f[1].empty()) {
      int var = -1;
      for (int v = 0; v < space.size(); ++v)
        if (space.names[v] == f[1]) var = v;
      if (var < 0)
        throw ParseError("unknown intervened variable '" + f[1] + "' on dataset line " +
                         std::to_string(line_no));
      rec.j = Intervention::make(var, parse_int(f[2], line_no));
    }
    rec.x.resize(space.size());
    for (int v = 0; v < space.size(); ++v) {
      rec.x[v] = parse_int(f[3 + v], line_no);
      if (rec.x[v] < 0 || rec.x[v] >= space.cardinalities[v])
        throw ParseError("value out of range on dataset line " + std::to_string(line_no));
    }
    if (!rec.j.empty() && rec.x[rec.j.target->variable] != rec.j.target->value)
      throw ParseError("assignment contradicts its intervention on dataset line " +
                       std::to_string(line_no));
    data.push_back(std::move(rec));
  }
  return data;
}

}  // namespace causaltree

#include "io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unordered_map>
#include <vector>

namespace cli_io {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError(2, "cannot open output file: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw CliError(2, "write failed: " + path);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    write_file(out_path, content);
  }
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

becstat::stats::SpectrumCollection read_spectrum_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError(2, "cannot open input file: " + path);

  becstat::stats::SpectrumCollection col;
  std::unordered_map<std::string, std::size_t> slot;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "sector,index,energy")
        throw CliError(2, "not a spectrum CSV (unexpected header): " + path);
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_row(line);
    if (fields.size() != 3)
      throw CliError(2, "malformed spectrum CSV row: " + line);
    const char* text = fields[2].c_str();
    char* end = nullptr;
    const double energy = std::strtod(text, &end);
    if (end == text || *end != '\0')
      throw CliError(2, "malformed energy value: " + fields[2]);
    auto [it, fresh] = slot.try_emplace(fields[0], col.sectors.size());
    if (fresh) col.sectors.push_back({fields[0], {}});
    col.sectors[it->second].second.push_back(energy);
  }
  if (!header_seen) throw CliError(2, "empty spectrum CSV: " + path);
  return col;
}

}  // namespace cli_io

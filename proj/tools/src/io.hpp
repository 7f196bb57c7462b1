#pragma once

#include <stdexcept>
#include <string>

#include "becstat/stats.hpp"

namespace cli_io {

// Error with the process exit code attached (2 = configuration, 3 = numerics).
struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

// 17 significant digits: enough for exact double round trips through text.
std::string g17(double v);

// RFC 4180 field quoting (only when the content demands it).
std::string csv_field(const std::string& s);

void write_file(const std::string& path, const std::string& content);

// Writes to the path, or to stdout when the path is empty.
void emit(const std::string& out_path, const std::string& content);

// Reads a spectrum CSV produced by the spectrum command back into sectors.
becstat::stats::SpectrumCollection read_spectrum_csv(const std::string& path);

}  // namespace cli_io

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bergman/diskquad.hpp"

namespace bergman::cli {

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  double alpha = 0.0;
  double beta = -0.5;
  double a = 0.0;
  double b = 0.0;
  double p = 2.0;
  /// Which of alpha, beta, a, b, p were given explicitly.
  bool alpha_set = false, beta_set = false, a_set = false, b_set = false, p_set = false;
  int radial_order = 80;
  int angular_count = 256;
  /// Zero selects each command's default tolerance.
  double tol = 0.0;
  std::uint64_t seed = 20240611;
  Format format = Format::Csv;
  std::string out;
  std::string function = "monomial:1,1";
  std::vector<std::complex<double>> points;
  std::vector<std::pair<std::complex<double>, std::complex<double>>> pairs;
  double c = -0.5;
  double d = 1.0;
  bool d_set = false;
  std::vector<double> radii;
  int sweep = 0;
};

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  Table table;
  std::vector<std::string> failures;
  std::uint64_t seed = 0;
};

Report cmd_verify_lemma1(const RunConfig& config);
Report cmd_berezin_eval(const RunConfig& config);
Report cmd_asymptotics(const RunConfig& config);
Report cmd_boundedness(const RunConfig& config);
Report cmd_metric(const RunConfig& config);
Report cmd_lipschitz(const RunConfig& config);
Report cmd_verify_all(const RunConfig& config);

/// Dispatches on config.command.
Report run_command(const RunConfig& config);

/// Decimal with 15 significant digits; empty for NaN or infinity.
std::string format_number(double v);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Parses "one", "monomial:n,m", "gn:N", "log", "h:s,tau", "re:n", "im:n".
TestFunction parse_function(const std::string& spec);
/// Parses "x,y" as x + iy.
std::complex<double> parse_point(const std::string& text);
/// Parses "x1,y1:x2,y2".
std::pair<std::complex<double>, std::complex<double>> parse_pair(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace bergman::cli

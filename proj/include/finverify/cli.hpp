#pragma once

// Command-line surface: run configuration, report tables and the five
// commands (families, verify, fd-compare, orbit, export).
//
// Exit codes: 0 every check passed, 1 a check failed, 2 configuration or
// usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "finverify/catalog.hpp"
#include "finverify/errors.hpp"
#include "finverify/types.hpp"

namespace finverify::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::optional<int> family;
  std::optional<double> epsilon;
  std::optional<double> c0;
  std::optional<double> c1;
  std::optional<int> sign;
  std::optional<double> t0, t1, x0, x1;
  std::optional<int> nt, nx;
  /// Overrides every per-check tolerance.
  std::optional<double> tol;
  std::string out;
  Format format = Format::Csv;
  // orbit
  double delta0 = 0.0;
  double delta1 = 0.0;
  std::optional<double> flow_eps;
  // fd-compare
  std::vector<int> sizes{51, 101, 201};
  /// From FINVERIFY_SEED; drives the sampled checks of verify.
  std::uint64_t seed = 20240607;
};

/// Parses flags (and the --config key=value file they name); flags win over
/// file values. Throws ConfigError with the usage message on bad input.
/// Returns nullopt when help was requested (text already written to out).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

// ---------------------------------------------------------------------------
// Report tables.

using Cell = std::variant<std::monostate, std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  /// CSV: header row, one newline-terminated row per record, shortest
  /// round-trip numbers, empty cells for missing values.
  /// JSON: array of objects with keys in header order.
  void write(std::ostream& os, Format format) const;
};

// ---------------------------------------------------------------------------
// Family selection and default boxes.

/// The selected family variants: every family when none is given, and all
/// three eps values for family 1 unless --epsilon pins one.
std::vector<catalog::FamilySpec> select_families(const RunConfig& cfg);

/// Default verification box of a family (20 x 20 nodes), then the config
/// overrides.
Box default_box(const catalog::FamilySpec& spec);
Box config_box(const RunConfig& cfg, const catalog::FamilySpec& spec);

/// "1[eps=0]", "3", "6[c0=0;sign=1;psi=(0:1)]"
std::string family_label(const catalog::FamilySpec& spec);

// ---------------------------------------------------------------------------
// Commands. Each fills a table and returns the exit code; configuration
// problems surface as ConfigError.

struct CheckResult {
  std::string check;
  std::string family;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Table cmd_families();

/// Invariant suite for one family.
std::vector<CheckResult> verify_family(const catalog::FamilySpec& spec, const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, Table& table);
int cmd_fd_compare(const RunConfig& cfg, Table& table);
int cmd_orbit(const RunConfig& cfg, Table& table);
int cmd_export(const RunConfig& cfg, Table& table);

/// Full entry point used by the executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace finverify::cli

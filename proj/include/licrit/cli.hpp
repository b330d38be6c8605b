#ifndef LICRIT_CLI_HPP
#define LICRIT_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "licrit/ball.hpp"
#include "licrit/report.hpp"

namespace licrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;

/// Settings shared by every subcommand.
struct RunConfig {
  Precision precision_bits = kDefaultWorkingBits;
  std::string target_radius = "1e-20";
  Precision max_bits = kDefaultMaxBits;
  std::optional<std::string> zeros_path;  // unset: the bundled table
  std::optional<double> scan_height;      // set: scan for zeros instead of reading a table
  report::Format output_format = report::Format::json;
  std::optional<std::string> out_path;
  bool raw_hex = false;

  /// Throws std::invalid_argument if the values break a context invariant.
  PrecisionContext context() const;
};

/// Path of the zero table used when --zeros is not given.
std::string default_zeros_path();

/// Parses "a", "a+bi", "a-bi", "bi" (decimals) into a complex ball.
BallComplex parse_complex(std::string_view text, Precision bits);

/// Comma-separated decimals.
std::vector<BallReal> parse_list(std::string_view text, Precision bits);

/// Runs one command line (without the program name).  The rendered report
/// goes to `out`, diagnostics and help on errors to `err`.  Returns the exit
/// status: 0 success, 2 usage or input error, 3 undecided verdict, 1 internal
/// error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace licrit::cli

#endif  // LICRIT_CLI_HPP

#ifndef LICRIT_REPORT_HPP
#define LICRIT_REPORT_HPP

// Rendering of module results as canonical JSON, CSV and markdown, and the
// on-disk zero cache.
//
// A ball is written as {"mid": decimal, "rad": decimal}.  The midpoint carries
// ceil(bits * log10 2) significant digits; the radius is rounded upward to
// three digits and includes the decimal conversion error of the midpoint, so
// the printed ball still encloses the computed one.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "licrit/ball.hpp"
#include "licrit/certify.hpp"
#include "licrit/kernel.hpp"
#include "licrit/li.hpp"
#include "licrit/zeros.hpp"

namespace licrit::report {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

class IOError : public Error {
 public:
  using Error::Error;
};

enum class Format { json, csv, markdown };

/// Throws std::invalid_argument for anything but json, csv, markdown.
Format parse_format(std::string_view name);
std::string_view to_string(Format f);

std::string_view version();

struct Options {
  bool raw_hex = false;  // add exact "mid_hex" / "rad_hex" fields
};

/// ceil(bits * 0.30103)
int decimal_digits(Precision bits);

Json ball_json(const BallReal& x, const Options& options = {});
Json ball_json(const BallComplex& z, const Options& options = {});
Json mag_json(const Mag& m);

/// Decimal midpoint and radius as strings, as in ball_json.
std::string mid_text(const BallReal& x);
std::string rad_text(const BallReal& x);
std::string mag_text(const Mag& m);
/// Short human form "mid +/- rad" with at most `digits` significant digits.
std::string ball_cell(const BallReal& x, int digits = 20);

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string kind;
  Json data = Json::object();
  std::vector<Table> tables;
  std::vector<std::string> notes;
  /// Some verdict could not be certified; the CLI exits with status 3.
  bool undecided = false;
};

/// Deterministic text.  JSON: data plus "kind" and "notes", sorted keys, one
/// line.  CSV: each table as a header line and one line per row, tables
/// separated by a blank line.  Markdown: title, tables, notes.
std::string render(const Report& report, Format format);

/// Merges several reports into one; each contributes data under its kind.
Report combine(std::string kind, const std::vector<Report>& parts);

Json config_json(const PrecisionContext& ctx);

// --- converters -------------------------------------------------------------------

Report value_report(std::string_view function, std::string_view route, const Json& input,
                    const Certified<BallComplex>& value, const Options& options = {});
Report value_report(std::string_view function, std::string_view route, const Json& input,
                    const Certified<BallReal>& value, const Options& options = {});

Report zero_table_report(const zeros::ZeroTable& table, const Options& options = {});
Report refine_report(const BallReal& lo, const BallReal& hi, const BallReal& zero, const Options& options = {});
Report li_report(const li::LiSequence& sequence, const Options& options = {});
Report kernel_evaluation_report(const kernel::KernelEvaluation& evaluation, const Options& options = {});
Report monotonicity_report(const kernel::MonotonicityReport& scan, const Options& options = {});
Report gram_report(const kernel::KernelGram& gram, const kernel::PsdResult& psd, const Options& options = {});
Report determinant_report(const std::vector<BallReal>& points, const kernel::Determinant& det,
                          const Options& options = {});
Report experiment_report(const kernel::ExperimentReport& experiment, const Options& options = {});

// --- zero cache -------------------------------------------------------------------

/// Writes the table with a header (generator version, precision, validation
/// status, source, count).  Each zero is printed with enough decimals that
/// the re-imported ball [v +/- 10^-d] contains the stored enclosure.  The file
/// is created exclusively under a temporary name and renamed into place.
void write_zero_cache(const zeros::ZeroTable& table, const std::string& path);

/// Reads and validates a zero file (a cache or a plain table).  IOError if
/// the file cannot be read, FormatError on malformed content or a header
/// count mismatch, ValidationError if a zero fails its sign check.
zeros::ZeroTable read_zero_cache(const std::string& path, const PrecisionContext& ctx,
                                 const zeros::ImportOptions& options = {});

}  // namespace licrit::report

#endif  // LICRIT_REPORT_HPP

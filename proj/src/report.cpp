#include "licrit/report.hpp"

#include <mpfr.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef LICRIT_VERSION
#define LICRIT_VERSION "0.0.0"
#endif

namespace licrit::report {

namespace {

std::string take(char* buf) {
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

/// Decimal form of x with `digits` significant digits; `err` receives an
/// upper bound of the conversion error.
std::string decimal(mpfr_srcptr x, int digits, Mag& err) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNg", digits, x);
  std::string text = take(buf);
  err = Mag();
  if (mpfr_zero_p(x) || !mpfr_number_p(x)) return text;
  mpfr_t back;
  mpfr_init2(back, mpfr_get_prec(x));
  int ternary = mpfr_strtofr(back, text.c_str(), nullptr, 10, MPFR_RNDN);
  bool exact = ternary == 0 && mpfr_equal_p(back, x);
  mpfr_clear(back);
  if (!exact) err = Mag::abs_of(x) * Mag::from_string("1e-" + std::to_string(digits - 1));
  return text;
}

std::string upward(const Mag& m, int digits = 3) {
  if (m.is_zero()) return "0";
  if (!m.is_finite()) return "inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RUg", digits, m.get());
  return take(buf);
}

std::string hex(mpfr_srcptr x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", x);
  return take(buf);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string points_text(const std::vector<BallReal>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ",";
    s += ball_cell(pts[i], 12);
  }
  return s + "}";
}

Json points_json(const std::vector<BallReal>& pts, const Options& o) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(ball_json(p, o));
  return a;
}

Json tail_json(const zeros::TailBound& t, const Options& o) {
  Json j;
  j["cutoff_index"] = t.cutoff_index;
  j["cutoff_height"] = ball_json(t.cutoff_height, o);
  j["bound"] = mag_json(t.value);
  j["unbounded"] = t.unbounded;
  j["model"] = std::string(zeros::kTailModel);
  return j;
}

Json determinant_json(const kernel::Determinant& d, const Options& o) {
  Json j;
  j["value"] = ball_json(d.value, o);
  j["verdict"] = std::string(kernel::to_string(d.verdict));
  j["bits"] = d.bits;
  j["exhausted"] = d.exhausted;
  return j;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "markdown") return Format::markdown;
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::markdown: return "markdown";
  }
  return "json";
}

std::string_view version() { return LICRIT_VERSION; }

int decimal_digits(Precision bits) { return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30103)); }

std::string mid_text(const BallReal& x) {
  Mag err;
  return decimal(x.mid(), decimal_digits(x.precision()), err);
}

std::string rad_text(const BallReal& x) {
  Mag err;
  decimal(x.mid(), decimal_digits(x.precision()), err);
  return upward(x.rad() + err);
}

std::string mag_text(const Mag& m) { return upward(m); }

std::string ball_cell(const BallReal& x, int digits) {
  Mag err;
  std::string mid = decimal(x.mid(), std::min(digits, decimal_digits(x.precision())), err);
  Mag rad = x.rad() + err;
  if (rad.is_zero()) return mid;
  return mid + " +/- " + upward(rad, 2);
}

Json ball_json(const BallReal& x, const Options& options) {
  Mag err;
  Json j;
  j["mid"] = decimal(x.mid(), decimal_digits(x.precision()), err);
  j["rad"] = upward(x.rad() + err);
  if (options.raw_hex) {
    j["mid_hex"] = hex(x.mid());
    j["rad_hex"] = hex(x.rad().get());
  }
  return j;
}

Json ball_json(const BallComplex& z, const Options& options) {
  return Json{{"re", ball_json(z.real(), options)}, {"im", ball_json(z.imag(), options)}};
}

Json mag_json(const Mag& m) { return upward(m); }

Json config_json(const PrecisionContext& ctx) {
  Json j;
  j["bits"] = ctx.working_bits;
  j["target_radius"] = upward(ctx.target_radius);
  j["max_bits"] = ctx.max_bits;
  return j;
}

std::string render(const Report& report, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::json: {
      Json j = report.data;
      j["kind"] = report.kind;
      if (!report.notes.empty()) j["notes"] = report.notes;
      out << j.dump() << '\n';
      break;
    }
    case Format::csv: {
      bool first = true;
      for (const Table& t : report.tables) {
        if (!first) out << '\n';
        first = false;
        for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_field(t.columns[c]);
        out << '\n';
        for (const auto& row : t.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
          out << '\n';
        }
      }
      break;
    }
    case Format::markdown: {
      out << "# " << report.kind << "\n";
      for (const Table& t : report.tables) {
        out << '\n';
        if (!t.title.empty()) out << "## " << t.title << "\n\n";
        out << '|';
        for (const auto& c : t.columns) out << ' ' << md_cell(c) << " |";
        out << "\n|";
        for (std::size_t c = 0; c < t.columns.size(); ++c) out << "---|";
        out << '\n';
        for (const auto& row : t.rows) {
          out << '|';
          for (const auto& cell : row) out << ' ' << md_cell(cell) << " |";
          out << '\n';
        }
      }
      if (!report.notes.empty()) {
        out << '\n';
        for (const auto& n : report.notes) out << "- " << n << '\n';
      }
      break;
    }
  }
  return out.str();
}

Report combine(std::string kind, const std::vector<Report>& parts) {
  Report r;
  r.kind = std::move(kind);
  for (const Report& p : parts) {
    r.data[p.kind] = p.data;
    for (const Table& t : p.tables) {
      Table copy = t;
      if (copy.title.empty()) copy.title = p.kind;
      r.tables.push_back(std::move(copy));
    }
    r.notes.insert(r.notes.end(), p.notes.begin(), p.notes.end());
    r.undecided = r.undecided || p.undecided;
  }
  return r;
}

// --- converters ---------------------------------------------------------------------

Report value_report(std::string_view function, std::string_view route, const Json& input,
                    const Certified<BallComplex>& value, const Options& options) {
  Report r;
  r.kind = "eval";
  r.data["function"] = std::string(function);
  r.data["route"] = std::string(route);
  r.data["input"] = input;
  r.data["value"] = ball_json(value.value, options);
  r.data["bits"] = value.bits;
  r.data["exhausted"] = value.exhausted;
  r.undecided = value.exhausted;
  r.tables.push_back({"", {"function", "route", "input", "re", "im", "bits", "exhausted"},
                      {{std::string(function), std::string(route), input.dump(), ball_cell(value.value.real()),
                        ball_cell(value.value.imag()), std::to_string(value.bits), yes_no(value.exhausted)}}});
  return r;
}

Report value_report(std::string_view function, std::string_view route, const Json& input,
                    const Certified<BallReal>& value, const Options& options) {
  Report r;
  r.kind = "eval";
  r.data["function"] = std::string(function);
  r.data["route"] = std::string(route);
  r.data["input"] = input;
  r.data["value"] = ball_json(value.value, options);
  r.data["bits"] = value.bits;
  r.data["exhausted"] = value.exhausted;
  r.undecided = value.exhausted;
  r.tables.push_back({"", {"function", "route", "input", "value", "bits", "exhausted"},
                      {{std::string(function), std::string(route), input.dump(), ball_cell(value.value),
                        std::to_string(value.bits), yes_no(value.exhausted)}}});
  return r;
}

Report zero_table_report(const zeros::ZeroTable& table, const Options& options) {
  Report r;
  r.kind = "zeros";
  r.data["count"] = table.count();
  r.data["source"] = table.source == zeros::Source::imported ? "imported" : "computed";
  r.data["validated"] = table.validated;
  r.data["precision"] = table.precision;
  Json zs = Json::array();
  Table t{"", {"n", "zero"}, {}};
  for (std::size_t i = 0; i < table.count(); ++i) {
    zs.push_back(ball_json(table.zeros[i], options));
    t.rows.push_back({std::to_string(i + 1), ball_cell(table.zeros[i])});
  }
  r.data["zeros"] = std::move(zs);
  r.tables.push_back(std::move(t));
  return r;
}

Report refine_report(const BallReal& lo, const BallReal& hi, const BallReal& zero, const Options& options) {
  Report r;
  r.kind = "zero-refine";
  r.data["lo"] = ball_json(lo, options);
  r.data["hi"] = ball_json(hi, options);
  r.data["zero"] = ball_json(zero, options);
  r.tables.push_back({"", {"lo", "hi", "zero"}, {{ball_cell(lo), ball_cell(hi), ball_cell(zero, 30)}}});
  return r;
}

Report li_report(const li::LiSequence& sequence, const Options& options) {
  Report r;
  r.kind = "li";
  r.data["bits"] = sequence.bits;
  r.data["exhausted"] = sequence.exhausted;
  Json entries = Json::array();
  Table t{"", {"n", "lambda", "verdict", "zero_sum", "tail", "routes_agree"}, {}};
  bool any_zero_sum = false;
  for (const li::LiEntry& e : sequence.entries) {
    Json j;
    j["n"] = e.n;
    j["lambda"] = ball_json(e.derivative_route, options);
    j["verdict"] = std::string(li::to_string(e.verdict));
    j["routes_agree"] = e.routes_agree;
    std::string zs = "-", tail = "-";
    if (e.zero_sum_route) {
      any_zero_sum = true;
      j["zero_sum"] = ball_json(*e.zero_sum_route, options);
      zs = ball_cell(*e.zero_sum_route);
    }
    if (e.tail) {
      j["tail"] = tail_json(*e.tail, options);
      tail = upward(e.tail->value, 2);
    }
    if (e.verdict == li::Verdict::undecided) r.undecided = true;
    t.rows.push_back({std::to_string(e.n), ball_cell(e.derivative_route), std::string(li::to_string(e.verdict)), zs,
                      tail, yes_no(e.routes_agree)});
    entries.push_back(std::move(j));
  }
  r.data["entries"] = std::move(entries);
  r.tables.push_back(std::move(t));
  if (any_zero_sum) {
    r.data["zero_sum_model"] = std::string(li::kZeroSumLabel);
    r.notes.push_back("zero_sum column: " + std::string(li::kZeroSumLabel) + "; " + std::string(zeros::kTailModel));
  }
  return r;
}

Report kernel_evaluation_report(const kernel::KernelEvaluation& ev, const Options& options) {
  Report r;
  r.kind = "kernel-g";
  r.data["w"] = ball_json(ev.argument, options);
  r.data["route_a"] = ball_json(ev.route_a, options);
  r.data["agree"] = ev.agree;
  std::string partial = "-", tail = "-";
  if (ev.route_b) {
    Json b;
    b["partial"] = ball_json(ev.route_b->partial, options);
    b["tail"] = tail_json(ev.route_b->tail, options);
    r.data["route_b"] = std::move(b);
    partial = ball_cell(ev.route_b->partial);
    tail = upward(ev.route_b->tail.value, 2);
    r.notes.push_back("route b: RH-model zero sum, truncated; " + std::string(zeros::kTailModel));
  }
  r.tables.push_back({"", {"w", "route_a", "route_b_partial", "route_b_tail", "agree"},
                      {{ball_cell(ev.argument), ball_cell(ev.route_a), partial, tail, yes_no(ev.agree)}}});
  return r;
}

Report monotonicity_report(const kernel::MonotonicityReport& scan, const Options& options) {
  Report r;
  r.kind = "cm-scan";
  r.data["disagreements"] = scan.disagreements;
  r.data["nonpositive"] = scan.nonpositive;
  Json pts = Json::array();
  Table t{"", {"z", "k", "route_a", "route_b", "route_b_tail", "route_b_positive", "agree"}, {}};
  for (const auto& p : scan.points) {
    Json j;
    j["z"] = ball_json(p.z, options);
    j["k"] = p.k;
    j["route_a"] = ball_json(p.route_a, options);
    j["route_b"] = ball_json(p.route_b, options);
    j["route_b_tail"] = mag_json(p.route_b_tail);
    j["route_b_positive"] = p.route_b_positive;
    j["agree"] = p.agree;
    pts.push_back(std::move(j));
    t.rows.push_back({ball_cell(p.z, 12), std::to_string(p.k), ball_cell(p.route_a), ball_cell(p.route_b),
                      upward(p.route_b_tail, 2), yes_no(p.route_b_positive), yes_no(p.agree)});
  }
  r.data["points"] = std::move(pts);
  r.tables.push_back(std::move(t));
  r.notes.push_back("route_a: (-1)^k g^(k)(z) by certified central differences");
  r.notes.push_back("route_b: k! sum 1/(z + z_n^2)^(k+1), RH-model, truncated");
  return r;
}

Report gram_report(const kernel::KernelGram& gram, const kernel::PsdResult& psd, const Options& options) {
  Report r;
  r.kind = "gram";
  r.data["points"] = points_json(gram.points, options);
  r.data["route"] = std::string(kernel::to_string(gram.route));
  r.data["bits"] = gram.bits;
  Json m = Json::array();
  Table t{"matrix", {}, {}};
  t.columns.push_back("");
  for (std::size_t j = 0; j < gram.points.size(); ++j) t.columns.push_back(ball_cell(gram.points[j], 12));
  for (std::size_t i = 0; i < gram.matrix.size(); ++i) {
    Json row = Json::array();
    std::vector<std::string> cells{ball_cell(gram.points[i], 12)};
    for (const auto& x : gram.matrix[i]) {
      row.push_back(ball_json(x, options));
      cells.push_back(ball_cell(x));
    }
    m.push_back(std::move(row));
    t.rows.push_back(std::move(cells));
  }
  r.data["matrix"] = std::move(m);
  if (gram.tail) {
    r.data["tail"] = tail_json(*gram.tail, options);
    r.notes.push_back("route b entries are RH-model truncated zero sums; each omits at most " +
                      upward(gram.tail->value, 2));
  }
  Json p;
  p["min_eig_lower"] = ball_json(psd.min_eig_lower, options);
  p["verdict"] = std::string(kernel::to_string(psd.verdict));
  r.data["psd"] = std::move(p);
  if (psd.verdict == kernel::PsdVerdict::undecided) r.undecided = true;
  r.tables.push_back(std::move(t));
  r.tables.push_back({"psd", {"min_eig_lower", "verdict", "radius_sum"},
                      {{ball_cell(psd.min_eig_lower), std::string(kernel::to_string(psd.verdict)),
                        upward(kernel::radius_sum(gram.matrix), 2)}}});
  return r;
}

Report determinant_report(const std::vector<BallReal>& points, const kernel::Determinant& det,
                          const Options& options) {
  Report r;
  r.kind = "det";
  r.data["points"] = points_json(points, options);
  r.data["determinant"] = determinant_json(det, options);
  r.undecided = det.verdict == kernel::SignVerdict::zero_straddling;
  r.tables.push_back({"", {"points", "determinant", "verdict", "bits", "exhausted"},
                      {{points_text(points), ball_cell(det.value), std::string(kernel::to_string(det.verdict)),
                        std::to_string(det.bits), yes_no(det.exhausted)}}});
  return r;
}

Report experiment_report(const kernel::ExperimentReport& ex, const Options& options) {
  Report r;
  r.kind = "experiment";
  r.data["model_note"] = ex.model_note;
  Json claims = Json::array();
  Table t{"claims",
          {"claim", "paper_value", "route_a_det", "sign_verdict", "status", "sign_matches_claim", "route_b_partial",
           "route_b_control", "route_b_consistent", "discrepancy"},
          {}};
  for (const kernel::Claim& c : ex.claims) {
    Json j;
    j["label"] = c.label;
    j["points"] = points_json(c.points, options);
    j["paper_value"] = c.paper_value_text;
    j["route_a"] = determinant_json(c.route_a, options);
    j["status"] = std::string(kernel::to_string(c.status));
    j["sign_matches_claim"] = c.sign_matches_claim;
    j["route_b_partial"] = determinant_json(c.route_b_partial, options);
    j["route_b_control"] = ball_json(c.route_b_control, options);
    j["route_b_consistent"] = c.route_b_consistent;
    j["discrepancy"] = c.discrepancy;
    claims.push_back(std::move(j));
    if (c.status == kernel::ClaimStatus::undecided) r.undecided = true;
    t.rows.push_back({c.label, c.paper_value_text, ball_cell(c.route_a.value),
                      std::string(kernel::to_string(c.route_a.verdict)), std::string(kernel::to_string(c.status)),
                      yes_no(c.sign_matches_claim), ball_cell(c.route_b_partial.value), ball_cell(c.route_b_control),
                      yes_no(c.route_b_consistent), yes_no(c.discrepancy)});
    r.notes.push_back("claimed: det = " + c.paper_value_text + " for " + c.label + "; certified route a: " +
                      ball_cell(c.route_a.value) + " (" + std::string(kernel::to_string(c.route_a.verdict)) + ") -> " +
                      std::string(kernel::to_string(c.status)));
    if (c.discrepancy)
      r.notes.push_back("**DISCREPANCY** " + c.label +
                        ": route a is certified negative beyond the route b tail slack; the truncated-zero model "
                        "cannot account for it");
  }
  r.data["claims"] = std::move(claims);
  r.tables.push_back(std::move(t));
  r.notes.push_back("route b: " + ex.model_note);
  return r;
}

// --- zero cache ---------------------------------------------------------------------

void write_zero_cache(const zeros::ZeroTable& table, const std::string& path) {
  std::ostringstream body;
  body << "# licrit zero cache\n";
  body << "# version: " << version() << '\n';
  body << "# precision: " << table.precision << '\n';
  body << "# validated: " << (table.validated ? "true" : "false") << '\n';
  body << "# source: " << (table.source == zeros::Source::imported ? "imported" : "computed") << '\n';
  body << "# count: " << table.count() << '\n';
  for (const BallReal& z : table.zeros) {
    // Decimals d with 10^-d >= 2 rad, so [v +/- 10^-d] covers the ball.
    int d = 30;
    if (!z.rad().is_zero()) {
      double r = z.rad().to_double();
      d = std::min(30, static_cast<int>(std::floor(-std::log10(2.0 * r))));
    }
    if (d < 1) throw IOError("zero enclosure too wide to serialise: " + ball_cell(z));
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNf", d, z.mid());
    body << take(buf) << '\n';
  }

  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  std::FILE* f = std::fopen(tmp.c_str(), "wx");
  if (!f) throw IOError("cannot create " + tmp + ": " + std::strerror(errno));
  const std::string text = body.str();
  bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  ok = (std::fclose(f) == 0) && ok;
  if (!ok) {
    std::remove(tmp.c_str());
    throw IOError("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    int e = errno;
    std::remove(tmp.c_str());
    throw IOError("cannot rename " + tmp + " to " + path + ": " + std::strerror(e));
  }
}

zeros::ZeroTable read_zero_cache(const std::string& path, const PrecisionContext& ctx,
                                 const zeros::ImportOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IOError("error reading " + path);
  const std::string text = ss.str();

  long declared = -1;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("# count:", 0) == 0) {
      try {
        declared = std::stol(line.substr(8));
      } catch (const std::exception&) {
        throw zeros::FormatError(path + ": malformed count header");
      }
    }
  }
  zeros::ZeroTable table = zeros::import_zeros(text, ctx, options);
  if (declared >= 0 && static_cast<std::size_t>(declared) != table.count())
    throw zeros::FormatError(path + ": header declares " + std::to_string(declared) + " zeros, file has " +
                             std::to_string(table.count()));
  return table;
}

}  // namespace licrit::report

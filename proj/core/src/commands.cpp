#include "spectral_rec/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spectral_rec/json_io.hpp"

namespace spectral_rec {

namespace {

namespace fs = std::filesystem;

struct Session {
  std::shared_ptr<const SpectralCurve> curve;
  DocumentInfo info;
  int threads = 1;
  /// The table always reaches level 1 so that S_2 is available.
  int level = 1;
};

Session open_session(const CurveConfig& config, const RunOptions& options) {
  Session s;
  s.curve = std::make_shared<const SpectralCurve>(build_curve(config, options.h_model));
  s.info = DocumentInfo{config.name, config_hash(config, options.h_model)};
  s.threads = options.threads > 0 ? options.threads : default_thread_count();
  s.level = std::max(config.max_level(), 1);
  return s;
}

Error with_context(const Error& e, const std::string& context) { return Error(e.kind(), context + ": " + e.what()); }

CorrelatorTable compute_correlators(const Session& s, const CurveConfig& config) {
  try {
    return compute_table(s.curve, s.level, s.threads, config.seed);
  } catch (const Error& e) {
    throw with_context(e, "correlators");
  }
}

FreeEnergyTable integrate(const CorrelatorTable& table) {
  try {
    return integrate_table(table);
  } catch (const Error& e) {
    throw with_context(e, "free energies");
  }
}

WKBExpansion expand(const FreeEnergyTable& table, int order) {
  try {
    return build_wkb(table, order);
  } catch (const Error& e) {
    throw with_context(e, "wkb");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::kMalformedInput, "cannot write " + path.string());
}

/// W_{1,1} and W_{0,3} against their closed forms, on whatever table is given.
VerificationReport closed_form_checks(const CorrelatorTable& table, std::uint64_t seed) {
  VerificationReport report;
  const SpectralCurve& curve = table.curve();
  if (!curve.involution()) return report;
  if (table.contains(1, 1)) {
    bool equal = false;
    try {
      equal = table.at(1, 1).terms == w11_closed_form(curve).terms;
    } catch (const Error&) {
    }
    report.add("closed form W(1,1)", equal, equal ? "" : "W(1,1) differs from its closed form");
  }
  if (table.contains(0, 3)) {
    bool equal = true;
    for (const auto& z : generic_samples(curve, 3, 20, seed)) {
      if (evaluate(curve, table.at(0, 3), z) != w03_closed_form(curve, z[0], z[1], z[2])) equal = false;
    }
    report.add("closed form W(0,3)", equal, equal ? "" : "W(0,3) differs from its closed form at a sample point");
  }
  return report;
}

}  // namespace

ExitCode exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedInput:
    case ErrorKind::kSyntax:
    case ErrorKind::kUnsupportedCurve:
    case ErrorKind::kUnsupportedRamification:
    case ErrorKind::kMode:
    case ErrorKind::kDegenerateCurve:
    case ErrorKind::kNotASpectralCurve:
    case ErrorKind::kBadSheet:
    case ErrorKind::kBadSample:
    case ErrorKind::kUnsupportedOperation:
      return ExitCode::kInvalidInput;
    case ErrorKind::kInvariantViolation:
    case ErrorKind::kNormalization:
    case ErrorKind::kQuantizationFailure:
    case ErrorKind::kConsistency:
      return ExitCode::kVerificationFailure;
    default:
      return ExitCode::kInternalError;
  }
}

std::vector<fs::path> run_compute(const CurveConfig& config, const fs::path& out_dir, const RunOptions& options) {
  const Session s = open_session(config, options);
  const CorrelatorTable table = compute_correlators(s, config);
  const FreeEnergyTable free = integrate(table);
  std::vector<std::pair<fs::path, std::string>> docs;
  docs.emplace_back(out_dir / "w.json", correlators_document(s.info, table));
  docs.emplace_back(out_dir / "f.json", free_energies_document(s.info, free));
  if (s.curve->involution()) docs.emplace_back(out_dir / "wkb.json", wkb_document(s.info, expand(free, config.wkb_order)));
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  for (const auto& [path, text] : docs) {
    write_file(path, text);
    written.push_back(path);
  }
  return written;
}

ExitCode run_verify(const CurveConfig& config, std::string_view suite, const fs::path& out_dir, std::ostream& out,
                    const RunOptions& options) {
  const bool all = suite == "all";
  const bool do_w = all || suite == "correlators";
  const bool do_f = all || suite == "free-energies";
  const bool do_wkb = all || suite == "wkb";
  if (!do_w && !do_f && !do_wkb) {
    throw Error(ErrorKind::kMalformedInput,
                "unknown suite \"" + std::string(suite) + "\" (correlators, free-energies, wkb, all)");
  }
  const Session s = open_session(config, options);
  if (suite == "wkb" && !s.curve->involution()) {
    throw Error(ErrorKind::kMode, "the wkb suite needs a base projection of degree 2");
  }

  VerificationReport report;
  const fs::path cached = out_dir / "w.json";
  std::optional<CorrelatorTable> table;
  if (fs::exists(cached)) {
    const std::string text = read_file(cached);
    if (document_hash(text) == s.info.config_hash) table = read_correlators(text, s.curve);
  }
  report.add(table ? "correlators loaded from " + cached.string() : "correlators computed", true, "");
  if (!table) table = compute_correlators(s, config);

  if (do_w) {
    try {
      report.merge(verify_correlators(*table));
      report.merge(closed_form_checks(*table, config.seed));
    } catch (const Error& e) {
      report.add("correlator suite", false, e.what());
    }
  }
  if (do_f || do_wkb) {
    std::optional<FreeEnergyTable> free;
    try {
      free = integrate_table(*table);
    } catch (const Error& e) {
      report.add("integration", false, e.what());
    }
    if (free && do_f) {
      try {
        report.merge(verify_free_energies(*table, *free, 20, config.seed));
      } catch (const Error& e) {
        report.add("free-energy suite", false, e.what());
      }
    }
    if (free && do_wkb) {
      if (s.curve->involution()) {
        try {
          report.merge(verify_wkb(*free, build_wkb(*free, config.wkb_order), 12, config.seed));
        } catch (const Error& e) {
          report.add("wkb expansion", false, e.what());
        }
      } else {
        report.add("wkb skipped: base projection is not of degree 2", true, "");
      }
    }
  }
  out << report_document(s.info, suite, report);
  return report.ok() ? ExitCode::kSuccess : ExitCode::kVerificationFailure;
}

void run_wkb(const CurveConfig& config, int order, std::ostream& out, const RunOptions& options) {
  if (order < 2) throw Error(ErrorKind::kMalformedInput, "wkb order must be at least 2");
  const Session s = open_session(config, options);
  if (!s.curve->involution()) throw Error(ErrorKind::kMode, "wkb needs a base projection of degree 2");
  const FreeEnergyTable free = integrate(compute_correlators(s, config));
  out << wkb_document(s.info, expand(free, order));
}

}  // namespace spectral_rec

#include "zetapack/log_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zetapack {

namespace {

using json = nlohmann::ordered_json;

void append_number(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

void append_number(std::string& out, std::int64_t value) {
  out += std::to_string(value);
}

void append_number(std::string& out, std::uint64_t value) {
  out += std::to_string(value);
}

void append_rect(std::string& out, const Rect& r) {
  out += "{\"x0\": ";
  append_number(out, r.x0);
  out += ", \"y0\": ";
  append_number(out, r.y0);
  out += ", \"dx\": ";
  append_number(out, r.dx);
  out += ", \"dy\": ";
  append_number(out, r.dy);
  out += "}";
}

// --- reading helpers -------------------------------------------------------

const json& require_field(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw LogParseError("placement log: missing field '" + where + "." + key + "'");
  }
  return *it;
}

double require_number(const json& obj, const std::string& where, const char* key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_number()) {
    throw LogParseError("placement log: field '" + where + "." + key + "' must be a number");
  }
  return v.get<double>();
}

std::int64_t require_integer(const json& obj, const std::string& where, const char* key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_number_integer()) {
    throw LogParseError("placement log: field '" + where + "." + key +
                        "' must be an integer");
  }
  return v.get<std::int64_t>();
}

void warn_unknown(const json& obj, const std::string& where,
                  std::initializer_list<const char*> known,
                  std::vector<std::string>* warnings) {
  if (warnings == nullptr) return;
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(known.begin(), known.end(),
                     [&](const char* k) { return key == k; }) == known.end()) {
      warnings->push_back("ignored unknown field '" + where + "." + key + "'");
    }
  }
}

Rect parse_rect(const json& obj, const std::string& where,
                std::vector<std::string>* warnings) {
  if (!obj.is_object()) {
    throw LogParseError("placement log: '" + where + "' must be an object");
  }
  warn_unknown(obj, where, {"x0", "y0", "dx", "dy"}, warnings);
  return Rect{require_number(obj, where, "x0"), require_number(obj, where, "y0"),
              require_number(obj, where, "dx"), require_number(obj, where, "dy")};
}

}  // namespace

std::string log_to_string(const PackingReport& report) {
  std::vector<PlacedSquare> records = report.placements;
  std::stable_sort(records.begin(), records.end(),
                   [](const PlacedSquare& a, const PlacedSquare& b) { return a.n < b.n; });

  std::string out;
  out.reserve(96 * (records.size() + report.residuals.size()) + 1024);
  out += "{\n\"format_version\": ";
  append_number(out, static_cast<std::int64_t>(kLogFormatVersion));
  out += ",\n\"header\": {\"t\": ";
  append_number(out, report.t);
  out += ", \"n_max\": ";
  append_number(out, report.n_max);
  out += ", \"container\": ";
  append_rect(out, report.container);
  out += ", \"zeta_value\": ";
  append_number(out, report.zeta_value);
  out += ", \"seed\": \"";
  out += report.zeta_value > 0.0 ? "three-square-row" : "external-set";
  out += "\", \"tie_break\": \"smallest-id\", \"n_start\": ";
  append_number(out, report.n_start);
  out += ", \"seed_height\": ";
  append_number(out, report.seed_height);
  out += "},\n\"records\": [";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "{\"n\": ";
    append_number(out, records[i].n);
    out += ", \"side\": ";
    append_number(out, records[i].side);
    out += ", \"x0\": ";
    append_number(out, records[i].rect.x0);
    out += ", \"y0\": ";
    append_number(out, records[i].rect.y0);
    out += "}";
  }
  out += "\n],\n\"residuals\": [";
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    append_rect(out, report.residuals[i].rect);
  }
  out += "\n],\n\"footer\": {\"failed_at\": ";
  if (report.failed_at) {
    append_number(out, *report.failed_at);
  } else {
    out += "null";
  }
  out += ", \"conservation_defect\": ";
  append_number(out, report.conservation_defect);
  const MonitorSummary& m = report.monitors;
  out += ", \"monitors\": {\"steps\": ";
  append_number(out, m.steps);
  out += ", \"area_tail_violations\": ";
  append_number(out, m.area_tail_violations);
  out += ", \"height_growth_violations\": ";
  append_number(out, m.height_growth_violations);
  out += ", \"height_cap_violations\": ";
  append_number(out, m.height_cap_violations);
  out += ", \"aggregate_bound_violations\": ";
  append_number(out, m.aggregate_bound_violations);
  out += ", \"fill_frames_checked\": ";
  append_number(out, m.fill_frames_checked);
  out += ", \"fill_height_violations\": ";
  append_number(out, m.fill_height_violations);
  out += ", \"max_height_sum\": ";
  append_number(out, m.max_height_sum);
  out += "}}\n}\n";
  return out;
}

void write_log(const PackingReport& report, const std::filesystem::path& dest) {
  std::ofstream stream(dest, std::ios::binary);
  if (!stream) {
    throw std::runtime_error("write_log: cannot open '" + dest.string() + "' for writing");
  }
  const std::string text = log_to_string(report);
  stream.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!stream) {
    throw std::runtime_error("write_log: I/O error writing '" + dest.string() + "'");
  }
}

PackingReport log_from_string(const std::string& text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LogParseError(std::string("placement log: ") + e.what());
  }
  if (!doc.is_object()) throw LogParseError("placement log: top level must be an object");

  const std::int64_t version = require_integer(doc, "$", "format_version");
  if (version != kLogFormatVersion) {
    throw LogVersionError("placement log: unsupported format_version " +
                          std::to_string(version) + " (expected " +
                          std::to_string(kLogFormatVersion) + ")");
  }
  warn_unknown(doc, "$", {"format_version", "header", "records", "residuals", "footer"},
               warnings);

  PackingReport report;

  const json& header = require_field(doc, "$", "header");
  if (!header.is_object()) throw LogParseError("placement log: 'header' must be an object");
  warn_unknown(header, "header",
               {"t", "n_max", "container", "zeta_value", "seed", "tie_break", "n_start",
                "seed_height"},
               warnings);
  report.t = require_number(header, "header", "t");
  report.n_max = require_integer(header, "header", "n_max");
  report.container = parse_rect(require_field(header, "header", "container"),
                                "header.container", warnings);
  report.zeta_value = require_number(header, "header", "zeta_value");
  report.n_start = require_integer(header, "header", "n_start");
  report.seed_height = require_number(header, "header", "seed_height");

  const json& records = require_field(doc, "$", "records");
  if (!records.is_array()) throw LogParseError("placement log: 'records' must be an array");
  report.placements.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string where = "records[" + std::to_string(i) + "]";
    const json& rec = records[i];
    if (!rec.is_object()) throw LogParseError("placement log: '" + where + "' must be an object");
    warn_unknown(rec, where, {"n", "side", "x0", "y0"}, warnings);
    PlacedSquare square;
    square.n = require_integer(rec, where, "n");
    square.side = require_number(rec, where, "side");
    square.rect = Rect{require_number(rec, where, "x0"), require_number(rec, where, "y0"),
                       square.side, square.side};
    report.placements.push_back(square);
  }

  const json& residuals = require_field(doc, "$", "residuals");
  if (!residuals.is_array()) {
    throw LogParseError("placement log: 'residuals' must be an array");
  }
  report.residuals.reserve(residuals.size());
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const std::string where = "residuals[" + std::to_string(i) + "]";
    report.residuals.push_back(
        OrientedBox{parse_rect(residuals[i], where, warnings), i});
  }

  const json& footer = require_field(doc, "$", "footer");
  if (!footer.is_object()) throw LogParseError("placement log: 'footer' must be an object");
  warn_unknown(footer, "footer", {"failed_at", "conservation_defect", "monitors"}, warnings);
  const json& failed = require_field(footer, "footer", "failed_at");
  if (failed.is_null()) {
    report.failed_at = std::nullopt;
  } else if (failed.is_number_integer()) {
    report.failed_at = failed.get<std::int64_t>();
  } else {
    throw LogParseError("placement log: 'footer.failed_at' must be null or an integer");
  }
  report.conservation_defect = require_number(footer, "footer", "conservation_defect");
  if (const auto it = footer.find("monitors"); it != footer.end()) {
    const json& mon = *it;
    if (!mon.is_object()) {
      throw LogParseError("placement log: 'footer.monitors' must be an object");
    }
    warn_unknown(mon, "footer.monitors",
                 {"steps", "area_tail_violations", "height_growth_violations",
                  "height_cap_violations", "aggregate_bound_violations",
                  "fill_frames_checked", "fill_height_violations", "max_height_sum"},
                 warnings);
    MonitorSummary& m = report.monitors;
    m.steps = static_cast<std::uint64_t>(require_integer(mon, "footer.monitors", "steps"));
    m.area_tail_violations = static_cast<std::uint64_t>(
        require_integer(mon, "footer.monitors", "area_tail_violations"));
    m.height_growth_violations = static_cast<std::uint64_t>(
        require_integer(mon, "footer.monitors", "height_growth_violations"));
    m.height_cap_violations = static_cast<std::uint64_t>(
        require_integer(mon, "footer.monitors", "height_cap_violations"));
    m.aggregate_bound_violations = static_cast<std::uint64_t>(
        require_integer(mon, "footer.monitors", "aggregate_bound_violations"));
    m.fill_frames_checked = static_cast<std::uint64_t>(
        require_integer(mon, "footer.monitors", "fill_frames_checked"));
    m.fill_height_violations = static_cast<std::uint64_t>(
        require_integer(mon, "footer.monitors", "fill_height_violations"));
    m.max_height_sum = require_number(mon, "footer.monitors", "max_height_sum");
  }
  return report;
}

PackingReport read_log(const std::filesystem::path& source,
                       std::vector<std::string>* warnings) {
  std::ifstream stream(source, std::ios::binary);
  if (!stream) {
    throw LogParseError("read_log: cannot open '" + source.string() + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return log_from_string(buffer.str(), warnings);
}

std::string sweep_csv_header() {
  return "t,n_max,failed_at,error,conservation_defect,max_height_sum,margin_f,margin_g,"
         "monitor_violations,verified\n";
}

std::string sweep_csv_row(const SweepRow& row) {
  std::string out;
  append_number(out, row.t);
  out += ',';
  append_number(out, row.n_max);
  out += ',';
  if (row.failed_at) append_number(out, *row.failed_at);
  out += ',';
  out += row.error;
  out += ',';
  append_number(out, row.conservation_defect);
  out += ',';
  append_number(out, row.max_height_sum);
  out += ',';
  append_number(out, row.margin_f);
  out += ',';
  append_number(out, row.margin_g);
  out += ',';
  append_number(out, row.monitor_violations);
  out += ',';
  out += row.verified ? '1' : '0';
  out += '\n';
  return out;
}

}  // namespace zetapack

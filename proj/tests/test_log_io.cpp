#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "zetapack/log_io.hpp"
#include "zetapack/packer.hpp"
#include "zetapack/svg_render.hpp"

using namespace zetapack;

namespace {

PackingReport small_run(double t = 2.0 / 3.0, std::int64_t n_max = 40) {
  PackOptions opts;
  opts.zeta_tol = 1e-9;
  return pack(Exponent(t), n_max, opts);
}

bool reports_value_equal(const PackingReport& a, const PackingReport& b) {
  if (a.t != b.t || a.n_max != b.n_max || !(a.container == b.container) ||
      a.zeta_value != b.zeta_value || a.seed_height != b.seed_height ||
      a.n_start != b.n_start || a.failed_at != b.failed_at ||
      a.conservation_defect != b.conservation_defect ||
      !(a.monitors == b.monitors) || a.placements.size() != b.placements.size() ||
      a.residuals.size() != b.residuals.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.placements.size(); ++i) {
    if (!(a.placements[i] == b.placements[i])) return false;
  }
  for (std::size_t i = 0; i < a.residuals.size(); ++i) {
    if (!(a.residuals[i].rect == b.residuals[i].rect)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("placement log") {
  TEST_CASE("seed-only round trip is value-identical") {
    auto report = small_run(2.0 / 3.0, 4);
    const std::string text = log_to_string(report);
    const auto back = log_from_string(text);
    CHECK(reports_value_equal(report, back));
    // Re-serializing the read log reproduces the bytes.
    CHECK(log_to_string(back) == text);
  }

  TEST_CASE("irrational reals survive bit-exactly") {
    const auto report = small_run();
    const auto back = log_from_string(log_to_string(report));
    REQUIRE(back.placements.size() == report.placements.size());
    for (std::size_t i = 0; i < report.placements.size(); ++i) {
      CHECK(back.placements[i].side == report.placements[i].side);
      CHECK(back.placements[i].rect.x0 == report.placements[i].rect.x0);
      CHECK(back.placements[i].rect.y0 == report.placements[i].rect.y0);
    }
    CHECK(back.zeta_value == report.zeta_value);
  }

  TEST_CASE("version field present and enforced") {
    const auto report = small_run(2.0 / 3.0, 10);
    const std::string text = log_to_string(report);
    CHECK(text.find("\"format_version\": 1") != std::string::npos);
    std::string wrong = text;
    const std::string version_field = "\"format_version\": 1";
    wrong.replace(wrong.find(version_field), version_field.size(), "\"format_version\": 9");
    CHECK_THROWS_AS(log_from_string(wrong), LogVersionError);
  }

  TEST_CASE("truncated input is a parse error") {
    const auto report = small_run(2.0 / 3.0, 10);
    const std::string text = log_to_string(report);
    CHECK_THROWS_AS(log_from_string(text.substr(0, text.size() / 2)), LogParseError);
    CHECK_THROWS_AS(log_from_string("not json at all"), LogParseError);
  }

  TEST_CASE("missing fields carry a field path") {
    try {
      log_from_string(R"({"format_version": 1, "header": {}, "records": [],
                          "residuals": [], "footer": {}})");
      FAIL("expected LogParseError");
    } catch (const LogParseError& e) {
      CHECK(std::string(e.what()).find("header.t") != std::string::npos);
    }
  }

  TEST_CASE("unknown fields are ignored with a warning") {
    const auto report = small_run(2.0 / 3.0, 10);
    std::string text = log_to_string(report);
    text.replace(text.find("\"header\": {"), 11, "\"header\": {\"future\": 3, ");
    std::vector<std::string> warnings;
    const auto back = log_from_string(text, &warnings);
    CHECK(reports_value_equal(report, back));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("header.future") != std::string::npos);
  }

  TEST_CASE("a failed run keeps failed_at and still verifies") {
    BoxSet set;
    set.insert(OrientedBox{Rect{0, 0, 0.25, 0.25}, 0});
    const auto report = pack_into_boxes(1, std::move(set), Exponent(0.6), 50);
    REQUIRE(report.failed_at.has_value());
    const auto back = log_from_string(log_to_string(report));
    REQUIRE(back.failed_at.has_value());
    CHECK(*back.failed_at == *report.failed_at);
  }

  TEST_CASE("file round trip") {
    const auto report = small_run(0.64, 25);
    const auto path = std::filesystem::temp_directory_path() / "zetapack_io_test.log";
    write_log(report, path);
    const auto back = read_log(path);
    CHECK(reports_value_equal(report, back));
    std::filesystem::remove(path);
  }

  TEST_CASE("records are sorted by n with no gaps") {
    const auto report = small_run(2.0 / 3.0, 30);
    const auto back = log_from_string(log_to_string(report));
    for (std::size_t i = 0; i < back.placements.size(); ++i) {
      CHECK(back.placements[i].n == static_cast<std::int64_t>(i) + 1);
    }
  }

  TEST_CASE("round-trip identity on randomized reports") {
    std::mt19937_64 rng(2026);
    const double lo = Exponent::log3_2().value();
    for (int round = 0; round < 100; ++round) {
      const double t = lo + (0.80 - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const std::int64_t n_max = 4 + static_cast<std::int64_t>(rng() % 60);
      PackOptions opts;
      opts.zeta_tol = 1e-7;
      const auto report = pack(Exponent(t), n_max, opts);
      const std::string text = log_to_string(report);
      const auto back = log_from_string(text);
      REQUIRE(reports_value_equal(report, back));
      REQUIRE(log_to_string(back) == text);
    }
  }
}

TEST_SUITE("sweep csv") {
  TEST_CASE("header plus one row per run") {
    CHECK(sweep_csv_header() ==
          "t,n_max,failed_at,error,conservation_defect,max_height_sum,margin_f,margin_g,"
          "monitor_violations,verified\n");
    SweepRow row;
    row.t = 0.65;
    row.n_max = 100;
    row.conservation_defect = 0.0;
    row.max_height_sum = 2.5;
    row.margin_f = 3.0;
    row.margin_g = 4.0;
    row.verified = true;
    CHECK(sweep_csv_row(row) == "0.65,100,,,0,2.5,3,4,0,1\n");
    row.failed_at = 17;
    row.error = "seed-infeasible";
    row.verified = false;
    CHECK(sweep_csv_row(row) == "0.65,100,17,seed-infeasible,0,2.5,3,4,0,0\n");
  }
}

TEST_SUITE("svg") {
  TEST_CASE("seed-only figure: three squares in a row, three hatched boxes") {
    const auto report = small_run(2.0 / 3.0, 4);
    const std::string svg = render_svg(report);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 3.6009377") != std::string::npos);
    // container outline + 4 squares + 4 residual boxes
    std::size_t rects = 0;
    for (std::size_t at = svg.find("<rect"); at != std::string::npos;
         at = svg.find("<rect", at + 1)) {
      ++rects;
    }
    CHECK(rects == 9);
    CHECK(svg.find("url(#hatch)") != std::string::npos);
  }

  TEST_CASE("empty report renders the outline only") {
    PackingReport report;
    report.container = Rect{0, 0, 2.0, 1.0};
    const std::string svg = render_svg(report);
    CHECK(svg.find("viewBox=\"0 0 2 1\"") != std::string::npos);
    std::size_t rects = 0;
    for (std::size_t at = svg.find("<rect"); at != std::string::npos;
         at = svg.find("<rect", at + 1)) {
      ++rects;
    }
    CHECK(rects == 1);
  }

  TEST_CASE("caps limit the output size") {
    const auto report = small_run(2.0 / 3.0, 300);
    SvgOptions options;
    options.max_squares_drawn = 10;
    options.max_residuals_drawn = 10;
    const std::string svg = render_svg(report, options);
    CHECK(svg.find("squares omitted") != std::string::npos);
    CHECK(svg.size() < 8192);
    // rendering is pure: same inputs, same bytes
    CHECK(render_svg(report, options) == svg);
  }

  TEST_CASE("a 10^4-square render stays under 20 MB with the default caps") {
    const auto report = small_run(2.0 / 3.0, 10000);
    const std::string svg = render_svg(report);
    CHECK(svg.size() < 20u * 1024 * 1024);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  }
}

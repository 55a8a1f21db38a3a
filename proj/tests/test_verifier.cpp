#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "zetapack/packer.hpp"
#include "zetapack/verifier.hpp"

using namespace zetapack;

namespace {

PackingReport seeded_report(double t, std::int64_t n_max) {
  PackOptions opts;
  opts.zeta_tol = 1e-8;  // plenty for geometric checks
  return pack(Exponent(t), n_max, opts);
}

}  // namespace

TEST_SUITE("verify_bruteforce") {
  TEST_CASE("the seed state passes with a tiny defect") {
    const auto seed = seed_container(Exponent::two_thirds());
    const std::vector<PlacedSquare> squares(seed.placements.begin(), seed.placements.end());
    const auto boxes = seed.set.members();
    const auto report = verify_bruteforce(squares, boxes, seed.container);
    CHECK(report.passed);
    CHECK(report.area_defect < 1e-10);
    CHECK(report.overlap_pairs.empty());
    CHECK(report.out_of_container.empty());
    CHECK(report.residual_conflicts.empty());
  }

  TEST_CASE("a shifted square is caught") {
    auto run = seeded_report(2.0 / 3.0, 50);
    run.placements[10].rect.x0 += 1e-6;
    const auto report = verify_bruteforce(run.placements, run.residuals, run.container);
    CHECK_FALSE(report.passed);
    CHECK_FALSE(report.overlap_pairs.empty());
  }

  TEST_CASE("the container itself as the only residual passes") {
    const Rect container{0, 0, 2.0, 1.0};
    const std::vector<PlacedSquare> none;
    const std::vector<OrientedBox> all{{container, 0}};
    const auto report = verify_bruteforce(none, all, container);
    CHECK(report.passed);
    CHECK(report.area_defect == 0.0);
  }

  TEST_CASE("quadratic guard") {
    const Rect container{0, 0, 1, 1};
    std::vector<OrientedBox> boxes(5001, OrientedBox{Rect{0, 0, 0.001, 0.001}, 0});
    const std::vector<PlacedSquare> none;
    CHECK_THROWS_AS(verify_bruteforce(none, boxes, container), std::length_error);
  }
}

TEST_SUITE("verify_sweepline") {
  TEST_CASE("agrees with the pairwise oracle on truncated runs") {
    std::mt19937_64 rng(99);
    const double lo = Exponent::log3_2().value();
    for (int round = 0; round < 50; ++round) {
      const double t = lo + (0.85 - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const std::int64_t n_max = 10 + static_cast<std::int64_t>(rng() % 1200);
      const auto run = seeded_report(t, n_max);
      const auto brute = verify_bruteforce(run.placements, run.residuals, run.container);
      const auto sweep = verify_sweepline(run.placements, run.residuals, run.container);
      REQUIRE(brute == sweep);
      REQUIRE(brute.passed);
    }
  }

  TEST_CASE("fault injection detected identically by both") {
    auto run = seeded_report(2.0 / 3.0, 400);
    run.placements[123].rect.x0 += 1e-6;
    const auto brute = verify_bruteforce(run.placements, run.residuals, run.container);
    const auto sweep = verify_sweepline(run.placements, run.residuals, run.container);
    CHECK(brute == sweep);
    CHECK_FALSE(sweep.passed);
    CHECK_FALSE(sweep.overlap_pairs.empty());

    // Shift a residual box instead: the conflict lists must split by kind.
    auto run2 = seeded_report(2.0 / 3.0, 400);
    run2.residuals[5].rect.y0 += 1e-6;
    const auto brute2 = verify_bruteforce(run2.placements, run2.residuals, run2.container);
    const auto sweep2 = verify_sweepline(run2.placements, run2.residuals, run2.container);
    CHECK(brute2 == sweep2);
    CHECK_FALSE(sweep2.passed);
  }

  TEST_CASE("out-of-container detection") {
    const Rect container{0, 0, 1, 1};
    const std::vector<PlacedSquare> squares{{1, 0.5, Rect{0.8, 0.0, 0.5, 0.5}}};
    const std::vector<OrientedBox> none;
    const auto sweep = verify_sweepline(squares, none, container);
    CHECK_FALSE(sweep.passed);
    CHECK(sweep.out_of_container == std::vector<std::uint32_t>{0});
    const auto brute = verify_bruteforce(squares, none, container);
    CHECK(brute == sweep);
  }

  TEST_CASE("shared edges never count at tol 0") {
    const Rect container{0, 0, 2, 1};
    const std::vector<PlacedSquare> squares{{1, 1.0, Rect{0, 0, 1, 1}},
                                            {2, 1.0, Rect{1, 0, 1, 1}}};
    const std::vector<OrientedBox> none;
    VerifyTolerances tol;
    tol.overlap = 0.0;
    tol.containment = 0.0;
    const auto sweep = verify_sweepline(squares, none, container, tol);
    CHECK(sweep.passed);
    CHECK(sweep.overlap_pairs.empty());
  }

  TEST_CASE("inputs are left untouched") {
    const auto run = seeded_report(0.64, 100);
    const auto placements_copy = run.placements;
    const auto residuals_copy = run.residuals;
    (void)verify_sweepline(run.placements, run.residuals, run.container);
    REQUIRE(run.placements.size() == placements_copy.size());
    for (std::size_t i = 0; i < run.placements.size(); ++i) {
      CHECK(run.placements[i] == placements_copy[i]);
    }
    for (std::size_t i = 0; i < run.residuals.size(); ++i) {
      CHECK(run.residuals[i].rect == residuals_copy[i].rect);
    }
  }

  TEST_CASE("stacked duplicates are all reported") {
    // Three identical squares on top of each other: every pair conflicts.
    const Rect container{0, 0, 1, 1};
    const std::vector<PlacedSquare> squares{{1, 0.5, Rect{0.1, 0.1, 0.5, 0.5}},
                                            {2, 0.5, Rect{0.1, 0.1, 0.5, 0.5}},
                                            {3, 0.5, Rect{0.1, 0.1, 0.5, 0.5}}};
    const std::vector<OrientedBox> none;
    const auto sweep = verify_sweepline(squares, none, container);
    const auto brute = verify_bruteforce(squares, none, container);
    CHECK(sweep == brute);
    CHECK(sweep.overlap_pairs.size() == 3);
  }
}

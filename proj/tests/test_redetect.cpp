#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ltrack;
using testutil::box_at;

namespace {
// Straight transliteration of the penalty formula, kept separate from the
// implementation on purpose.
double penalty_oracle(double s, double dx, double dy, double dmax, long dt,
                      const PenaltyParams& p) {
    const double dist = std::sqrt(dx * dx + dy * dy);
    double ratio = dist / dmax;
    if (ratio > 1.0) ratio = 1.0;
    return p.w_b * (1.0 - p.w_d * ratio * std::exp(-p.w_t * std::abs(static_cast<double>(dt)))) *
           s;
}
}  // namespace

TEST_CASE("penalize worked examples") {
    SECTION("zero distance passes the basic weight only") {
        PenaltyParams p{1.0, 0.85, 0.02};
        LostContext ctx{{50.0, 50.0}, 10, 500.0};
        CHECK(penalize(0.8, {50.0, 50.0}, ctx, 30, p) == Catch::Approx(0.8).epsilon(1e-15));
    }
    SECTION("disabled distance weight reduces to w_b * s") {
        PenaltyParams p{0.9, 0.0, 0.02};
        LostContext ctx{{0.0, 0.0}, 0, 100.0};
        CHECK(penalize(1.0, {70.0, 10.0}, ctx, 5, p) == Catch::Approx(0.9).epsilon(1e-15));
    }
    SECTION("full formula") {
        PenaltyParams p{0.99, 0.85, 0.02};
        LostContext ctx{{0.0, 0.0}, 0, 600.0};
        const double got = penalize(0.9, {300.0, 0.0}, ctx, 25, p);
        CHECK(got == Catch::Approx(0.661322).margin(5e-7));
        CHECK(got == Catch::Approx(penalty_oracle(0.9, 300.0, 0.0, 600.0, 25, p)).epsilon(1e-15));
    }
    SECTION("d_max must be positive") {
        PenaltyParams p;
        LostContext ctx{{0.0, 0.0}, 0, 0.0};
        CHECK_THROWS_AS(penalize(1.0, {1.0, 1.0}, ctx, 1, p), std::invalid_argument);
    }
}

TEST_CASE("penalty bounds, monotonicity and linearity") {
    PenaltyParams p{0.99, 0.85, 0.02};
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double dmax = rng.uniform(10.0, 2000.0);
        const double dist = rng.uniform(0.0, dmax);
        const double s = rng.uniform(0.0, 1.5);
        const long dt = rng.uniform_int(0, 500);
        LostContext ctx{{0.0, 0.0}, 0, dmax};
        const double sp = penalize(s, {dist, 0.0}, ctx, dt, p);
        CHECK(sp >= p.w_b * (1.0 - p.w_d) * s - 1e-12);
        CHECK(sp <= p.w_b * s + 1e-12);
        // farther is never better
        const double sp_far = penalize(s, {std::min(dist * 1.5, dmax), 0.0}, ctx, dt, p);
        CHECK(sp_far <= sp + 1e-12);
        // waiting never hurts
        const double sp_later = penalize(s, {dist, 0.0}, ctx, dt + 17, p);
        CHECK(sp_later >= sp - 1e-12);
        // doubling the raw score doubles the output exactly
        CHECK(penalize(2.0 * s, {dist, 0.0}, ctx, dt, p) == 2.0 * sp);
    }
}

TEST_CASE("num_searches adaptive count") {
    RedetectConfig cfg;  // beta 0.2, n in [2, 10]

    SECTION("equal areas clamp to the floor") {
        CHECK(num_searches(64, 64, box_at(32, 32, 64, 64), cfg) == cfg.n_min);
    }
    SECTION("1280x720 with a 64x64 target needs 3") {
        CHECK(num_searches(1280, 720, box_at(400, 400, 64, 64), cfg) == 3);
    }
    SECTION("tiny target clamps to the ceiling") {
        CHECK(num_searches(1280, 720, box_at(400, 400, 8, 8), cfg) == cfg.n_max);
    }
    SECTION("non-increasing in the target area") {
        int prev = 1000;
        for (double side = 8.0; side <= 256.0; side *= 1.3) {
            const int n = num_searches(1280, 720, box_at(400, 400, side, side), cfg);
            CHECK(n <= prev);
            prev = n;
        }
    }
}

TEST_CASE("build_grid lattice") {
    Rng rng(3);

    SECTION("100x100 frame with 50 px tiles on a 25 px stride gives 9 tiles") {
        // 6x8 target diagonal = 10, scale 5 -> tile side 50.
        const SearchGrid g = build_grid(100, 100, box_at(50, 50, 6, 8), 5.0, rng);
        CHECK(g.tile_side == 50);
        CHECK(g.stride == 25);
        CHECK(g.tile_count() == 9);
    }
    SECTION("tile side clamps to the frame and degenerates to one tile") {
        const SearchGrid g = build_grid(64, 64, box_at(32, 32, 60, 60), 5.0, rng);
        CHECK(g.tile_count() == 1);
        CHECK(g.tiles[0].w == 64);
    }
    SECTION("every pixel is covered by at least one tile") {
        const SearchGrid g = build_grid(97, 61, box_at(40, 30, 7, 9), 5.0, rng);
        std::vector<int> cover(static_cast<std::size_t>(97) * 61, 0);
        for (const auto& t : g.tiles) {
            CHECK(t.x >= 0);
            CHECK(t.y >= 0);
            CHECK(t.right() <= 97);
            CHECK(t.bottom() <= 61);
            for (int y = t.y; y < t.bottom(); ++y)
                for (int x = t.x; x < t.right(); ++x) ++cover[static_cast<std::size_t>(y) * 97 + x];
        }
        for (int c : cover) CHECK(c >= 1);
    }
}

TEST_CASE("next_tiles visit order") {
    Rng build_rng(5);
    SearchGrid grid = build_grid(320, 240, box_at(100, 100, 20, 20), 5.0, build_rng);
    const int t = grid.tile_count();
    REQUIRE(t > 4);

    SECTION("all tiles within ceil(T/n) calls, cycle after cycle") {
        const int n = 3;
        const int calls_per_cycle = (t + n - 1) / n;
        Rng rng(9);
        for (int cycle = 0; cycle < 3; ++cycle) {
            std::set<int> seen;
            for (int c = 0; c < calls_per_cycle; ++c) {
                const auto tiles = next_tiles(grid, n, rng);
                CHECK(static_cast<int>(tiles.size()) == n);
                seen.insert(tiles.begin(), tiles.end());
            }
            CHECK(static_cast<int>(seen.size()) == t);
        }
    }
    SECTION("n >= T returns every tile exactly once") {
        Rng rng(9);
        SearchGrid g2 = build_grid(320, 240, box_at(100, 100, 20, 20), 5.0, build_rng);
        const auto tiles = next_tiles(g2, t + 5, rng);
        CHECK(static_cast<int>(tiles.size()) == t);
        CHECK(std::set<int>(tiles.begin(), tiles.end()).size() == static_cast<std::size_t>(t));
    }
    SECTION("fixed seeds reproduce the tile sequence") {
        Rng ra(1), rb(1), ga(2), gb(2);
        SearchGrid a = build_grid(320, 240, box_at(100, 100, 20, 20), 5.0, ga);
        SearchGrid b = build_grid(320, 240, box_at(100, 100, 20, 20), 5.0, gb);
        for (int i = 0; i < 10; ++i) CHECK(next_tiles(a, 4, ra) == next_tiles(b, 4, rb));
    }
}

TEST_CASE("try_redetect") {
    const int W = 320, H = 240;
    const Image tex = testutil::object_texture(20, 20, 91);
    Frame train = testutil::background_frame(W, H, 70);
    testutil::paste(train, tex, 50, 46);
    const BBox target = box_at(60.0, 56.0, 20, 20);
    DcfTracker trk;
    trk.init(train, target);

    Rng grid_rng(17);
    SearchGrid grid = build_grid(W, H, target, 5.0, grid_rng);
    std::vector<int> all(static_cast<std::size_t>(grid.tile_count()));
    std::iota(all.begin(), all.end(), 0);
    PenaltyParams params;
    const double tau = 0.25;
    const LostContext ctx{target.center(), 10, frame_diagonal(W, H)};

    SECTION("a blank frame yields nothing") {
        Frame blank(W, H, 0.5, 11);
        const auto out = try_redetect(blank, trk, grid, all, ctx, params, tau, true, 12);
        CHECK_FALSE(out.accepted.has_value());
        CHECK(out.evals == grid.tile_count());
    }
    SECTION("reappearance at the old position is accepted with s' ~ w_b * s") {
        Frame back = testutil::background_frame(W, H, 70);
        testutil::paste(back, tex, 50, 46);
        back.index = 11;
        const auto out = try_redetect(back, trk, grid, all, ctx, params, tau, true, 11);
        REQUIRE(out.accepted.has_value());
        CHECK(std::abs(out.accepted->box.cx() - 60.0) < 2.0);
        CHECK(out.accepted->s_prime ==
              Catch::Approx(params.w_b * out.accepted->s_new).epsilon(0.05));
    }
    SECTION("an identical far distractor is suppressed early but allowed later") {
        Frame lure = testutil::background_frame(W, H, 70);
        testutil::paste(lure, tex, 280, 200);  // near the far corner
        lure.index = 11;
        const auto early = try_redetect(lure, trk, grid, all, ctx, params, tau, true, 11);
        CHECK_FALSE(early.accepted.has_value());
        CHECK(early.best_s > tau);  // raw score would have been accepted
        const auto late = try_redetect(lure, trk, grid, all, ctx, params, tau, true, 210);
        REQUIRE(late.accepted.has_value());
        CHECK(std::abs(late.accepted->box.cx() - 290.0) < 3.0);
    }
    SECTION("without the penalty the early far distractor is taken") {
        Frame lure = testutil::background_frame(W, H, 70);
        testutil::paste(lure, tex, 280, 200);
        lure.index = 11;
        const auto out = try_redetect(lure, trk, grid, all, ctx, params, tau, false, 11);
        REQUIRE(out.accepted.has_value());
    }
}

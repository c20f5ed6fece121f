#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ltrack;
using testutil::fresh_dir;

TEST_CASE("extract_patch identity crop") {
    Frame f = testutil::background_frame(12, 9, 5);
    const Image p = extract_patch(f, {0.0, 0.0, 12.0, 9.0}, 12, 9);
    REQUIRE(p.px.size() == f.px.size());
    for (std::size_t i = 0; i < p.px.size(); ++i) CHECK(p.px[i] == Catch::Approx(f.px[i]));
}

TEST_CASE("extract_patch fills outside with frame mean") {
    Image img(4, 4, 0.25);
    img.at(0, 0) = 0.75;  // mean = (15*0.25 + 0.75)/16 = 0.28125
    const double mean = mean_intensity(img);
    // Right half of the rect hangs off the frame; those samples read the mean.
    const Image p = extract_patch(img, {2.0, 0.0, 4.0, 4.0}, 4, 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(p.at(2, j) == Catch::Approx(mean));
        CHECK(p.at(3, j) == Catch::Approx(mean));
    }
    // Fully-outside crops are an error, not a silent fill.
    CHECK_THROWS_AS(extract_patch(img, {10.0, 0.0, 4.0, 4.0}, 4, 4), std::invalid_argument);
}

TEST_CASE("extract_patch matches direct bilinear formula on 2x2 -> 4x4") {
    Image img(2, 2);
    img.at(0, 0) = 0.1;
    img.at(1, 0) = 0.5;
    img.at(0, 1) = 0.3;
    img.at(1, 1) = 0.9;
    const double fill = mean_intensity(img);
    const Image up = extract_patch(img, {0.0, 0.0, 2.0, 2.0}, 4, 4);
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            // Independent evaluation of the same sampling convention.
            const double sx = (i + 0.5) * 0.5 - 0.5;
            const double sy = (j + 0.5) * 0.5 - 0.5;
            auto tap = [&](int x, int y) {
                return (x >= 0 && x < 2 && y >= 0 && y < 2) ? img.at(x, y) : fill;
            };
            const int x0 = static_cast<int>(std::floor(sx));
            const int y0 = static_cast<int>(std::floor(sy));
            const double fx = sx - x0, fy = sy - y0;
            const double expect =
                (tap(x0, y0) * (1 - fx) + tap(x0 + 1, y0) * fx) * (1 - fy) +
                (tap(x0, y0 + 1) * (1 - fx) + tap(x0 + 1, y0 + 1) * fx) * fy;
            CHECK(up.at(i, j) == Catch::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("extract_patch rejects empty crops") {
    const Frame f = testutil::background_frame(8, 8, 1);
    CHECK_THROWS_AS(extract_patch(f, {20.0, 20.0, 4.0, 4.0}, 4, 4), std::invalid_argument);
}

TEST_CASE("erase_rect") {
    const Frame f = testutil::background_frame(10, 10, 3);

    SECTION("zero area after clipping leaves the frame unchanged") {
        const Frame out = erase_rect(f, {-5, -5, 3, 3}, 0.0);
        CHECK(out.px == f.px);
    }
    SECTION("full-frame erase gives a constant image") {
        const Frame out = erase_rect(f, {0, 0, 10, 10}, 0.5);
        for (double v : out.px) CHECK(v == 0.5);
    }
    SECTION("pixel sums differ by exactly the erased mass") {
        const Rect r{2, 3, 4, 5};
        double in_r = 0.0;
        for (int y = r.y; y < r.bottom(); ++y)
            for (int x = r.x; x < r.right(); ++x) in_r += f.at(x, y);
        const double fill = 0.25;
        const Frame out = erase_rect(f, r, fill);
        double s_in = 0.0, s_out = 0.0;
        for (double v : f.px) s_in += v;
        for (double v : out.px) s_out += v;
        CHECK(s_out - s_in == Catch::Approx(fill * r.area() - in_r).margin(1e-9));
        // purity
        CHECK(f.at(3, 4) != fill);
    }
}

TEST_CASE("composite") {
    Image black(3, 3, 0.0);
    Image white(1, 1, 1.0);

    SECTION("paste onto itself at original location is a no-op") {
        const Frame f = testutil::background_frame(6, 6, 9);
        const Image sub = extract_patch(f, {2.0, 2.0, 3.0, 3.0}, 3, 3);
        const Image out = composite(sub, f, {2, 2, 3, 3});
        for (std::size_t i = 0; i < out.px.size(); ++i)
            CHECK(out.px[i] == Catch::Approx(f.px[i]).margin(1e-12));
    }
    SECTION("single white pixel at the center") {
        const Image out = composite(white, black, {1, 1, 1, 1});
        int whites = 0;
        for (double v : out.px) whites += v == 1.0;
        CHECK(whites == 1);
        CHECK(out.at(1, 1) == 1.0);
    }
    SECTION("pixel sum arithmetic") {
        const Frame bg = testutil::background_frame(8, 8, 2);
        const Image patch = testutil::object_texture(3, 2, 4);
        const Rect at{4, 5, 3, 2};
        double covered = 0.0;
        for (int y = at.y; y < at.bottom(); ++y)
            for (int x = at.x; x < at.right(); ++x) covered += bg.at(x, y);
        double patch_sum = 0.0;
        for (double v : patch.px) patch_sum += v;
        const Image out = composite(patch, bg, at);
        double bg_sum = 0.0, out_sum = 0.0;
        for (double v : bg.px) bg_sum += v;
        for (double v : out.px) out_sum += v;
        CHECK(out_sum == Catch::Approx(bg_sum - covered + patch_sum).margin(1e-9));
    }
    SECTION("dimension mismatch is an error") {
        CHECK_THROWS_AS(composite(white, black, {0, 0, 2, 1}), std::invalid_argument);
        CHECK_THROWS_AS(composite(white, black, {3, 3, 1, 1}), std::invalid_argument);
    }
}

TEST_CASE("pgm round trip") {
    const auto dir = fresh_dir("pgm");
    Rng rng(11);
    Image img(37, 23);
    for (auto& v : img.px) v = rng.uniform();
    const auto path = (dir / "t.pgm").string();
    write_pgm(path, img);
    const Image back = read_pgm(path);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    for (std::size_t i = 0; i < img.px.size(); ++i)
        CHECK(std::abs(back.px[i] - img.px[i]) <= 0.5 / 255.0 + 1e-12);
}

TEST_CASE("pgm rejects malformed input") {
    const auto dir = fresh_dir("pgm_bad");
    {
        std::ofstream f(dir / "bad.pgm", std::ios::binary);
        f << "P2\n2 2\n255\n0 0 0 0\n";
    }
    CHECK_THROWS(read_pgm((dir / "bad.pgm").string()));
    {
        std::ofstream f(dir / "trunc.pgm", std::ios::binary);
        f << "P5\n4 4\n255\nab";
    }
    CHECK_THROWS(read_pgm((dir / "trunc.pgm").string()));
}

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ltrack;

namespace {
SceneScript small_script() {
    SceneScript s;
    s.name = "unit";
    s.frames = 30;
    s.width = 120;
    s.height = 90;
    s.seed = 11;
    s.noise_sigma = 0.003;
    s.target_w = 14;
    s.target_h = 14;
    s.target_seed = 4;
    s.target_path = {{0, 40.0, 40.0}, {29, 55.0, 50.0}};
    return s;
}

std::vector<std::string> dir_files(const fs::path& d) {
    std::vector<std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(d))
        if (e.is_regular_file()) out.push_back(fs::relative(e.path(), d).string());
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("render is deterministic, byte for byte") {
    const auto d1 = testutil::fresh_dir("synth_a");
    const auto d2 = testutil::fresh_dir("synth_b");
    const SceneScript s = small_script();
    render(s, d1);
    render(s, d2);
    const auto f1 = dir_files(d1);
    REQUIRE(f1 == dir_files(d2));
    for (const auto& rel : f1)
        REQUIRE(testutil::slurp(d1 / rel) == testutil::slurp(d2 / rel));
}

TEST_CASE("absence intervals become nan ground-truth rows") {
    const auto dir = testutil::fresh_dir("synth_absence");
    SceneScript s = small_script();
    s.absences = {{10, 20}};
    render(s, dir);
    const auto gt = load_groundtruth(dir / "groundtruth.txt");
    REQUIRE(gt.size() == 30);
    for (int t = 0; t < 30; ++t) {
        if (t >= 10 && t < 20)
            CHECK_FALSE(gt[static_cast<std::size_t>(t)].has_value());
        else
            CHECK(gt[static_cast<std::size_t>(t)].has_value());
    }
    const auto attrs = load_attributes(dir / "attributes.txt");
    CHECK(std::find(attrs.begin(), attrs.end(), "out-of-view") != attrs.end());
}

TEST_CASE("similarity 1.0 distractor with the target's texture is pixel-identical") {
    const auto dir = testutil::fresh_dir("synth_twin");
    SceneScript s = small_script();
    s.noise_sigma = 0.0;  // per-pixel noise would de-identify the copies
    ObjectScript d;
    d.similarity = 1.0;
    d.seed = 999;  // irrelevant at similarity 1
    d.w = s.target_w;
    d.h = s.target_h;
    d.path = {{0, 90.0, 60.0}};
    s.distractors.push_back(d);
    render(s, dir);

    const Image frame = read_pgm((dir / "frames" / "00000000.pgm").string());
    const auto gt = load_groundtruth(dir / "groundtruth.txt");
    const Rect tr{static_cast<int>(gt[0]->x), static_cast<int>(gt[0]->y), 14, 14};
    const Rect dr{90 - 7, 60 - 7, 14, 14};
    for (int y = 0; y < 14; ++y)
        for (int x = 0; x < 14; ++x)
            CHECK(frame.at(tr.x + x, tr.y + y) == frame.at(dr.x + x, dr.y + y));
}

TEST_CASE("full occlusion rows are nan and tagged") {
    const auto dir = testutil::fresh_dir("synth_occ");
    SceneScript s = small_script();
    ObjectScript o;
    o.seed = 3;
    o.w = 40;
    o.h = 40;
    o.path = {{0, 40.0, 40.0}, {29, 40.0, 40.0}};  // parked on the target
    o.visible_from = 5;
    o.visible_until = 8;
    s.occluders.push_back(o);
    s.target_path = {{0, 40.0, 40.0}, {29, 40.0, 40.0}};
    render(s, dir);
    const auto gt = load_groundtruth(dir / "groundtruth.txt");
    CHECK_FALSE(gt[5].has_value());
    CHECK_FALSE(gt[7].has_value());
    CHECK(gt[8].has_value());
    const auto attrs = load_attributes(dir / "attributes.txt");
    CHECK(std::find(attrs.begin(), attrs.end(), "full-occlusion") != attrs.end());
}

TEST_CASE("script text round-trips through parse and dump") {
    SceneScript s = small_script();
    s.absences = {{5, 9}};
    ObjectScript d;
    d.similarity = 0.9;
    d.seed = 12;
    d.w = 10;
    d.h = 12;
    d.path = {{0, 80.0, 30.0}, {29, 20.0, 70.0}};
    d.visible_from = 2;
    d.visible_until = 25;
    s.distractors.push_back(d);
    ObjectScript o;
    o.seed = 8;
    o.w = 9;
    o.h = 30;
    o.path = {{0, 10.0, 45.0}, {29, 110.0, 45.0}};
    s.occluders.push_back(o);

    const std::string text = dump_script(s);
    const SceneScript back = parse_script(text);
    CHECK(back.name == s.name);
    CHECK(back.frames == s.frames);
    CHECK(back.seed == s.seed);
    CHECK(back.noise_sigma == s.noise_sigma);
    CHECK(back.target_w == s.target_w);
    REQUIRE(back.target_path.size() == s.target_path.size());
    CHECK(back.target_path[1].x == s.target_path[1].x);
    REQUIRE(back.absences.size() == 1);
    CHECK(back.absences[0] == s.absences[0]);
    REQUIRE(back.distractors.size() == 1);
    CHECK(back.distractors[0].similarity == 0.9);
    CHECK(back.distractors[0].visible_until == 25);
    REQUIRE(back.occluders.size() == 1);
    CHECK(back.occluders[0].h == 30);
    CHECK(dump_script(back) == text);
}

TEST_CASE("parse rejects unknown keys and malformed lines") {
    CHECK_THROWS(parse_script("bogus_key = 3\ntarget_path = [[0,1,1]]\n"));
    CHECK_THROWS(parse_script("frames 30\n"));
    CHECK_THROWS(parse_script("frames = 30\n"));  // missing target_path
    CHECK_THROWS(parse_script("target_path = [[0,1]]\n"));
}

TEST_CASE("standard suite structure") {
    const auto suite = standard_suite(42);
    REQUIRE(suite.size() == 20);

    int statics = 0, far = 0;
    for (const auto& s : suite) {
        CHECK(s.width == 320);
        CHECK(s.height == 240);
        CHECK(s.frames >= 200);
        CHECK(s.frames <= 400);
        if (s.name.rfind("a", 0) == 0) {
            ++statics;
            CHECK(s.absences.empty());
        }
        if (s.name.rfind("c", 0) == 0) {
            ++far;
            REQUIRE(s.absences.size() == 1);
            const auto [a0, a1] = s.absences[0];
            const Vec2 before = path_at(s.target_path, a0 - 1);
            const Vec2 after = path_at(s.target_path, a1);
            CHECK(distance(before, after) >=
                  0.7 * frame_diagonal(s.width, s.height));
        }
        if (s.name.rfind("d", 0) == 0) {
            REQUIRE(s.distractors.size() == 2);
            for (const auto& d : s.distractors) CHECK(d.similarity == 0.9);
        }
        if (s.name.rfind("e", 0) == 0) CHECK_FALSE(s.occluders.empty());
    }
    CHECK(statics == 4);
    CHECK(far == 4);

    SECTION("deterministic per seed") {
        const auto again = standard_suite(42);
        for (std::size_t i = 0; i < suite.size(); ++i) {
            CHECK(again[i].seed == suite[i].seed);
            CHECK(again[i].target_seed == suite[i].target_seed);
            CHECK(again[i].name == suite[i].name);
        }
        const auto other = standard_suite(43);
        CHECK(other[0].seed != suite[0].seed);
    }
}

TEST_CASE("rendered sequences round-trip through the sequence parsers") {
    const auto dir = testutil::fresh_dir("synth_roundtrip");
    SceneScript s = small_script();
    s.absences = {{12, 18}};
    render(s, dir);
    const auto frames = list_frames(dir);
    const auto gt = load_groundtruth(dir / "groundtruth.txt");
    CHECK(frames.size() == gt.size());
    const Image f0 = read_pgm(frames[0].string());
    CHECK(f0.width == 120);
    CHECK(f0.height == 90);
    for (double v : f0.px) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // Attribute tags pass through verbatim, whatever they are.
    const auto attrs = load_attributes(dir / "attributes.txt");
    for (const auto& a : attrs) CHECK_FALSE(a.empty());
}

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ltrack;
using testutil::box_at;

TEST_CASE("harvest_backgrounds") {
    auto frame = testutil::background_frame(200, 150, 3);
    Rng rng(8);

    SECTION("n = 0 is an empty list") {
        CHECK(harvest_backgrounds(frame, {40.0, 30.0, 80.0, 80.0}, 0, rng).empty());
    }
    SECTION("search region covering the frame with no pool is an error") {
        CHECK_THROWS_AS(
            harvest_backgrounds(frame, {-10.0, -10.0, 400.0, 400.0}, 2, rng),
            std::runtime_error);
    }
    SECTION("falls back to the pool when the frame is exhausted") {
        std::vector<Image> pool{testutil::background_frame(120, 120, 9)};
        const auto crops =
            harvest_backgrounds(frame, {-10.0, -10.0, 400.0, 400.0}, 3, rng, &pool);
        CHECK(crops.size() == 3);
    }
    SECTION("crop geometry: centers outside the region, crops region-sized") {
        const BBox region{60.0, 40.0, 70.0, 70.0};
        Rng probe(8);
        const auto crops = harvest_backgrounds(frame, region, 8, probe);
        REQUIRE(crops.size() == 8);
        // Replaying the draw sequence recovers the accepted centers, which
        // must all be outside the region and reproduce the crops exactly.
        Rng replay(8);
        std::size_t i = 0;
        while (i < crops.size()) {
            const double cx = replay.uniform(0.0, frame.width);
            const double cy = replay.uniform(0.0, frame.height);
            const bool inside = cx >= region.x && cx < region.right() && cy >= region.y &&
                                cy < region.bottom();
            if (inside) continue;
            CHECK_FALSE(inside);
            const Image expect =
                extract_patch(frame, {cx - 35.0, cy - 35.0, 70.0, 70.0}, 70, 70);
            CHECK(crops[i].px == expect.px);
            ++i;
        }
        for (const auto& c : crops) {
            CHECK(c.width == 70);
            CHECK(c.height == 70);
        }
    }
}

TEST_CASE("make_samples") {
    auto frame = testutil::background_frame(200, 150, 5);
    const Image tex = testutil::object_texture(18, 18, 12);
    testutil::paste(frame, tex, 91, 66);
    const BBox target = box_at(100.0, 75.0, 18, 18);
    FeaturePipeline pipe(TrackerConfig{}.feature_config());
    Rng rng(14);
    const BBox region = pipe.region_rect(target.center(), pipe.region_side(target.diag()));

    SECTION("no backgrounds, no samples") {
        CHECK(make_samples(frame, target, {}, true, pipe).empty());
    }
    SECTION("first-frame samples are storable, online ones are not") {
        const auto bgs = harvest_backgrounds(frame, region, 3, rng);
        for (const auto& s : make_samples(frame, target, bgs, true, pipe)) {
            CHECK(s.store_in_memory);
            CHECK(s.weight == 1.0);
        }
        for (const auto& s : make_samples(frame, target, bgs, false, pipe, 0.5)) {
            CHECK_FALSE(s.store_in_memory);
            CHECK(s.weight == 0.5);
        }
    }
    SECTION("composited pixels inside the target box equal the original target") {
        auto bgs = harvest_backgrounds(frame, region, 1, rng);
        const Image& bg = bgs[0];
        const int tw = 18, th = 18;
        const Image target_patch = extract_patch(frame, target, tw, th);
        const int res = pipe.resolution();
        const double cx = (res / 2 + 0.5) * bg.width / res;
        const double cy = (res / 2 + 0.5) * bg.height / res;
        const Rect at{static_cast<int>(std::lround(cx - tw / 2.0)),
                      static_cast<int>(std::lround(cy - th / 2.0)), tw, th};
        const Image composed = composite(target_patch, bg, at);
        for (int y = 0; y < th; ++y)
            for (int x = 0; x < tw; ++x)
                CHECK(composed.at(at.x + x, at.y + y) == target_patch.at(x, y));
    }
}

TEST_CASE("online_gate") {
    AugmentConfig cfg;  // tau_aug = 0.5
    CHECK_FALSE(online_gate(TrackState::NotFound, 1.0, cfg));
    CHECK(online_gate(TrackState::Normal, cfg.tau_aug, cfg));
    CHECK_FALSE(online_gate(TrackState::HardNegative, 0.99, cfg));
    CHECK_FALSE(online_gate(TrackState::Normal, cfg.tau_aug - 0.01, cfg));
}

TEST_CASE("online augmented samples never enter memory") {
    auto frame = testutil::background_frame(220, 160, 7);
    const Image tex = testutil::object_texture(18, 18, 29);
    testutil::paste(frame, tex, 101, 71);
    const BBox target = box_at(110.0, 80.0, 18, 18);

    DcfTracker trk;
    FeaturePipeline pipe(TrackerConfig{}.feature_config());
    Rng rng(33);
    const BBox region = pipe.region_rect(target.center(), pipe.region_side(target.diag()));
    const auto first = make_samples(frame, target,
                                    harvest_backgrounds(frame, region, 3, rng), true, pipe);
    trk.init(frame, target, first);

    std::set<std::uint64_t> aug_ids;
    for (const auto& e : trk.memory())
        if (e.augmented) aug_ids.insert(e.id);
    CHECK(aug_ids.size() == 3);

    for (int i = 0; i < 10; ++i) {
        const auto extras = make_samples(frame, target,
                                         harvest_backgrounds(frame, region, 2, rng), false,
                                         trk.pipeline());
        trk.update(frame, target, TrackState::Normal, extras);
        std::set<std::uint64_t> now;
        for (const auto& e : trk.memory())
            if (e.augmented) now.insert(e.id);
        CHECK(now == aug_ids);
    }
}

TEST_CASE("augmentation sharpens discrimination against a look-alike") {
    // Target on its own background; a dimmed look-alike lives far away on
    // different background. Augmenting the first frame with crops that show
    // that background (look-alike off-center, so the composite keeps it)
    // must lower the response at the look-alike.
    const int W = 320, H = 240;
    const Image tex = testutil::object_texture(20, 20, 61);
    Frame frame = testutil::background_frame(W, H, 44);
    testutil::paste(frame, tex, 60, 60);
    Image lookalike = tex;
    for (auto& v : lookalike.px) v = 0.5 + (v - 0.5) * 0.8;
    testutil::paste(frame, lookalike, 240, 170);
    const BBox target = box_at(70.0, 70.0, 20, 20);
    const Vec2 la{250.0, 180.0};
    LocalizeOptions so;
    so.multi_scale = false;

    DcfTracker plain;
    plain.init(frame, target);
    const double r_plain = plain.localize(frame, la, so).map.peak.value;

    FeaturePipeline pipe(TrackerConfig{}.feature_config());
    const double side = pipe.region_side(target.diag());
    auto crop_at = [&](double cx, double cy) {
        return extract_patch(frame, {cx - side / 2, cy - side / 2, side, side},
                             static_cast<int>(std::lround(side)),
                             static_cast<int>(std::lround(side)));
    };
    const std::vector<Image> bgs{crop_at(la.x + 28.0, la.y + 12.0),
                                 crop_at(la.x - 24.0, la.y + 18.0),
                                 crop_at(la.x + 10.0, la.y - 30.0)};
    DcfTracker augmented;
    augmented.init(frame, target, make_samples(frame, target, bgs, true, pipe));
    const double r_aug = augmented.localize(frame, la, so).map.peak.value;

    CHECK(r_aug < r_plain);
}

#ifndef LTRACK_SYNTH_HPP
#define LTRACK_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltrack/geometry.hpp"
#include "ltrack/image.hpp"
#include "ltrack/pgm.hpp"
#include "ltrack/rng.hpp"
#include "ltrack/sequence_io.hpp"

namespace ltrack {

// ---------------------------------------------------------------------------
// Textures

/// Seeded two-octave value noise, min-max normalized into [lo, hi].
/// `octave2` sets the amplitude of the fine (grain/3) octave.
inline Image value_noise(int w, int h, std::uint64_t seed, double grain, double lo, double hi,
                         double octave2 = 0.35) {
    Rng rng(seed);
    auto lattice = [&](double g, int& nx, int& ny) {
        nx = static_cast<int>(std::ceil(w / g)) + 2;
        ny = static_cast<int>(std::ceil(h / g)) + 2;
        std::vector<double> v(static_cast<std::size_t>(nx) * ny);
        for (auto& x : v) x = rng.uniform();
        return v;
    };
    auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
    auto interp = [&](const std::vector<double>& v, int nx, int ny, double x, double y,
                      double g) {
        const double fx = x / g, fy = y / g;
        int ix = static_cast<int>(std::floor(fx)), iy = static_cast<int>(std::floor(fy));
        ix = std::clamp(ix, 0, nx - 2);
        iy = std::clamp(iy, 0, ny - 2);
        const double tx = smooth(std::clamp(fx - ix, 0.0, 1.0));
        const double ty = smooth(std::clamp(fy - iy, 0.0, 1.0));
        auto at = [&](int gx, int gy) { return v[static_cast<std::size_t>(gy) * nx + gx]; };
        const double top = at(ix, iy) * (1 - tx) + at(ix + 1, iy) * tx;
        const double bot = at(ix, iy + 1) * (1 - tx) + at(ix + 1, iy + 1) * tx;
        return top * (1 - ty) + bot * ty;
    };

    int nx1, ny1, nx2, ny2;
    const double g2 = std::max(grain / 3.0, 1.0);
    const auto l1 = lattice(grain, nx1, ny1);
    const auto l2 = lattice(g2, nx2, ny2);

    Image img(w, h);
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = interp(l1, nx1, ny1, x, y, grain) +
                             octave2 * interp(l2, nx2, ny2, x, y, g2);
            img.at(x, y) = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    const double span = mx > mn ? mx - mn : 1.0;
    for (auto& v : img.px) v = lo + (hi - lo) * (v - mn) / span;
    return img;
}

// ---------------------------------------------------------------------------
// Scene scripts

struct Waypoint {
    int frame = 0;
    double x = 0.0;  // object center
    double y = 0.0;
};

/// A scripted secondary object (distractor or occluder).
struct ObjectScript {
    double similarity = 1.0;  // distractors: texture blend toward the target's
    std::uint64_t seed = 0;
    int w = 0;
    int h = 0;
    std::vector<Waypoint> path;
    int visible_from = 0;
    int visible_until = std::numeric_limits<int>::max();  // half-open

    bool visible(int t) const { return t >= visible_from && t < visible_until; }
};

struct SceneScript {
    std::string name = "scene";
    int frames = 200;
    int width = 320;
    int height = 240;
    std::uint64_t seed = 1;
    double noise_sigma = 0.01;
    double jitter_sigma = 0.0;

    int target_w = 20;
    int target_h = 20;
    std::uint64_t target_seed = 7;
    std::vector<Waypoint> target_path;

    std::vector<std::pair<int, int>> absences;  // half-open [start, end)
    std::vector<ObjectScript> distractors;
    std::vector<ObjectScript> occluders;
};

inline Vec2 path_at(const std::vector<Waypoint>& path, int t) {
    if (path.empty()) return {0.0, 0.0};
    if (t <= path.front().frame) return {path.front().x, path.front().y};
    if (t >= path.back().frame) return {path.back().x, path.back().y};
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (t <= path[i].frame) {
            const auto& a = path[i - 1];
            const auto& b = path[i];
            const double u = b.frame == a.frame
                                 ? 0.0
                                 : static_cast<double>(t - a.frame) / (b.frame - a.frame);
            return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
        }
    }
    return {path.back().x, path.back().y};
}

inline bool target_absent(const SceneScript& s, int t) {
    for (const auto& [a, b] : s.absences)
        if (t >= a && t < b) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Script file format: flat `key = value`, list values in JSON bracket syntax.

namespace synth_detail {

inline nlohmann::json parse_list(const std::string& v, const std::string& key) {
    try {
        return nlohmann::json::parse(v);
    } catch (const std::exception& e) {
        throw std::runtime_error("script: bad list for key '" + key + "': " + e.what());
    }
}

inline std::vector<Waypoint> parse_path(const nlohmann::json& j, const std::string& key) {
    std::vector<Waypoint> path;
    if (!j.is_array()) throw std::runtime_error("script: '" + key + "' must be a list");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3)
            throw std::runtime_error("script: '" + key + "' entries must be [frame, x, y]");
        path.push_back({e[0].get<int>(), e[1].get<double>(), e[2].get<double>()});
    }
    return path;
}

inline std::string dump_path(const std::vector<Waypoint>& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ", ";
        os << "[" << p[i].frame << ", " << p[i].x << ", " << p[i].y << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace synth_detail

inline SceneScript parse_script(const std::string& text) {
    SceneScript s;
    s.target_path.clear();
    std::map<int, ObjectScript> distractors, occluders;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("script line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));

        auto object_field = [&](const std::string& prefix,
                                std::map<int, ObjectScript>& objs) -> ObjectScript* {
            if (key.rfind(prefix, 0) != 0) return nullptr;
            const auto us = key.find('_', prefix.size());
            if (us == std::string::npos)
                throw std::runtime_error("script: bad object key '" + key + "'");
            const int idx = std::stoi(key.substr(prefix.size(), us - prefix.size()));
            return &objs[idx];
        };

        if (key == "name") s.name = val;
        else if (key == "frames") s.frames = std::stoi(val);
        else if (key == "width") s.width = std::stoi(val);
        else if (key == "height") s.height = std::stoi(val);
        else if (key == "seed") s.seed = std::stoull(val);
        else if (key == "noise_sigma") s.noise_sigma = std::stod(val);
        else if (key == "jitter_sigma") s.jitter_sigma = std::stod(val);
        else if (key == "target_seed") s.target_seed = std::stoull(val);
        else if (key == "target_size") {
            const auto j = synth_detail::parse_list(val, key);
            s.target_w = j.at(0).get<int>();
            s.target_h = j.at(1).get<int>();
        } else if (key == "target_path") {
            s.target_path = synth_detail::parse_path(synth_detail::parse_list(val, key), key);
        } else if (key == "absences") {
            const auto j = synth_detail::parse_list(val, key);
            for (const auto& e : j) s.absences.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        } else if (ObjectScript* obj = object_field("distractor", distractors)) {
            const std::string field = key.substr(key.find('_', 10) + 1);
            if (field == "similarity") obj->similarity = std::stod(val);
            else if (field == "seed") obj->seed = std::stoull(val);
            else if (field == "size") {
                const auto j = synth_detail::parse_list(val, key);
                obj->w = j.at(0).get<int>();
                obj->h = j.at(1).get<int>();
            } else if (field == "path")
                obj->path = synth_detail::parse_path(synth_detail::parse_list(val, key), key);
            else if (field == "window") {
                const auto j = synth_detail::parse_list(val, key);
                obj->visible_from = j.at(0).get<int>();
                obj->visible_until = j.at(1).get<int>();
            } else
                throw std::runtime_error("script: unknown key '" + key + "'");
        } else if (ObjectScript* obj = object_field("occluder", occluders)) {
            const std::string field = key.substr(key.find('_', 8) + 1);
            if (field == "seed") obj->seed = std::stoull(val);
            else if (field == "size") {
                const auto j = synth_detail::parse_list(val, key);
                obj->w = j.at(0).get<int>();
                obj->h = j.at(1).get<int>();
            } else if (field == "path")
                obj->path = synth_detail::parse_path(synth_detail::parse_list(val, key), key);
            else if (field == "window") {
                const auto j = synth_detail::parse_list(val, key);
                obj->visible_from = j.at(0).get<int>();
                obj->visible_until = j.at(1).get<int>();
            } else
                throw std::runtime_error("script: unknown key '" + key + "'");
        } else {
            throw std::runtime_error("script: unknown key '" + key + "'");
        }
    }
    for (auto& [i, o] : distractors) s.distractors.push_back(std::move(o));
    for (auto& [i, o] : occluders) s.occluders.push_back(std::move(o));
    if (s.target_path.empty())
        throw std::runtime_error("script: target_path is required");
    return s;
}

inline std::string dump_script(const SceneScript& s) {
    std::ostringstream os;
    os.precision(17);
    os << "name = " << s.name << "\n";
    os << "frames = " << s.frames << "\n";
    os << "width = " << s.width << "\n";
    os << "height = " << s.height << "\n";
    os << "seed = " << s.seed << "\n";
    os << "noise_sigma = " << s.noise_sigma << "\n";
    os << "jitter_sigma = " << s.jitter_sigma << "\n";
    os << "target_size = [" << s.target_w << ", " << s.target_h << "]\n";
    os << "target_seed = " << s.target_seed << "\n";
    os << "target_path = " << synth_detail::dump_path(s.target_path) << "\n";
    if (!s.absences.empty()) {
        os << "absences = [";
        for (std::size_t i = 0; i < s.absences.size(); ++i) {
            if (i) os << ", ";
            os << "[" << s.absences[i].first << ", " << s.absences[i].second << "]";
        }
        os << "]\n";
    }
    for (std::size_t i = 0; i < s.distractors.size(); ++i) {
        const auto& d = s.distractors[i];
        const std::string p = "distractor" + std::to_string(i) + "_";
        os << p << "similarity = " << d.similarity << "\n";
        os << p << "seed = " << d.seed << "\n";
        os << p << "size = [" << d.w << ", " << d.h << "]\n";
        os << p << "path = " << synth_detail::dump_path(d.path) << "\n";
        os << p << "window = [" << d.visible_from << ", " << d.visible_until << "]\n";
    }
    for (std::size_t i = 0; i < s.occluders.size(); ++i) {
        const auto& o = s.occluders[i];
        const std::string p = "occluder" + std::to_string(i) + "_";
        os << p << "seed = " << o.seed << "\n";
        os << p << "size = [" << o.w << ", " << o.h << "]\n";
        os << p << "path = " << synth_detail::dump_path(o.path) << "\n";
        os << p << "window = [" << o.visible_from << ", " << o.visible_until << "]\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Rendering

namespace synth_detail {

inline Rect drawn_rect(Vec2 center, int w, int h) {
    return {static_cast<int>(std::lround(center.x - w / 2.0)),
            static_cast<int>(std::lround(center.y - h / 2.0)), w, h};
}

inline void paste(Image& frame, const Image& tex, const Rect& at) {
    const Rect c = at.clipped(frame.width, frame.height);
    for (int y = c.y; y < c.bottom(); ++y)
        for (int x = c.x; x < c.right(); ++x) frame.at(x, y) = tex.at(x - at.x, y - at.y);
}

inline bool contains(const Rect& outer, const Rect& inner) {
    return inner.x >= outer.x && inner.y >= outer.y && inner.right() <= outer.right() &&
           inner.bottom() <= outer.bottom();
}

inline bool overlaps(const Rect& a, const Rect& b) {
    return a.x < b.right() && b.x < a.right() && a.y < b.bottom() && b.y < a.bottom();
}

}  // namespace synth_detail

/// Visual attribute tags derivable from the script geometry.
inline std::vector<std::string> derived_attributes(const SceneScript& s) {
    std::set<std::string> tags;
    if (!s.absences.empty()) tags.insert("out-of-view");
    for (const auto& d : s.distractors)
        if (d.similarity >= 0.8) tags.insert("similar-objects");
    if (s.jitter_sigma > 0.0) tags.insert("camera-motion");

    bool full = false, partial = false, fast = false;
    Vec2 prev{};
    bool have_prev = false;
    for (int t = 0; t < s.frames; ++t) {
        const bool visible = !target_absent(s, t);
        if (!visible) {
            have_prev = false;
            continue;
        }
        const Vec2 pos = path_at(s.target_path, t);
        if (have_prev && distance(pos, prev) > 20.0) fast = true;
        prev = pos;
        have_prev = true;
        const Rect tr = synth_detail::drawn_rect(pos, s.target_w, s.target_h);
        for (const auto& o : s.occluders) {
            if (!o.visible(t)) continue;
            const Rect orc = synth_detail::drawn_rect(path_at(o.path, t), o.w, o.h);
            if (synth_detail::contains(orc, tr)) full = true;
            else if (synth_detail::overlaps(orc, tr)) partial = true;
        }
    }
    if (full) tags.insert("full-occlusion");
    if (partial) tags.insert("partial-occlusion");
    if (fast) tags.insert("fast-motion");
    return {tags.begin(), tags.end()};
}

/// Renders the script to the evalkit sequence layout:
/// frames/%08d.pgm + groundtruth.txt + attributes.txt (+ script.txt).
/// Deterministic from the script seeds.
inline void render(const SceneScript& s, const fs::path& out_dir) {
    if (s.frames < 1 || s.width < 1 || s.height < 1)
        throw std::runtime_error("render: bad scene dimensions");
    for (const auto& [a, b] : s.absences)
        if (a < 0 || b > s.frames || a >= b) throw std::runtime_error("render: bad absence interval");

    fs::create_directories(out_dir / "frames");

    const int margin = 16;
    const Image bg_field = value_noise(s.width + 2 * margin, s.height + 2 * margin,
                                       mix_seed(s.seed, 0xB6), 24.0, 0.45, 0.55, 0.02);
    const Image target_tex =
        value_noise(s.target_w, s.target_h, mix_seed(s.target_seed, 0x7A), 3.0, 0.05, 0.95, 0.6);

    std::vector<Image> distractor_tex;
    for (const auto& d : s.distractors) {
        Image own = value_noise(d.w, d.h, mix_seed(d.seed, 0xD1), 3.0, 0.10, 0.90, 0.6);
        Image tgt = (d.w == s.target_w && d.h == s.target_h)
                        ? target_tex
                        : extract_patch(target_tex,
                                        {0.0, 0.0, static_cast<double>(s.target_w),
                                         static_cast<double>(s.target_h)},
                                        d.w, d.h);
        for (std::size_t i = 0; i < own.px.size(); ++i)
            own.px[i] = d.similarity * tgt.px[i] + (1.0 - d.similarity) * own.px[i];
        distractor_tex.push_back(std::move(own));
    }
    std::vector<Image> occluder_tex;
    for (const auto& o : s.occluders)
        occluder_tex.push_back(value_noise(o.w, o.h, mix_seed(o.seed, 0x0C), 5.0, 0.20, 0.50));

    Rng rng(mix_seed(s.seed, 0xF0));
    std::ofstream gt(out_dir / "groundtruth.txt");
    if (!gt) throw std::runtime_error("render: cannot write ground truth");

    Image frame(s.width, s.height);
    for (int t = 0; t < s.frames; ++t) {
        double jx = 0.0, jy = 0.0;
        if (s.jitter_sigma > 0.0) {
            jx = rng.normal(0.0, s.jitter_sigma);
            jy = rng.normal(0.0, s.jitter_sigma);
        }
        for (int y = 0; y < s.height; ++y)
            for (int x = 0; x < s.width; ++x)
                frame.at(x, y) = sample_bilinear(bg_field, x + margin + jx + 0.5,
                                                 y + margin + jy + 0.5, 0.5);

        for (std::size_t i = 0; i < s.distractors.size(); ++i) {
            const auto& d = s.distractors[i];
            if (!d.visible(t)) continue;
            Vec2 pos = path_at(d.path, t);
            pos.x += jx;
            pos.y += jy;
            synth_detail::paste(frame, distractor_tex[i], synth_detail::drawn_rect(pos, d.w, d.h));
        }

        std::optional<Rect> target_rect;
        if (!target_absent(s, t)) {
            Vec2 pos = path_at(s.target_path, t);
            pos.x += jx;
            pos.y += jy;
            target_rect = synth_detail::drawn_rect(pos, s.target_w, s.target_h);
            synth_detail::paste(frame, target_tex, *target_rect);
        }

        bool fully_occluded = false;
        for (std::size_t i = 0; i < s.occluders.size(); ++i) {
            const auto& o = s.occluders[i];
            if (!o.visible(t)) continue;
            Vec2 pos = path_at(o.path, t);
            pos.x += jx;
            pos.y += jy;
            const Rect orc = synth_detail::drawn_rect(pos, o.w, o.h);
            synth_detail::paste(frame, occluder_tex[i], orc);
            if (target_rect && synth_detail::contains(orc, *target_rect)) fully_occluded = true;
        }

        if (s.noise_sigma > 0.0)
            for (auto& v : frame.px) v += rng.normal(0.0, s.noise_sigma);
        for (auto& v : frame.px) v = std::clamp(v, 0.0, 1.0);

        char name[32];
        std::snprintf(name, sizeof(name), "%08d.pgm", t);
        write_pgm((out_dir / "frames" / name).string(), frame);

        if (target_rect && !fully_occluded) {
            gt << target_rect->x << ".000000," << target_rect->y << ".000000," << target_rect->w
               << ".000000," << target_rect->h << ".000000\n";
        } else {
            gt << "nan,nan,nan,nan\n";
        }
    }

    std::ofstream attrs(out_dir / "attributes.txt");
    for (const auto& a : derived_attributes(s)) attrs << a << '\n';
    std::ofstream script(out_dir / "script.txt");
    script << dump_script(s);
}

// ---------------------------------------------------------------------------
// Standard benchmark suite: 5 families x 4 variants.

inline std::uint64_t name_seed(const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::vector<SceneScript> standard_suite(std::uint64_t seed) {
    std::vector<SceneScript> suite;
    const int sizes[4] = {18, 20, 22, 20};

    auto base = [&](const std::string& name, int variant, int frames) {
        SceneScript s;
        s.name = name;
        s.frames = frames;
        s.width = 320;
        s.height = 240;
        s.seed = mix_seed(seed, name_seed(name));
        s.noise_sigma = 0.002;
        s.target_w = sizes[variant];
        s.target_h = sizes[variant];
        s.target_seed =
            mix_seed(seed, 0x7000 + static_cast<std::uint64_t>(variant) + name_seed(name));
        return s;
    };

    // (a) static-visible: slow drift, nothing else in the scene.
    for (int v = 0; v < 4; ++v) {
        SceneScript s = base("a" + std::to_string(v) + "_static", v, 220);
        const double x0 = 70.0 + 45.0 * v, y0 = 70.0 + 25.0 * (v % 2);
        s.target_path = {{0, x0, y0}, {219, x0 + 35.0, y0 + 25.0}};
        suite.push_back(std::move(s));
    }

    // (b) disappear / reappear near the last seen position.
    for (int v = 0; v < 4; ++v) {
        SceneScript s = base("b" + std::to_string(v) + "_reappear_near", v, 260);
        const double x0 = 80.0 + 30.0 * v, y0 = 90.0 + 15.0 * v;
        s.target_path = {{0, x0, y0}, {259, x0 + 55.0, y0 + 30.0}};
        const int a0 = 95 + 5 * v;
        s.absences = {{a0, a0 + 45}};
        suite.push_back(std::move(s));
    }

    // (c) disappear / reappear far (>= 0.7 of the image diagonal); two
    // variants also show a brief far distractor right after the loss.
    for (int v = 0; v < 4; ++v) {
        SceneScript s = base("c" + std::to_string(v) + "_reappear_far", v, 300);
        const double ax = 40.0 + 3.0 * v, ay = 40.0 + 3.0 * v;
        const double bx = 290.0 - 2.0 * v, by = 210.0 + 2.0 * v;
        const int a0 = 115 + 3 * v;
        const int a1 = a0 + 60;
        s.target_path = {{0, ax + 12.0, ay + 10.0},
                         {a0 - 1, ax, ay},
                         {a1, bx, by},
                         {299, bx - 14.0, by - 10.0}};
        s.absences = {{a0, a1}};
        // A brief far look-alike right after the loss: the textbook lure for
        // naive re-detection, suppressed by the spatio-temporal penalty.
        ObjectScript d;
        d.similarity = 1.0;
        d.seed = mix_seed(seed, 0xD00 + static_cast<std::uint64_t>(v));
        d.w = s.target_w;
        d.h = s.target_h;
        d.path = {{0, 296.0, 214.0 - 6.0 * v}};
        d.visible_from = a0 + 3;
        d.visible_until = a0 + 17;
        s.distractors.push_back(std::move(d));
        suite.push_back(std::move(s));
    }

    // (d) distractor clutter: two similarity-0.9 look-alikes roaming near the
    // target's half of the frame, target always visible.
    for (int v = 0; v < 4; ++v) {
        SceneScript s = base("d" + std::to_string(v) + "_clutter", v, 260);
        const double x0 = 90.0 + 20.0 * v, y0 = 80.0 + 12.0 * v;
        s.target_path = {{0, x0, y0}, {259, x0 + 40.0, y0 + 28.0}};
        for (int k = 0; k < 2; ++k) {
            ObjectScript d;
            d.similarity = 0.9;
            d.seed = mix_seed(seed, 0xDD0 + static_cast<std::uint64_t>(4 * v + k));
            d.w = s.target_w;
            d.h = s.target_h;
            if (k == 0)
                d.path = {{0, x0 + 90.0, y0 - 35.0}, {130, x0 + 70.0, y0 + 65.0},
                          {259, x0 + 95.0, y0 + 20.0}};
            else
                d.path = {{0, x0 - 60.0, y0 + 70.0}, {130, x0 + 110.0, y0 + 90.0},
                          {259, x0 - 50.0, y0 - 20.0}};
            s.distractors.push_back(std::move(d));
        }
        suite.push_back(std::move(s));
    }

    // (e) partial-occlusion sweeps: a narrow bar crossing the target.
    for (int v = 0; v < 4; ++v) {
        SceneScript s = base("e" + std::to_string(v) + "_occlusion", v, 240);
        const double x0 = 100.0 + 25.0 * v, y0 = 100.0 + 10.0 * v;
        s.target_path = {{0, x0, y0}, {239, x0 + 30.0, y0 + 18.0}};
        ObjectScript o;
        o.seed = mix_seed(seed, 0x0CC + static_cast<std::uint64_t>(v));
        o.w = 12;
        o.h = 70;
        o.path = {{0, x0 - 70.0, y0},
                  {80, x0 + 75.0, y0 + 6.0},
                  {160, x0 - 70.0, y0 + 12.0},
                  {239, x0 + 75.0, y0 + 18.0}};
        s.occluders.push_back(std::move(o));
        suite.push_back(std::move(s));
    }

    return suite;
}

/// Renders every suite script into base_dir/<name>; returns the directories.
inline std::vector<fs::path> render_suite(const std::vector<SceneScript>& suite,
                                          const fs::path& base_dir) {
    std::vector<fs::path> dirs;
    for (const auto& s : suite) {
        const fs::path d = base_dir / s.name;
        render(s, d);
        dirs.push_back(d);
    }
    return dirs;
}

}  // namespace ltrack

#endif  // LTRACK_SYNTH_HPP

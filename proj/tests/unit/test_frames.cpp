#include <doctest.h>

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "gifsent/frames.hpp"
#include "avi_writer.hpp"
#include "test_util.hpp"

using namespace gifsent;
using namespace gifsent::testsupport;

namespace {

/// n frames at the given fps, frame i filled with intensity i.
std::string indexed_avi(const std::string& dir, const std::string& name, int n, int fps) {
    std::vector<Image> frames;
    for (int i = 0; i < n; ++i)
        frames.emplace_back(32, 24, 3, static_cast<uint8_t>(i));
    auto path = dir + "/" + name;
    write_avi(path, frames, fps);
    return path;
}

} // namespace

TEST_CASE("extract_frames samples at a constant period") {
    auto dir = fresh_dir("frames_sampling");

    // At fps 20, source frame counts {1,5,20,60,61} give durations
    // {0.05,0.25,1.0,3.0,3.05}s and sample counts {1,3,10,30,31} at 0.1s.
    struct Case { int source_frames; size_t sampled; };
    const Case cases[] = {{1, 1}, {5, 3}, {20, 10}, {60, 30}, {61, 31}};
    for (const auto& c : cases) {
        auto path = indexed_avi(dir, "n" + std::to_string(c.source_frames) + ".avi",
                                c.source_frames, 20);
        auto set = extract_frames(path, 0.1, "g");
        CAPTURE(c.source_frames);
        CHECK(set.frames.size() == c.sampled);
        CHECK(set.fps == doctest::Approx(20.0));
        CHECK(set.duration == doctest::Approx(c.source_frames / 20.0));
    }
}

TEST_CASE("extract_frames picks the frame at or before each sample time") {
    auto dir = fresh_dir("frames_mapping");
    auto path = indexed_avi(dir, "seq.avi", 20, 20);

    auto set = extract_frames(path, 0.1, "seq");
    REQUIRE(set.frames.size() == 10);
    for (size_t k = 0; k < set.frames.size(); ++k) {
        // Sample k lands at t = 0.1k, which frame 2k covers at fps 20.
        CHECK(set.frames[k].timestamp == doctest::Approx(0.1 * k));
        CHECK(set.frames[k].image.at(5, 5, 0) == static_cast<uint8_t>(2 * k));
    }
    CHECK(set.gif_id == "seq");
    CHECK(set.period == 0.1);
}

TEST_CASE("extract_frames decodes the test container losslessly") {
    auto dir = fresh_dir("frames_lossless");

    Image patterned(16, 12, 3);
    for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 16; ++x) {
            patterned.at(x, y, 0) = static_cast<uint8_t>(x * 16);
            patterned.at(x, y, 1) = static_cast<uint8_t>(y * 20);
            patterned.at(x, y, 2) = static_cast<uint8_t>(x + y);
        }
    }
    auto path = dir + "/pattern.avi";
    write_avi(path, {patterned}, 10);

    auto set = extract_frames(path, 0.1, "p");
    REQUIRE(set.frames.size() == 1);
    CHECK(set.frames[0].image == patterned);
}

TEST_CASE("extract_frames validates period and input file") {
    auto dir = fresh_dir("frames_errors");
    auto path = indexed_avi(dir, "ok.avi", 2, 10);

    CHECK_THROWS_AS(extract_frames(path, 0.0), ConfigError);
    CHECK_THROWS_AS(extract_frames(path, -0.1), ConfigError);
    CHECK_THROWS_AS(extract_frames(dir + "/absent.avi", 0.1), DataError);

    auto garbage = write_file(dir + "/garbage.avi", "this is not a video");
    CHECK_THROWS_AS(extract_frames(garbage, 0.1), DataError);
}

TEST_CASE("resize_for_model interpolates bilinearly with aligned centers") {
    Image src(2, 2, 1);
    src.at(0, 0, 0) = 0;
    src.at(1, 0, 0) = 255;
    src.at(0, 1, 0) = 0;
    src.at(1, 1, 0) = 255;

    auto up = resize_for_model(src, 4);
    REQUIRE(up.width == 4);
    REQUIRE(up.height == 4);
    for (int y = 0; y < 4; ++y) {
        CHECK(up.at(0, y, 0) == 0);
        CHECK(up.at(1, y, 0) == 64);
        CHECK(up.at(2, y, 0) == 191);
        CHECK(up.at(3, y, 0) == 255);
    }
}

TEST_CASE("resize_for_model downscales and passes through identical sizes") {
    Image row(4, 4, 1);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            row.at(x, y, 0) = static_cast<uint8_t>(x * 10);

    auto down = resize_for_model(row, 2);
    CHECK(down.at(0, 0, 0) == 5);   // mean of 0 and 10
    CHECK(down.at(1, 0, 0) == 25);  // mean of 20 and 30

    Image square(48, 48, 3, 77);
    auto same = resize_for_model(square, 48);
    CHECK(same == square);

    CHECK_THROWS_AS(resize_for_model(Image{}, 48), DataError);
    CHECK_THROWS_AS(resize_for_model(square, 0), ConfigError);
}

TEST_CASE("to_grayscale uses BT.601 weights") {
    Image rgb(3, 1, 3);
    rgb.set_pixel(0, 0, 0);
    rgb.at(0, 0, 0) = 255;  // pure red
    rgb.set_pixel(1, 0, 0);
    rgb.at(1, 0, 1) = 255;  // pure green
    rgb.set_pixel(2, 0, 0);
    rgb.at(2, 0, 2) = 255;  // pure blue

    auto gray = to_grayscale(rgb);
    REQUIRE(gray.channels == 1);
    CHECK(gray.at(0, 0, 0) == 76);
    CHECK(gray.at(1, 0, 0) == 150);
    CHECK(gray.at(2, 0, 0) == 29);

    // Achromatic pixels map to themselves for every byte value.
    Image strip(256, 1, 3);
    for (int x = 0; x < 256; ++x) strip.set_pixel(x, 0, static_cast<uint8_t>(x));
    auto gray_strip = to_grayscale(strip);
    for (int x = 0; x < 256; ++x) CHECK(gray_strip.at(x, 0, 0) == x);

    CHECK_THROWS_AS(to_grayscale(gray), DataError);
}

TEST_CASE("dump_frames writes numbered jpegs plus an index") {
    auto dir = fresh_dir("frames_dump");
    auto avi = indexed_avi(dir, "d.avi", 4, 10);
    auto set = extract_frames(avi, 0.2, "dump-me");
    REQUIRE(set.frames.size() == 2);

    auto out_dir = dir + "/frames";
    auto written = dump_frames(set, out_dir);
    REQUIRE(written.size() == 3);
    CHECK(written[0] == out_dir + "/frame_0000.jpg");
    CHECK(written[1] == out_dir + "/frame_0001.jpg");
    CHECK(written[2] == out_dir + "/index.json");
    for (const auto& p : written) CHECK(std::filesystem::exists(p));

    auto index = nlohmann::json::parse(read_file(written[2]));
    CHECK(index["gif_id"] == "dump-me");
    CHECK(index["period"] == 0.2);
    CHECK(index["fps"] == 10.0);
    CHECK(index["frame_count"] == 2);
    CHECK(index["duration"] == doctest::Approx(0.4));
    REQUIRE(index["timestamps"].size() == 2);
    CHECK(index["timestamps"][0] == 0.0);
    CHECK(index["timestamps"][1] == 0.2);

    CHECK_THROWS_AS(dump_frames(set, out_dir, 0), ConfigError);
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "gifsent/jsonio.hpp"

using nlohmann::json;
using namespace gifsent;

TEST_CASE("json writer emits compact, key-sorted objects") {
    json j;
    j["zebra"] = 1;
    j["apple"] = 2;
    j["mango"] = json::array({1, 2, 3});
    CHECK(to_json_string(j) == R"({"apple":2,"mango":[1,2,3],"zebra":1})");
}

TEST_CASE("json writer uses shortest round-trip doubles by default") {
    CHECK(to_json_string(json(0.1)) == "0.1");
    CHECK(to_json_string(json(0.5)) == "0.5");
    CHECK(to_json_string(json(1.0 / 3.0)) == "0.3333333333333333");

    double awkward = 0.8188366164366981;
    std::string text = to_json_string(json(awkward));
    CHECK(std::stod(text) == awkward);  // parses back to the same bits
}

TEST_CASE("json writer honors fixed significant digits") {
    JsonFormat nine{9};
    CHECK(to_json_string(json(0.8333333333333334), nine) == "0.833333333");
    CHECK(to_json_string(json(1.2), nine) == "1.2");
    CHECK(to_json_string(json(0.25), nine) == "0.25");

    // Re-serializing a parsed 9-digit value reproduces the same text, so a
    // rendered report round-trips byte for byte.
    std::string once = to_json_string(json(0.7230000000001), nine);
    double parsed = std::stod(once);
    CHECK(to_json_string(json(parsed), nine) == once);
}

TEST_CASE("json writer escapes strings") {
    CHECK(to_json_string(json("a\"b")) == R"("a\"b")");
    CHECK(to_json_string(json("line\nbreak")) == R"("line\nbreak")");
    CHECK(to_json_string(json(std::string(1, '\x01'))) == R"("\u0001")");
    CHECK(to_json_string(json("caf\xc3\xa9")) == "\"caf\xc3\xa9\"");  // UTF-8 passes through
}

TEST_CASE("json writer maps non-finite numbers to null") {
    CHECK(to_json_string(json(std::numeric_limits<double>::quiet_NaN())) == "null");
    CHECK(to_json_string(json(std::numeric_limits<double>::infinity())) == "null");
    CHECK(to_json_string(json(nullptr)) == "null");
}

TEST_CASE("json writer keeps integers and booleans intact") {
    CHECK(to_json_string(json(42)) == "42");
    CHECK(to_json_string(json(-7)) == "-7");
    CHECK(to_json_string(json(true)) == "true");
    CHECK(to_json_string(json(18976u)) == "18976");
}

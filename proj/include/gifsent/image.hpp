#pragma once

#include <cstdint>
#include <vector>

#include "gifsent/error.hpp"

namespace gifsent {

/// Interleaved row-major 8-bit raster. RGB for color frames, single channel
/// for grayscale. Pixel (x, y) channel c lives at data[(y*width + x)*channels + c].
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;

    Image() = default;
    Image(int w, int h, int c, std::uint8_t fill = 0)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {}

    bool empty() const { return width <= 0 || height <= 0 || channels <= 0; }

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    /// Set all channels of one pixel to the same value.
    void set_pixel(int x, int y, std::uint8_t v) {
        for (int c = 0; c < channels; ++c) at(x, y, c) = v;
    }

    bool operator==(const Image& other) const = default;
};

/// Axis-aligned rectangle in pixel coordinates.
struct Box {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    bool inside(int frame_w, int frame_h) const {
        return x >= 0 && y >= 0 && width > 0 && height > 0 &&
               x + width <= frame_w && y + height <= frame_h;
    }

    bool operator==(const Box& other) const = default;
};

/// Copy the region `box` out of `frame`. Box must lie within the frame.
inline Image crop(const Image& frame, const Box& box) {
    if (!box.inside(frame.width, frame.height))
        throw DataError("crop: box out of frame bounds");
    Image out(box.width, box.height, frame.channels);
    for (int y = 0; y < box.height; ++y)
        for (int x = 0; x < box.width; ++x)
            for (int c = 0; c < frame.channels; ++c)
                out.at(x, y, c) = frame.at(box.x + x, box.y + y, c);
    return out;
}

} // namespace gifsent

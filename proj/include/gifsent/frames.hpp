#pragma once

#include <string>
#include <vector>

#include "gifsent/error.hpp"
#include "gifsent/image.hpp"

namespace gifsent {

struct Frame {
    double timestamp = 0.0;  // seconds from media start
    Image image;             // RGB
};

struct FrameSet {
    std::string gif_id;
    std::vector<Frame> frames;
    double period = 0.0;    // sampling period in seconds
    double duration = 0.0;  // media duration in seconds (frame count / fps)
    double fps = 0.0;
};

/// Decodes the media file and samples frames at a constant period: sample
/// times are t = 0, period, 2*period, ... while t < duration, and each sample
/// takes the decoded frame whose display interval covers t (the nearest frame
/// at or before the sample time). A media file always yields at least the
/// frame at t = 0.
///
/// Throws ConfigError for a non-positive period, DataError when the file is
/// missing, cannot be decoded, or contains no frames.
FrameSet extract_frames(const std::string& media_path, double period = 0.1,
                        const std::string& gif_id = "");

/// Bilinear resize to side x side with pixel centers aligned
/// (source coordinate = (dst + 0.5) * src_size / dst_size - 0.5, clamped).
/// Returns a copy when the input is already side x side.
Image resize_for_model(const Image& frame, int side = 48);

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B) per pixel, 1 channel out.
Image to_grayscale(const Image& rgb);

/// Writes frames as dir/frame_0000.jpg ... (JPEG quality 95) plus an
/// index.json with gif_id, period, duration, fps and per-frame timestamps.
/// Creates dir if needed. Returns the paths written, index last.
std::vector<std::string> dump_frames(const FrameSet& frames, const std::string& dir,
                                     int jpeg_quality = 95);

} // namespace gifsent

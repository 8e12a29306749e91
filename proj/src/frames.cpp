#include "gifsent/frames.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/videoio.hpp>

#include "gifsent/jsonio.hpp"
#include "gifsent/log.hpp"

#include <json.hpp>

namespace gifsent {

namespace {

Image from_bgr_mat(const cv::Mat& mat) {
    Image img;
    img.width = mat.cols;
    img.height = mat.rows;
    img.channels = 3;
    img.data.resize(static_cast<size_t>(mat.cols) * mat.rows * 3);
    for (int y = 0; y < mat.rows; ++y) {
        const uint8_t* row = mat.ptr<uint8_t>(y);
        for (int x = 0; x < mat.cols; ++x) {
            size_t o = (static_cast<size_t>(y) * mat.cols + x) * 3;
            img.data[o + 0] = row[x * 3 + 2];
            img.data[o + 1] = row[x * 3 + 1];
            img.data[o + 2] = row[x * 3 + 0];
        }
    }
    return img;
}

cv::Mat to_bgr_mat(const Image& img) {
    cv::Mat mat(img.height, img.width, CV_8UC3);
    for (int y = 0; y < img.height; ++y) {
        uint8_t* row = mat.ptr<uint8_t>(y);
        for (int x = 0; x < img.width; ++x) {
            row[x * 3 + 0] = img.at(x, y, 2);
            row[x * 3 + 1] = img.at(x, y, 1);
            row[x * 3 + 2] = img.at(x, y, 0);
        }
    }
    return mat;
}

/// Decoded frame index serving sample time t at the given fps. The epsilon
/// absorbs representation error in t * fps when the product is a whole
/// number (e.g. 0.3 * 20), keeping "nearest at or before" exact.
int frame_index_for(double t, double fps) {
    return static_cast<int>(std::floor(t * fps + 1e-9));
}

} // namespace

FrameSet extract_frames(const std::string& media_path, double period,
                        const std::string& gif_id) {
    if (!(period > 0.0)) throw ConfigError("frame period must be positive");
    if (!std::filesystem::exists(media_path))
        throw DataError("media file not found: " + media_path);

    cv::VideoCapture cap(media_path);
    if (!cap.isOpened()) throw DataError("cannot decode media: " + media_path);

    double fps = cap.get(cv::CAP_PROP_FPS);
    if (!(fps > 0.0)) throw DataError("media has no usable frame rate: " + media_path);

    // Decode sequentially, keeping only sampled frames. The container frame
    // count bounds the sampling loop; a short read truncates honestly.
    FrameSet out;
    out.gif_id = gif_id;
    out.period = period;
    out.fps = fps;

    long reported = static_cast<long>(cap.get(cv::CAP_PROP_FRAME_COUNT));
    cv::Mat held;
    long current = -1;
    bool exhausted = false;

    auto advance_to = [&](long j) {
        while (current < j && !exhausted) {
            cv::Mat m;
            if (!cap.read(m) || m.empty()) {
                exhausted = true;
                break;
            }
            held = m;
            ++current;
        }
        return current == j;
    };

    if (reported > 0) {
        double duration = static_cast<double>(reported) / fps;
        out.duration = duration;
        for (long k = 0;; ++k) {
            double t = static_cast<double>(k) * period;
            if (t >= duration) break;
            long j = std::min<long>(frame_index_for(t, fps), reported - 1);
            if (!advance_to(j)) {
                // Container overstated its length; recompute from reality.
                long actual = current + 1;
                Log::warn("frames: ", media_path, ": reported ", reported,
                          " frames, decoded ", actual);
                out.duration = static_cast<double>(actual) / fps;
                break;
            }
            out.frames.push_back(Frame{t, from_bgr_mat(held)});
        }
    } else {
        // No frame count in the container: decode everything, then sample.
        std::vector<Image> all;
        cv::Mat m;
        while (cap.read(m) && !m.empty()) all.push_back(from_bgr_mat(m));
        double duration = static_cast<double>(all.size()) / fps;
        out.duration = duration;
        for (long k = 0;; ++k) {
            double t = static_cast<double>(k) * period;
            if (t >= duration) break;
            long j = std::min<long>(frame_index_for(t, fps),
                                    static_cast<long>(all.size()) - 1);
            out.frames.push_back(Frame{t, all[static_cast<size_t>(j)]});
        }
    }

    if (out.frames.empty()) throw DataError("media contains no frames: " + media_path);
    return out;
}

Image resize_for_model(const Image& frame, int side) {
    if (side <= 0) throw ConfigError("resize side must be positive");
    if (frame.width <= 0 || frame.height <= 0 || frame.data.empty())
        throw DataError("cannot resize an empty frame");
    if (frame.width == side && frame.height == side) return frame;

    Image out;
    out.width = side;
    out.height = side;
    out.channels = frame.channels;
    out.data.resize(static_cast<size_t>(side) * side * frame.channels);

    double sx = static_cast<double>(frame.width) / side;
    double sy = static_cast<double>(frame.height) / side;
    for (int dy = 0; dy < side; ++dy) {
        double fy = (dy + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(frame.height - 1));
        int y0 = static_cast<int>(std::floor(fy));
        int y1 = std::min(y0 + 1, frame.height - 1);
        double wy = fy - y0;
        for (int dx = 0; dx < side; ++dx) {
            double fx = (dx + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(frame.width - 1));
            int x0 = static_cast<int>(std::floor(fx));
            int x1 = std::min(x0 + 1, frame.width - 1);
            double wx = fx - x0;
            for (int c = 0; c < frame.channels; ++c) {
                double top = frame.at(x0, y0, c) * (1.0 - wx) + frame.at(x1, y0, c) * wx;
                double bot = frame.at(x0, y1, c) * (1.0 - wx) + frame.at(x1, y1, c) * wx;
                double v = top * (1.0 - wy) + bot * wy;
                size_t o = (static_cast<size_t>(dy) * side + dx) * frame.channels + c;
                out.data[o] = static_cast<uint8_t>(std::floor(v + 0.5));
            }
        }
    }
    return out;
}

Image to_grayscale(const Image& rgb) {
    if (rgb.channels != 3) throw DataError("grayscale conversion expects 3-channel RGB");
    Image out;
    out.width = rgb.width;
    out.height = rgb.height;
    out.channels = 1;
    out.data.resize(static_cast<size_t>(rgb.width) * rgb.height);
    for (int y = 0; y < rgb.height; ++y) {
        for (int x = 0; x < rgb.width; ++x) {
            double v = 0.299 * rgb.at(x, y, 0) + 0.587 * rgb.at(x, y, 1) +
                       0.114 * rgb.at(x, y, 2);
            out.data[static_cast<size_t>(y) * rgb.width + x] =
                static_cast<uint8_t>(std::floor(v + 0.5));
        }
    }
    return out;
}

std::vector<std::string> dump_frames(const FrameSet& frames, const std::string& dir,
                                     int jpeg_quality) {
    if (jpeg_quality < 1 || jpeg_quality > 100)
        throw ConfigError("jpeg quality must be in [1,100]");
    std::filesystem::create_directories(dir);

    std::vector<std::string> written;
    std::vector<double> timestamps;
    for (size_t i = 0; i < frames.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu.jpg", i);
        std::string path = (std::filesystem::path(dir) / name).string();
        std::vector<int> params = {cv::IMWRITE_JPEG_QUALITY, jpeg_quality};
        if (!cv::imwrite(path, to_bgr_mat(frames.frames[i].image), params))
            throw DataError("cannot write frame image: " + path);
        written.push_back(path);
        timestamps.push_back(frames.frames[i].timestamp);
    }

    nlohmann::json index;
    index["gif_id"] = frames.gif_id;
    index["period"] = frames.period;
    index["duration"] = frames.duration;
    index["fps"] = frames.fps;
    index["frame_count"] = frames.frames.size();
    index["timestamps"] = timestamps;

    std::string index_path = (std::filesystem::path(dir) / "index.json").string();
    std::ofstream out(index_path, std::ios::binary);
    if (!out) throw DataError("cannot write frame index: " + index_path);
    write_json(out, index, JsonFormat{});
    out << "\n";
    written.push_back(index_path);
    return written;
}

} // namespace gifsent

#include "gifsent/face_emotion.hpp"

#include <cctype>
#include <cmath>

#include "gifsent/log.hpp"

namespace gifsent {

namespace {

std::string lower_ascii(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool emotion_from_label(const std::string& label, Emotion& out) {
    std::string l = lower_ascii(label);
    for (Emotion e : kAllEmotions) {
        if (l == to_string(e)) {
            out = e;
            return true;
        }
    }
    return false;
}

} // namespace

const char* to_string(Emotion e) {
    switch (e) {
    case Emotion::Happy: return "happy";
    case Emotion::Surprise: return "surprise";
    case Emotion::Sad: return "sad";
    case Emotion::Angry: return "angry";
    case Emotion::Fear: return "fear";
    case Emotion::Disgust: return "disgust";
    }
    return "?";
}

bool is_positive_emotion(Emotion e) {
    return e == Emotion::Happy || e == Emotion::Surprise;
}

double positive_mass(const EmotionDistribution& dist) {
    return dist[Emotion::Happy] + dist[Emotion::Surprise];
}

EmotionDistribution normalize_emotions(const RawEmotionMap& raw) {
    EmotionDistribution dist;
    for (const auto& [label, score] : raw) {
        if (!std::isfinite(score)) throw DataError("emotion score for '" + label + "' is not finite");
        if (score < 0.0) throw DataError("emotion score for '" + label + "' is negative");
        Emotion e;
        if (emotion_from_label(label, e)) dist[e] += score;
        // Labels outside the six-emotion model carry no polarity; their mass
        // is dropped and the rest renormalized.
    }
    double total = 0.0;
    for (Emotion e : kAllEmotions) total += dist[e];
    if (total <= 0.0) throw DataError("no emotion signal");
    for (Emotion e : kAllEmotions) dist[e] /= total;
    return dist;
}

ModuleScore score_gif_faces(const FrameSet& frames, const FaceBackend& backend,
                            const FaceScoreOptions& options) {
    if (frames.frames.empty()) throw DataError("no frames to score for " + frames.gif_id);
    if (options.min_box_side < 0) throw ConfigError("min_box_side must be non-negative");

    ModuleScore result;
    result.modality = Modality::Face;
    double sum = 0.0;
    for (const auto& frame : frames.frames) {
        std::vector<Box> boxes;
        try {
            boxes = backend.detect(frame.image);
        } catch (const BackendError& e) {
            ++result.skipped_count;
            Log::warn("face: ", frames.gif_id, ": detection skipped: ", e.what());
            continue;
        }
        for (const auto& box : boxes) {
            if (box.width < options.min_box_side || box.height < options.min_box_side) {
                Log::debug("face: ", frames.gif_id, ": box below minimum size, discarded");
                continue;
            }
            try {
                auto raw = backend.emotions(crop(frame.image, box));
                sum += positive_mass(normalize_emotions(raw));
                ++result.evidence_count;
            } catch (const BackendError& e) {
                ++result.skipped_count;
                Log::warn("face: ", frames.gif_id, ": face skipped: ", e.what());
            } catch (const DataError& e) {
                ++result.skipped_count;
                Log::debug("face: ", frames.gif_id, ": face skipped: ", e.what());
            }
        }
    }
    if (result.evidence_count == 0) return result;  // unavailable
    result.available = true;
    result.score = sum / result.evidence_count;
    return result;
}

} // namespace gifsent

#pragma once

#include <array>
#include <string>

#include "gifsent/backends.hpp"
#include "gifsent/frames.hpp"
#include "gifsent/module_score.hpp"

namespace gifsent {

/// The six-emotion model. Happy and surprise count as positive; the other
/// four as negative.
enum class Emotion { Happy, Surprise, Sad, Angry, Fear, Disgust };

inline constexpr std::array<Emotion, 6> kAllEmotions = {
    Emotion::Happy, Emotion::Surprise, Emotion::Sad,
    Emotion::Angry, Emotion::Fear,     Emotion::Disgust};

const char* to_string(Emotion e);
bool is_positive_emotion(Emotion e);

struct EmotionDistribution {
    std::array<double, 6> p{};  // indexed by Emotion, sums to 1

    double& operator[](Emotion e) { return p[static_cast<size_t>(e)]; }
    double operator[](Emotion e) const { return p[static_cast<size_t>(e)]; }
};

/// Probability mass on the positive emotions (happy + surprise).
double positive_mass(const EmotionDistribution& dist);

/// Adapts a raw backend emotion map to the six-emotion model: labels outside
/// the model (a neutral class, say) are dropped and the remaining mass is
/// renormalized to sum to 1. Label lookup is case-insensitive. Throws
/// DataError("no emotion signal") when nothing remains, and DataError on
/// negative or non-finite inputs.
EmotionDistribution normalize_emotions(const RawEmotionMap& raw);

struct FaceScoreOptions {
    /// Boxes smaller than this on either side (at original resolution) are
    /// discarded as unreliable before any emotion inference.
    int min_box_side = 16;
};

/// Detects faces on every sampled frame, filters boxes below the minimum
/// size, runs emotion inference per surviving face and averages the positive
/// mass over all face observations in the GIF. No usable face observations
/// (none detected, all filtered, or all emotion calls failed) makes the
/// module unavailable. evidence_count is the number of face observations
/// that contributed.
ModuleScore score_gif_faces(const FrameSet& frames, const FaceBackend& backend,
                            const FaceScoreOptions& options = {});

} // namespace gifsent

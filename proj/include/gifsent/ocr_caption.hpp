#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gifsent/backends.hpp"
#include "gifsent/frames.hpp"
#include "gifsent/module_score.hpp"
#include "gifsent/text_sentiment.hpp"

namespace gifsent {

struct GifCaption {
    std::string text;  // aggregated caption, whitespace-normalized
    std::vector<std::pair<int, std::string>> per_frame;  // frames with non-empty text
    bool present = false;
};

/// Runs OCR over every sampled frame (converted to grayscale first) and
/// aggregates: runs of consecutive identical strings collapse to one, empty
/// results drop out, survivors join with single spaces. A repeated string
/// separated by an empty frame stays repeated. per_frame records the raw
/// non-empty recognitions in frame order.
GifCaption extract_caption(const FrameSet& frames, const OcrBackend& backend);

/// Scores an extracted caption through the same cleaning and classification
/// path tweets use (so caption text and tweet text are judged identically by
/// the same backend instance). A caption that is absent or cleans to empty
/// makes the module unavailable. evidence_count is the cleaned caption's
/// character count.
ModuleScore score_caption(const GifCaption& caption, const TextSentimentBackend& backend,
                          int max_tokens = 50);

} // namespace gifsent

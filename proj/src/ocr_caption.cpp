#include "gifsent/ocr_caption.hpp"

#include <sstream>

#include "gifsent/log.hpp"

namespace gifsent {

namespace {

std::string collapse_whitespace(const std::string& s) {
    std::istringstream in(s);
    std::string tok, out;
    while (in >> tok) {
        if (!out.empty()) out += ' ';
        out += tok;
    }
    return out;
}

} // namespace

GifCaption extract_caption(const FrameSet& frames, const OcrBackend& backend) {
    if (frames.frames.empty()) throw DataError("no frames to read for " + frames.gif_id);

    GifCaption caption;
    std::vector<std::string> parts;
    std::string previous;
    bool first = true;
    for (size_t i = 0; i < frames.frames.size(); ++i) {
        std::string text;
        try {
            text = backend.read_text(to_grayscale(frames.frames[i].image));
        } catch (const BackendError& e) {
            Log::warn("ocr: ", frames.gif_id, ": frame ", i, " skipped: ", e.what());
            text.clear();
        }
        if (!text.empty()) caption.per_frame.emplace_back(static_cast<int>(i), text);
        // Collapse runs of identical results across the raw frame sequence;
        // an empty frame in between breaks the run.
        bool duplicate = !first && text == previous;
        previous = text;
        first = false;
        if (duplicate || text.empty()) continue;
        parts.push_back(text);
    }

    std::string joined;
    for (const auto& part : parts) {
        if (!joined.empty()) joined += ' ';
        joined += part;
    }
    caption.text = collapse_whitespace(joined);
    caption.present = !caption.text.empty();
    return caption;
}

ModuleScore score_caption(const GifCaption& caption, const TextSentimentBackend& backend,
                          int max_tokens) {
    ModuleScore result;
    result.modality = Modality::Ocr;
    if (!caption.present) return result;  // unavailable

    CleanText clean = preprocess_tweet(caption.text);
    if (clean.empty()) {
        Log::debug("ocr: caption cleaned to empty, module unavailable");
        return result;
    }
    result.score = classify_text(clean, backend, max_tokens);
    result.available = true;
    result.evidence_count = static_cast<int>(clean.text.size());
    return result;
}

} // namespace gifsent

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gifsent/error.hpp"
#include "gifsent/image.hpp"

namespace gifsent {

/// Free-form per-backend configuration, from the [backends.<kind>] config section.
using BackendParams = std::map<std::string, std::string>;

/// Raw emotion scores as produced by a face backend. May carry labels outside
/// the six-emotion model (a neutral class, for instance) and need not sum to 1;
/// normalize_emotions() in face_emotion.hpp adapts them.
using RawEmotionMap = std::map<std::string, double>;

class TextSentimentBackend {
public:
    virtual ~TextSentimentBackend() = default;
    /// Probability of positive sentiment in [0,1] for already-cleaned text.
    virtual double classify(const std::string& clean_text) const = 0;
    virtual bool concurrent_safe() const = 0;
    virtual bool trainable() const { return false; }
};

class ImageSentimentBackend {
public:
    virtual ~ImageSentimentBackend() = default;
    /// Probability of positive sentiment in [0,1] for one RGB frame.
    virtual double score_frame(const Image& frame) const = 0;
    /// Square input side in pixels the model expects; frames are resized to it.
    virtual int expected_input() const { return 48; }
    virtual bool concurrent_safe() const = 0;
    virtual bool trainable() const { return false; }
};

class FaceBackend {
public:
    virtual ~FaceBackend() = default;
    virtual std::vector<Box> detect(const Image& frame) const = 0;
    virtual RawEmotionMap emotions(const Image& face_crop) const = 0;
    virtual bool concurrent_safe() const = 0;
};

class OcrBackend {
public:
    virtual ~OcrBackend() = default;
    /// Recognized text for one grayscale frame; empty string when nothing found.
    virtual std::string read_text(const Image& gray_frame) const = 0;
    virtual bool concurrent_safe() const = 0;
};

/// Lexicon mock: 0.9 if any token is in {good, love, happy, great, best},
/// 0.1 if any token is in {bad, hate, sad, awful, worst}, 0.5 when both or
/// neither appear. Tokens are whitespace-split from the cleaned text.
std::shared_ptr<TextSentimentBackend> mock_text_backend();

/// Intensity mock: mean pixel value over all channels, normalized to [0,1].
/// Rejects non-RGB input with "channel mismatch".
std::shared_ptr<ImageSentimentBackend> mock_image_backend();

/// Scripted mocks read a gray tag pixel at (0,0) of the frame (or face crop)
/// and look the value up in a script file, so tests can pin exact detections,
/// emotion distributions and recognized strings per frame. See MockScript.
std::shared_ptr<FaceBackend> scripted_face_backend(const BackendParams& params);
std::shared_ptr<OcrBackend> scripted_ocr_backend(const BackendParams& params);

/// Parsed script for the scripted face/OCR mocks.
///
/// Script files are JSON of the shape
///   {"emotions": {"<face tag>": {"happy": 0.6, ...}, ...},
///    "gifs": {"<gif id>": {"frames": [
///        {"tag": <frame tag>, "faces": [{"box": [x,y,w,h], "tag": <face tag>}, ...],
///         "text": "<recognized string>"}, ...]}, ...}}
/// Frame tags must be unique across the whole file: the backends have no other
/// way to tell frames apart. Background/"bg" keys are ignored here (the media
/// generator uses them).
struct MockScript {
    struct ScriptedFace {
        Box box;
        int tag = 0;
    };
    struct FrameEntry {
        std::vector<ScriptedFace> faces;
        std::string text;
    };

    std::map<int, FrameEntry> frames;       // keyed by the frame tag pixel
    std::map<int, RawEmotionMap> emotions;  // keyed by the face tag pixel

    static MockScript load(const std::string& path);
};

enum class BackendKind { Text, Image, Face, Ocr };

const char* to_string(BackendKind kind);

/// Immutable-after-startup registry of backend factories. Every instance
/// handed out is wrapped so that (a) contract violations (scores outside
/// [0,1], boxes outside the frame, negative emotion scores) raise a
/// BackendError instead of propagating, and (b) backends declaring
/// concurrent_safe == false are serialized behind an internal mutex, so
/// callers may always share the returned handle across workers.
class BackendRegistry {
public:
    using TextFactory = std::function<std::shared_ptr<TextSentimentBackend>(const BackendParams&)>;
    using ImageFactory = std::function<std::shared_ptr<ImageSentimentBackend>(const BackendParams&)>;
    using FaceFactory = std::function<std::shared_ptr<FaceBackend>(const BackendParams&)>;
    using OcrFactory = std::function<std::shared_ptr<OcrBackend>(const BackendParams&)>;

    /// Process-wide registry with the "mock" backends pre-registered.
    static BackendRegistry& global();

    BackendRegistry();

    void register_text(const std::string& name, TextFactory factory);
    void register_image(const std::string& name, ImageFactory factory);
    void register_face(const std::string& name, FaceFactory factory);
    void register_ocr(const std::string& name, OcrFactory factory);

    std::shared_ptr<TextSentimentBackend> get_text(const std::string& name,
                                                   const BackendParams& params = {}) const;
    std::shared_ptr<ImageSentimentBackend> get_image(const std::string& name,
                                                     const BackendParams& params = {}) const;
    std::shared_ptr<FaceBackend> get_face(const std::string& name,
                                          const BackendParams& params = {}) const;
    std::shared_ptr<OcrBackend> get_ocr(const std::string& name,
                                        const BackendParams& params = {}) const;

    std::vector<std::string> registered_names(BackendKind kind) const;

private:
    [[noreturn]] void throw_unknown(BackendKind kind, const std::string& name) const;

    std::map<std::string, TextFactory> text_;
    std::map<std::string, ImageFactory> image_;
    std::map<std::string, FaceFactory> face_;
    std::map<std::string, OcrFactory> ocr_;
};

} // namespace gifsent

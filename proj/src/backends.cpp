#include "gifsent/backends.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gifsent/log.hpp"

namespace gifsent {

namespace {

const std::set<std::string> kPositiveWords = {"good", "love", "happy", "great", "best"};
const std::set<std::string> kNegativeWords = {"bad", "hate", "sad", "awful", "worst"};

std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

class MockTextBackend : public TextSentimentBackend {
public:
    double classify(const std::string& clean_text) const override {
        bool pos = false;
        bool neg = false;
        for (const auto& tok : split_tokens(clean_text)) {
            if (kPositiveWords.count(tok)) pos = true;
            if (kNegativeWords.count(tok)) neg = true;
        }
        if (pos == neg) return 0.5;
        return pos ? 0.9 : 0.1;
    }
    bool concurrent_safe() const override { return true; }
};

class MockImageBackend : public ImageSentimentBackend {
public:
    double score_frame(const Image& frame) const override {
        if (frame.channels != 3)
            throw BackendError("channel mismatch: expected 3-channel RGB, got " +
                               std::to_string(frame.channels));
        if (frame.data.empty()) throw BackendError("empty frame");
        double sum = 0.0;
        for (uint8_t v : frame.data) sum += v;
        return sum / static_cast<double>(frame.data.size()) / 255.0;
    }
    bool concurrent_safe() const override { return true; }
};

/// Reads the tag pixel the scripted mocks key on. Frames carry the tag at
/// (0,0); face crops carry it at their own (0,0) because the media generator
/// paints it at each box's top-left corner. Tags are gray (all channels
/// equal), which survives both channel reordering and grayscale conversion.
int tag_pixel(const Image& img) {
    if (img.width < 1 || img.height < 1 || img.data.empty())
        throw BackendError("scripted backend got an empty image");
    return img.at(0, 0, 0);
}

class ScriptedFaceBackend : public FaceBackend {
public:
    explicit ScriptedFaceBackend(MockScript script) : script_(std::move(script)) {}

    std::vector<Box> detect(const Image& frame) const override {
        auto it = script_.frames.find(tag_pixel(frame));
        if (it == script_.frames.end()) return {};
        std::vector<Box> boxes;
        for (const auto& face : it->second.faces) boxes.push_back(face.box);
        return boxes;
    }

    RawEmotionMap emotions(const Image& face_crop) const override {
        int tag = tag_pixel(face_crop);
        auto it = script_.emotions.find(tag);
        if (it == script_.emotions.end())
            throw BackendError("no scripted emotions for face tag " + std::to_string(tag));
        return it->second;
    }

    bool concurrent_safe() const override { return true; }

private:
    MockScript script_;
};

class ScriptedOcrBackend : public OcrBackend {
public:
    explicit ScriptedOcrBackend(MockScript script) : script_(std::move(script)) {}

    std::string read_text(const Image& gray_frame) const override {
        auto it = script_.frames.find(tag_pixel(gray_frame));
        if (it == script_.frames.end()) return "";
        return it->second.text;
    }

    bool concurrent_safe() const override { return true; }

private:
    MockScript script_;
};

MockScript load_script_param(const BackendParams& params) {
    auto it = params.find("script");
    if (it == params.end()) return {};  // empty script: no faces, no text
    return MockScript::load(it->second);
}

// ---- validation wrappers ------------------------------------------------

void check_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw BackendError(std::string(what) + " out of range [0,1]: " + std::to_string(v));
}

class ValidatedTextBackend : public TextSentimentBackend {
public:
    explicit ValidatedTextBackend(std::shared_ptr<TextSentimentBackend> inner)
        : inner_(std::move(inner)) {}
    double classify(const std::string& clean_text) const override {
        double v = inner_->classify(clean_text);
        check_unit_interval(v, "text sentiment score");
        return v;
    }
    bool concurrent_safe() const override { return inner_->concurrent_safe(); }
    bool trainable() const override { return inner_->trainable(); }

private:
    std::shared_ptr<TextSentimentBackend> inner_;
};

class ValidatedImageBackend : public ImageSentimentBackend {
public:
    explicit ValidatedImageBackend(std::shared_ptr<ImageSentimentBackend> inner)
        : inner_(std::move(inner)) {}
    double score_frame(const Image& frame) const override {
        double v = inner_->score_frame(frame);
        check_unit_interval(v, "image sentiment score");
        return v;
    }
    int expected_input() const override { return inner_->expected_input(); }
    bool concurrent_safe() const override { return inner_->concurrent_safe(); }
    bool trainable() const override { return inner_->trainable(); }

private:
    std::shared_ptr<ImageSentimentBackend> inner_;
};

class ValidatedFaceBackend : public FaceBackend {
public:
    explicit ValidatedFaceBackend(std::shared_ptr<FaceBackend> inner)
        : inner_(std::move(inner)) {}
    std::vector<Box> detect(const Image& frame) const override {
        auto boxes = inner_->detect(frame);
        for (const auto& b : boxes) {
            if (!b.inside(frame.width, frame.height))
                throw BackendError("face box outside frame bounds: [" + std::to_string(b.x) +
                                   "," + std::to_string(b.y) + "," + std::to_string(b.width) +
                                   "," + std::to_string(b.height) + "] in " +
                                   std::to_string(frame.width) + "x" +
                                   std::to_string(frame.height));
        }
        return boxes;
    }
    RawEmotionMap emotions(const Image& face_crop) const override {
        auto raw = inner_->emotions(face_crop);
        for (const auto& [label, score] : raw) {
            if (!std::isfinite(score) || score < 0.0)
                throw BackendError("emotion score for '" + label +
                                   "' must be finite and non-negative, got " +
                                   std::to_string(score));
        }
        return raw;
    }
    bool concurrent_safe() const override { return inner_->concurrent_safe(); }

private:
    std::shared_ptr<FaceBackend> inner_;
};

// ---- serialization wrappers ----------------------------------------------
// Backends declaring concurrent_safe == false get one of these, so the handle
// the registry returns is always safe to share across worker threads.

class SerializedTextBackend : public TextSentimentBackend {
public:
    explicit SerializedTextBackend(std::shared_ptr<TextSentimentBackend> inner)
        : inner_(std::move(inner)) {}
    double classify(const std::string& clean_text) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return inner_->classify(clean_text);
    }
    bool concurrent_safe() const override { return true; }
    bool trainable() const override { return inner_->trainable(); }

private:
    std::shared_ptr<TextSentimentBackend> inner_;
    mutable std::mutex mu_;
};

class SerializedImageBackend : public ImageSentimentBackend {
public:
    explicit SerializedImageBackend(std::shared_ptr<ImageSentimentBackend> inner)
        : inner_(std::move(inner)) {}
    double score_frame(const Image& frame) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return inner_->score_frame(frame);
    }
    int expected_input() const override { return inner_->expected_input(); }
    bool concurrent_safe() const override { return true; }
    bool trainable() const override { return inner_->trainable(); }

private:
    std::shared_ptr<ImageSentimentBackend> inner_;
    mutable std::mutex mu_;
};

class SerializedFaceBackend : public FaceBackend {
public:
    explicit SerializedFaceBackend(std::shared_ptr<FaceBackend> inner)
        : inner_(std::move(inner)) {}
    std::vector<Box> detect(const Image& frame) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return inner_->detect(frame);
    }
    RawEmotionMap emotions(const Image& face_crop) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return inner_->emotions(face_crop);
    }
    bool concurrent_safe() const override { return true; }

private:
    std::shared_ptr<FaceBackend> inner_;
    mutable std::mutex mu_;
};

class SerializedOcrBackend : public OcrBackend {
public:
    explicit SerializedOcrBackend(std::shared_ptr<OcrBackend> inner)
        : inner_(std::move(inner)) {}
    std::string read_text(const Image& gray_frame) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return inner_->read_text(gray_frame);
    }
    bool concurrent_safe() const override { return true; }

private:
    std::shared_ptr<OcrBackend> inner_;
    mutable std::mutex mu_;
};

/// Test hook: "concurrent_safe" = "false" in the params forces the wrapped
/// flag off, so the serialization path is exercisable with the mocks.
bool forced_unsafe(const BackendParams& params) {
    auto it = params.find("concurrent_safe");
    return it != params.end() && it->second == "false";
}

class ForcedUnsafeText : public TextSentimentBackend {
public:
    explicit ForcedUnsafeText(std::shared_ptr<TextSentimentBackend> inner)
        : inner_(std::move(inner)) {}
    double classify(const std::string& t) const override { return inner_->classify(t); }
    bool concurrent_safe() const override { return false; }
    bool trainable() const override { return inner_->trainable(); }

private:
    std::shared_ptr<TextSentimentBackend> inner_;
};

} // namespace

std::shared_ptr<TextSentimentBackend> mock_text_backend() {
    return std::make_shared<MockTextBackend>();
}

std::shared_ptr<ImageSentimentBackend> mock_image_backend() {
    return std::make_shared<MockImageBackend>();
}

std::shared_ptr<FaceBackend> scripted_face_backend(const BackendParams& params) {
    return std::make_shared<ScriptedFaceBackend>(load_script_param(params));
}

std::shared_ptr<OcrBackend> scripted_ocr_backend(const BackendParams& params) {
    return std::make_shared<ScriptedOcrBackend>(load_script_param(params));
}

MockScript MockScript::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open backend script: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("backend script " + path + " is not valid JSON: " + e.what());
    }

    MockScript script;
    if (doc.contains("emotions")) {
        for (const auto& [key, value] : doc["emotions"].items()) {
            RawEmotionMap emo;
            for (const auto& [label, score] : value.items())
                emo[label] = score.get<double>();
            script.emotions[std::stoi(key)] = std::move(emo);
        }
    }
    if (doc.contains("gifs")) {
        for (const auto& [gif_id, gif] : doc["gifs"].items()) {
            if (!gif.contains("frames")) continue;
            for (const auto& frame : gif["frames"]) {
                int tag = frame.at("tag").get<int>();
                if (script.frames.count(tag))
                    throw ConfigError("backend script " + path + ": frame tag " +
                                      std::to_string(tag) + " is not unique (gif " + gif_id + ")");
                FrameEntry entry;
                if (frame.contains("text")) entry.text = frame["text"].get<std::string>();
                if (frame.contains("faces")) {
                    for (const auto& face : frame["faces"]) {
                        ScriptedFace sf;
                        const auto& box = face.at("box");
                        sf.box = Box{box.at(0).get<int>(), box.at(1).get<int>(),
                                     box.at(2).get<int>(), box.at(3).get<int>()};
                        sf.tag = face.at("tag").get<int>();
                        entry.faces.push_back(sf);
                    }
                }
                script.frames[tag] = std::move(entry);
            }
        }
    }
    return script;
}

const char* to_string(BackendKind kind) {
    switch (kind) {
    case BackendKind::Text: return "text";
    case BackendKind::Image: return "image";
    case BackendKind::Face: return "face";
    case BackendKind::Ocr: return "ocr";
    }
    return "?";
}

BackendRegistry& BackendRegistry::global() {
    static BackendRegistry instance;
    return instance;
}

BackendRegistry::BackendRegistry() {
    register_text("mock", [](const BackendParams&) { return mock_text_backend(); });
    register_image("mock", [](const BackendParams&) { return mock_image_backend(); });
    register_face("mock", [](const BackendParams& p) { return scripted_face_backend(p); });
    register_ocr("mock", [](const BackendParams& p) { return scripted_ocr_backend(p); });
}

void BackendRegistry::register_text(const std::string& name, TextFactory factory) {
    text_[name] = std::move(factory);
}
void BackendRegistry::register_image(const std::string& name, ImageFactory factory) {
    image_[name] = std::move(factory);
}
void BackendRegistry::register_face(const std::string& name, FaceFactory factory) {
    face_[name] = std::move(factory);
}
void BackendRegistry::register_ocr(const std::string& name, OcrFactory factory) {
    ocr_[name] = std::move(factory);
}

std::shared_ptr<TextSentimentBackend> BackendRegistry::get_text(const std::string& name,
                                                                const BackendParams& params) const {
    auto it = text_.find(name);
    if (it == text_.end()) throw_unknown(BackendKind::Text, name);
    std::shared_ptr<TextSentimentBackend> backend = it->second(params);
    if (!backend) throw BackendError("text backend factory '" + name + "' returned null");
    if (forced_unsafe(params)) backend = std::make_shared<ForcedUnsafeText>(backend);
    backend = std::make_shared<ValidatedTextBackend>(std::move(backend));
    if (!backend->concurrent_safe())
        backend = std::make_shared<SerializedTextBackend>(std::move(backend));
    return backend;
}

std::shared_ptr<ImageSentimentBackend> BackendRegistry::get_image(const std::string& name,
                                                                  const BackendParams& params) const {
    auto it = image_.find(name);
    if (it == image_.end()) throw_unknown(BackendKind::Image, name);
    std::shared_ptr<ImageSentimentBackend> backend = it->second(params);
    if (!backend) throw BackendError("image backend factory '" + name + "' returned null");
    backend = std::make_shared<ValidatedImageBackend>(std::move(backend));
    if (!backend->concurrent_safe())
        backend = std::make_shared<SerializedImageBackend>(std::move(backend));
    return backend;
}

std::shared_ptr<FaceBackend> BackendRegistry::get_face(const std::string& name,
                                                       const BackendParams& params) const {
    auto it = face_.find(name);
    if (it == face_.end()) throw_unknown(BackendKind::Face, name);
    std::shared_ptr<FaceBackend> backend = it->second(params);
    if (!backend) throw BackendError("face backend factory '" + name + "' returned null");
    backend = std::make_shared<ValidatedFaceBackend>(std::move(backend));
    if (!backend->concurrent_safe())
        backend = std::make_shared<SerializedFaceBackend>(std::move(backend));
    return backend;
}

std::shared_ptr<OcrBackend> BackendRegistry::get_ocr(const std::string& name,
                                                     const BackendParams& params) const {
    auto it = ocr_.find(name);
    if (it == ocr_.end()) throw_unknown(BackendKind::Ocr, name);
    std::shared_ptr<OcrBackend> backend = it->second(params);
    if (!backend) throw BackendError("ocr backend factory '" + name + "' returned null");
    if (!backend->concurrent_safe())
        backend = std::make_shared<SerializedOcrBackend>(std::move(backend));
    return backend;
}

std::vector<std::string> BackendRegistry::registered_names(BackendKind kind) const {
    std::vector<std::string> names;
    switch (kind) {
    case BackendKind::Text:
        for (const auto& [n, f] : text_) names.push_back(n);
        break;
    case BackendKind::Image:
        for (const auto& [n, f] : image_) names.push_back(n);
        break;
    case BackendKind::Face:
        for (const auto& [n, f] : face_) names.push_back(n);
        break;
    case BackendKind::Ocr:
        for (const auto& [n, f] : ocr_) names.push_back(n);
        break;
    }
    return names;
}

void BackendRegistry::throw_unknown(BackendKind kind, const std::string& name) const {
    std::string known;
    for (const auto& n : registered_names(kind)) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw BackendError("unknown " + std::string(to_string(kind)) + " backend '" + name +
                       "' (registered: " + known + ")");
}

} // namespace gifsent

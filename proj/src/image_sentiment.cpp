#include "gifsent/image_sentiment.hpp"

#include <filesystem>

#include "gifsent/log.hpp"

namespace gifsent {

ModuleScore score_gif_images(const FrameSet& frames, const ImageSentimentBackend& backend) {
    if (frames.frames.empty()) throw DataError("no frames to score for " + frames.gif_id);

    ModuleScore result;
    result.modality = Modality::Image;
    int side = backend.expected_input();
    double sum = 0.0;
    for (const auto& frame : frames.frames) {
        try {
            sum += backend.score_frame(resize_for_model(frame.image, side));
            ++result.evidence_count;
        } catch (const BackendError& e) {
            ++result.skipped_count;
            Log::warn("image: ", frames.gif_id, ": frame skipped: ", e.what());
        }
    }
    if (result.evidence_count == 0) return result;  // unavailable
    result.available = true;
    result.score = sum / result.evidence_count;
    return result;
}

void ImageFineTuneConfig::validate() const {
    if (epochs <= 0) throw ConfigError("image finetune: epochs must be positive");
    if (batch_size <= 0) throw ConfigError("image finetune: batch_size must be positive");
    if (input_side <= 0) throw ConfigError("image finetune: input_side must be positive");
    if (!(learning_rate > 0.0))
        throw ConfigError("image finetune: learning_rate must be positive");
    if (!(validation_split > 0.0 && validation_split < 1.0))
        throw ConfigError("image finetune: validation_split must be in (0,1)");
    if (optimizer.empty()) throw ConfigError("image finetune: optimizer must be set");
    if (loss.empty()) throw ConfigError("image finetune: loss must be set");
}

std::string fine_tune_image(const ImageFineTuneConfig& config,
                            const std::string& dataset_dir,
                            const std::string& out_dir,
                            const std::shared_ptr<ImageSentimentBackend>& backend) {
    config.validate();
    if (!backend || !backend->trainable())
        throw BackendError("training requires a trainable backend");
    auto* trainable = dynamic_cast<TrainableImageBackend*>(backend.get());
    if (!trainable)
        throw BackendError("backend declares trainable but lacks the training interface");
    if (!std::filesystem::is_directory(dataset_dir))
        throw ConfigError("training dataset directory not found: " + dataset_dir);
    return trainable->fine_tune(config, dataset_dir, out_dir);
}

} // namespace gifsent

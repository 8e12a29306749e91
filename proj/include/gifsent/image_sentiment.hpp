#pragma once

#include <memory>
#include <string>

#include "gifsent/backends.hpp"
#include "gifsent/frames.hpp"
#include "gifsent/module_score.hpp"

namespace gifsent {

/// Scores every sampled frame with the image backend (after resizing to the
/// backend's expected input) and averages. Frames the backend rejects are
/// skipped and counted; if every frame fails the module comes back
/// unavailable rather than throwing.
ModuleScore score_gif_images(const FrameSet& frames, const ImageSentimentBackend& backend);

struct ImageFineTuneConfig {
    int epochs = 3;
    int batch_size = 32;
    int input_side = 48;
    double learning_rate = 1e-4;
    double validation_split = 0.2;
    bool freeze_base = true;
    std::string optimizer = "adam";
    std::string loss = "categorical_crossentropy";

    /// Throws ConfigError on non-positive sizes/rates or a split outside (0,1).
    void validate() const;
};

/// Extension point for backends that support fine_tune_image.
class TrainableImageBackend : public ImageSentimentBackend {
public:
    bool trainable() const override { return true; }
    virtual std::string fine_tune(const ImageFineTuneConfig& config,
                                  const std::string& dataset_dir,
                                  const std::string& out_dir) = 0;
};

/// Validates the config, requires a trainable backend, then delegates to it.
std::string fine_tune_image(const ImageFineTuneConfig& config,
                            const std::string& dataset_dir,
                            const std::string& out_dir,
                            const std::shared_ptr<ImageSentimentBackend>& backend);

} // namespace gifsent

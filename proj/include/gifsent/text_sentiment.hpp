#pragma once

#include <memory>
#include <string>

#include "gifsent/backends.hpp"
#include "gifsent/error.hpp"

namespace gifsent {

struct CleanText {
    std::string text;      // cleaned form, possibly empty
    std::string original;  // raw input, kept for diagnostics
    bool empty() const { return text.empty(); }
};

/// Normalizes raw tweet text for classification. Applied in this order:
/// URLs removed (http://, https://, www. tokens), @-mentions removed,
/// emoji and pictographic codepoints removed, '#' stripped with the hashtag
/// word kept, remaining punctuation removed, ASCII letters lowercased,
/// whitespace collapsed to single spaces with ends trimmed.
/// Idempotent: preprocess_tweet(x.text).text == x.text.
CleanText preprocess_tweet(const std::string& raw);

/// Scores cleaned text with the backend, truncating to max_tokens
/// whitespace tokens first. Empty cleaned text is not classifiable.
double classify_text(const CleanText& clean, const TextSentimentBackend& backend,
                     int max_tokens = 50);

struct TextFineTuneConfig {
    int epochs = 3;
    int batch_size = 32;
    int max_seq_len = 50;
    double encoder_lr = 0.01;    // classification head on top of the encoder
    double rest_lr = 2e-5;       // remaining trainable parameters
    bool freeze_embeddings = true;
    std::string optimizer = "adam";
    std::string loss = "mse";

    /// Throws ConfigError on non-positive epochs/batch/seq-len/rates.
    void validate() const;
};

/// Extension point for backends that support fine_tune_text.
class TrainableTextBackend : public TextSentimentBackend {
public:
    bool trainable() const override { return true; }
    /// Runs fine-tuning over a labeled corpus, returns the checkpoint path.
    virtual std::string fine_tune(const TextFineTuneConfig& config,
                                  const std::string& corpus_path,
                                  const std::string& out_dir) = 0;
};

/// Validates the config, requires a trainable backend, then delegates to it.
/// The bundled mock backends are not trainable; docs/runbook.md covers wiring
/// a real encoder for full-scale training.
std::string fine_tune_text(const TextFineTuneConfig& config,
                           const std::string& corpus_path,
                           const std::string& out_dir,
                           const std::shared_ptr<TextSentimentBackend>& backend);

} // namespace gifsent

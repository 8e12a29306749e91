#include "gifsent/text_sentiment.hpp"

#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace gifsent {

namespace {

bool starts_with_icase(const std::string& s, const char* prefix) {
    size_t n = std::strlen(prefix);
    if (s.size() < n) return false;
    for (size_t i = 0; i < n; ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    }
    return true;
}

bool is_url_token(const std::string& tok) {
    return starts_with_icase(tok, "http://") || starts_with_icase(tok, "https://") ||
           starts_with_icase(tok, "www.");
}

bool is_mention_token(const std::string& tok) {
    return tok.size() > 1 && tok[0] == '@';
}

/// Decodes one UTF-8 codepoint starting at s[i]. Returns the byte length
/// consumed; malformed bytes are passed through one at a time.
size_t decode_utf8(const std::string& s, size_t i, uint32_t& cp) {
    unsigned char b0 = s[i];
    if (b0 < 0x80) {
        cp = b0;
        return 1;
    }
    size_t len = 0;
    if ((b0 & 0xE0) == 0xC0) {
        cp = b0 & 0x1F;
        len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
        cp = b0 & 0x0F;
        len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
        cp = b0 & 0x07;
        len = 4;
    } else {
        cp = b0;
        return 1;
    }
    if (i + len > s.size()) {
        cp = b0;
        return 1;
    }
    for (size_t k = 1; k < len; ++k) {
        unsigned char b = s[i + k];
        if ((b & 0xC0) != 0x80) {
            cp = b0;
            return 1;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    return len;
}

bool in_range(uint32_t cp, uint32_t lo, uint32_t hi) { return cp >= lo && cp <= hi; }

/// Emoji and pictographic codepoints. Covers the emoticon/symbol planes,
/// dingbats/misc symbols, variation selectors, keycap combiner and ZWJ
/// (so assembled emoji sequences vanish entirely).
bool is_emoji_codepoint(uint32_t cp) {
    return in_range(cp, 0x1F000, 0x1FAFF) ||  // emoticons through symbols extended-A
           in_range(cp, 0x2600, 0x27BF) ||    // misc symbols, dingbats
           in_range(cp, 0x2B00, 0x2BFF) ||    // misc symbols and arrows
           in_range(cp, 0xFE00, 0xFE0F) ||    // variation selectors
           cp == 0x200D ||                    // zero-width joiner
           cp == 0x20E3;                      // combining enclosing keycap
}

/// Punctuation to strip: the ASCII set plus the common typographic marks
/// tweets actually contain (curly quotes, dashes, ellipsis, guillemets,
/// inverted marks, primes).
bool is_punct_codepoint(uint32_t cp) {
    if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
    return in_range(cp, 0x2010, 0x2027) ||  // hyphens, dashes, quotes, bullets, ellipsis
           cp == 0x00A1 || cp == 0x00BF ||  // inverted exclamation/question
           cp == 0x00AB || cp == 0x00BB ||  // guillemets
           cp == 0x2039 || cp == 0x203A ||  // single guillemets
           cp == 0x2032 || cp == 0x2033;    // primes
}

std::vector<std::string> split_whitespace(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string join_tokens(const std::vector<std::string>& tokens, size_t limit) {
    std::string out;
    for (size_t i = 0; i < tokens.size() && i < limit; ++i) {
        if (!out.empty()) out += ' ';
        out += tokens[i];
    }
    return out;
}

} // namespace

CleanText preprocess_tweet(const std::string& raw) {
    CleanText result;
    result.original = raw;

    std::vector<std::string> kept;
    for (const auto& tok : split_whitespace(raw)) {
        if (is_url_token(tok)) continue;
        if (is_mention_token(tok)) continue;
        kept.push_back(tok);
    }
    std::string joined = join_tokens(kept, kept.size());

    std::string filtered;
    filtered.reserve(joined.size());
    size_t i = 0;
    while (i < joined.size()) {
        uint32_t cp = 0;
        size_t len = decode_utf8(joined, i, cp);
        if (is_emoji_codepoint(cp) || cp == '#' || is_punct_codepoint(cp)) {
            i += len;
            continue;
        }
        if (cp < 0x80) {
            filtered += static_cast<char>(std::tolower(static_cast<int>(cp)));
        } else {
            filtered.append(joined, i, len);
        }
        i += len;
    }

    result.text = join_tokens(split_whitespace(filtered), SIZE_MAX);
    return result;
}

double classify_text(const CleanText& clean, const TextSentimentBackend& backend,
                     int max_tokens) {
    if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
    if (clean.empty()) throw DataError("no classifiable text after cleaning");
    auto tokens = split_whitespace(clean.text);
    std::string truncated = join_tokens(tokens, static_cast<size_t>(max_tokens));
    return backend.classify(truncated);
}

void TextFineTuneConfig::validate() const {
    if (epochs <= 0) throw ConfigError("text finetune: epochs must be positive");
    if (batch_size <= 0) throw ConfigError("text finetune: batch_size must be positive");
    if (max_seq_len <= 0) throw ConfigError("text finetune: max_seq_len must be positive");
    if (!(encoder_lr > 0.0)) throw ConfigError("text finetune: encoder_lr must be positive");
    if (!(rest_lr > 0.0)) throw ConfigError("text finetune: rest_lr must be positive");
    if (optimizer.empty()) throw ConfigError("text finetune: optimizer must be set");
    if (loss.empty()) throw ConfigError("text finetune: loss must be set");
}

std::string fine_tune_text(const TextFineTuneConfig& config,
                           const std::string& corpus_path,
                           const std::string& out_dir,
                           const std::shared_ptr<TextSentimentBackend>& backend) {
    config.validate();
    if (!backend || !backend->trainable())
        throw BackendError("training requires a trainable backend");
    auto* trainable = dynamic_cast<TrainableTextBackend*>(backend.get());
    if (!trainable)
        throw BackendError("backend declares trainable but lacks the training interface");
    std::ifstream corpus(corpus_path);
    if (!corpus) throw ConfigError("training corpus not found: " + corpus_path);
    return trainable->fine_tune(config, corpus_path, out_dir);
}

} // namespace gifsent

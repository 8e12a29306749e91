#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gifsent/error.hpp"

namespace gifsent {

struct TweetRecord {
    std::string record_id;
    std::string tweet_id;
    std::string tweet_text;
    std::string gif_id;
    std::optional<std::string> media_path;
    int induced_label = 0;  // 1 = positive, 0 = negative
    std::string reaction_category;

    // Filled by resolve_media when the media cannot be located.
    bool media_missing = false;
    std::string media_missing_cause;
};

struct CorpusIndex {
    std::vector<TweetRecord> records;  // input order preserved
    int distinct_tweet_count = 0;
    int unique_gif_count = 0;
};

struct RowReject {
    int row = 0;  // 1-based line (or CSV data row) number
    std::string reason;
};

struct LoadResult {
    CorpusIndex index;
    std::vector<RowReject> rejects;
};

enum class CorpusFormat { Jsonl, Csv };

/// Loads and validates a corpus file. Malformed rows (bad JSON, missing or
/// mistyped required fields, induced labels outside {0,1}, duplicate
/// record_ids) are collected as rejects with their row number; valid rows
/// all load. An unreadable file is fatal.
///
/// Required fields: record_id, tweet_id, tweet_text, gif_id, induced_label.
/// Optional: media_path, reaction_category.
LoadResult load_corpus(const std::string& path, CorpusFormat format = CorpusFormat::Jsonl);

/// Writes the canonical JSONL form. save_corpus followed by load_corpus
/// reproduces the records exactly.
void save_corpus(const CorpusIndex& index, const std::string& path);

/// Writes rejects as JSONL rows {"row": n, "reason": "..."} to
/// corpus_out_path + ".rejects.jsonl". Always writes the file, even empty.
std::string write_rejects(const std::vector<RowReject>& rejects,
                          const std::string& corpus_out_path);

struct CorpusStats {
    int record_count = 0;
    int distinct_tweet_count = 0;
    int unique_gif_count = 0;
    double single_reaction_fraction = 0.0;  // tweets with exactly one record
    int max_reactions_per_tweet = 0;
};

/// Throws DataError on an empty corpus.
CorpusStats corpus_stats(const CorpusIndex& index);

struct MediaResolveOptions {
    bool network_fetch = false;
    /// URL with a {gif_id} placeholder, e.g. "http://host/media/{gif_id}.mp4".
    std::string url_template;
    int timeout_ms = 5000;
};

/// Locates the media file for a record: an already-set existing media_path
/// wins, then cache_dir/<gif_id> with a known extension (.mp4, .avi, .gif),
/// then an optional HTTP fetch into the cache. Failures never throw; the
/// returned record carries media_missing and a cause instead, so one bad
/// record cannot take down a batch. The cache directory must exist.
TweetRecord resolve_media(const TweetRecord& record, const std::string& cache_dir,
                          const MediaResolveOptions& options = {});

} // namespace gifsent

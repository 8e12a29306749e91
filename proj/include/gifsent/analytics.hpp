#pragma once

#include <map>
#include <string>
#include <vector>

#include "gifsent/backends.hpp"
#include "gifsent/corpus.hpp"
#include "gifsent/fusion.hpp"

namespace gifsent {

/// Perceived sentiment of the tweet author, predicted from the tweet text
/// alone: 1 when the backend score is >= 0.5, else 0. Throws DataError when
/// the text cleans to empty (such records are excluded from pair analytics
/// and tallied, not failed).
int perceived_sentiment(const TweetRecord& record, const TextSentimentBackend& backend,
                        int max_tokens = 50);

struct SentimentPair {
    std::string record_id;
    int perceived = 0;
    int induced = 0;
};

/// Counts of perceived x induced combinations. "pos_neg" reads: perceived
/// positive, induced negative.
struct CombinationMatrix {
    int pos_pos = 0;
    int pos_neg = 0;
    int neg_pos = 0;
    int neg_neg = 0;

    int same() const { return pos_pos + neg_neg; }
    int opposing() const { return pos_neg + neg_pos; }
    int total() const { return same() + opposing(); }
};

CombinationMatrix combination_matrix(const std::vector<SentimentPair>& pairs);

struct RatioResult {
    double value = 0.0;
    bool finite = true;  // false when there are no opposing pairs
};

/// Same-sentiment to opposing-sentiment ratio of the matrix.
RatioResult same_to_opposing(const CombinationMatrix& matrix);

struct AttributeCellStats {
    int count = 0;       // records whose GIF fell in this cell
    int correct = 0;     // of those, records where the fused label matched induced
    double fraction = 0.0;
    double accuracy = 0.0;
};

struct AttributeReport {
    std::map<AttributeClass, AttributeCellStats> cells;  // all four, even empty
    int covered_records = 0;    // records whose GIF has a score
    int uncovered_records = 0;  // records left out (GIF unscored)
    int correct_records = 0;
    double overall_accuracy = 0.0;
};

/// Per-attribute-class agreement between the fused GIF label and the induced
/// label, evaluated per record (a GIF shared by several records counts once
/// per record). Cell fractions are over covered records.
AttributeReport attribute_accuracy(const std::vector<FusedSentiment>& scored,
                                   const std::vector<TweetRecord>& records);

struct AnalysisReport {
    CorpusStats corpus;
    int pairs = 0;
    int excluded_empty_text = 0;
    int perceived_positive = 0;
    int induced_positive = 0;  // over included pairs
    CombinationMatrix matrix;
    RatioResult ratio;
    AttributeReport attributes;
    std::map<AttributeClass, double> partition;  // over scored GIFs
    int scored_gifs = 0;
};

/// Full perceived-vs-induced analysis of a scored corpus. Throws DataError
/// on an empty corpus or when a score references a GIF absent from the
/// corpus.
AnalysisReport analyze_corpus(const CorpusIndex& corpus,
                              const std::vector<FusedSentiment>& scored,
                              const TextSentimentBackend& text_backend,
                              int max_tokens = 50);

/// Writes report.json, two bar charts (combination matrix, per-class
/// accuracy) and manifest.json into out_dir, creating it if needed. Returns
/// the manifest: the three data file paths, charts before report.
std::vector<std::string> emit_report(const AnalysisReport& report, const std::string& out_dir);

/// Reads a report.json written by emit_report back in (for re-rendering).
AnalysisReport load_report(const std::string& path);

} // namespace gifsent

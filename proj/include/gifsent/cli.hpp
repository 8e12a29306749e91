#pragma once

#include <map>
#include <string>
#include <vector>

#include "gifsent/backends.hpp"
#include "gifsent/error.hpp"
#include "gifsent/image_sentiment.hpp"
#include "gifsent/text_sentiment.hpp"

namespace gifsent {

struct BackendSelection {
    std::string name = "mock";
    BackendParams params;
};

/// One run's full configuration. Loadable from a config file, overridable
/// with --set key=value and the first-class flags.
struct PipelineConfig {
    std::string corpus_path;        // input corpus for ingest
    std::string corpus_format = "jsonl";  // "jsonl" or "csv"
    std::string cache_dir = "media_cache";
    std::string out_dir = "out";
    double frame_period = 0.1;      // seconds between sampled frames
    int parallelism = 1;            // worker threads for scoring
    int max_text_tokens = 50;
    int min_face_box = 16;
    bool dump_frames = false;       // write sampled frames while scoring
    bool network_fetch = false;
    std::string fetch_url_template; // e.g. "http://host/media/{gif_id}.mp4"
    int fetch_timeout_ms = 5000;
    std::string log_level = "warn";

    BackendSelection text_backend, image_backend, face_backend, ocr_backend;

    TextFineTuneConfig text_finetune;
    ImageFineTuneConfig image_finetune;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Parses an INI-style config file: [section] headers, key = value lines,
/// '#'/';' comments, quoted or bare strings. Sections: [pipeline],
/// [backends] (text/image/face/ocr = name), [backends.text] etc. for
/// backend params, [text.finetune], [image.finetune]. Unknown keys and
/// sections are errors.
PipelineConfig load_config(const std::string& path);

/// Applies one "section.key=value" override on top of a loaded config, with
/// the same key set the file accepts.
void apply_override(PipelineConfig& config, const std::string& dotted_key,
                    const std::string& value);

struct IngestSummary {
    int accepted = 0;
    int rejected = 0;
    std::string corpus_out;
    std::string rejects_out;
};

/// Validates the input corpus into the canonical form at
/// out_dir/corpus.jsonl, writing rejects alongside it.
IngestSummary cmd_ingest(const PipelineConfig& config);

struct FetchSummary {
    int resolved = 0;
    int missing = 0;
    std::string log_out;
};

/// Resolves media for every corpus record (downloading into the cache when
/// network_fetch is on) and logs per-record outcomes to
/// out_dir/fetch_report.jsonl.
FetchSummary cmd_fetch_media(const PipelineConfig& config);

struct ExtractSummary {
    int extracted = 0;
    int skipped = 0;
};

/// Dumps sampled frames for every resolvable GIF to cache_dir/<gif_id>/.
ExtractSummary cmd_extract_frames(const PipelineConfig& config);

struct ScoreSummary {
    int scored = 0;
    int skipped = 0;
    std::string scores_out;
    std::string skips_out;
};

/// Scores every unique GIF in the canonical corpus and writes one JSONL row
/// per GIF to out_dir/scores.jsonl (unscorable GIFs go to
/// out_dir/scores.skipped.jsonl with a reason). Output order matches first
/// appearance in the corpus regardless of parallelism.
ScoreSummary cmd_score(const PipelineConfig& config);

struct AnalyzeSummary {
    std::vector<std::string> manifest;
};

/// Runs the perceived-vs-induced analysis over the canonical corpus and
/// scores, emitting out_dir/report/.
AnalyzeSummary cmd_analyze(const PipelineConfig& config);

/// Re-renders charts from an existing out_dir/report/report.json and prints
/// the headline numbers.
AnalyzeSummary cmd_report(const PipelineConfig& config);

/// Full command-line entry: parses argv, dispatches subcommands, maps
/// exceptions to exit codes (1 config/usage, 2 data, 3 backend).
int run_cli(int argc, const char* const* argv);

} // namespace gifsent

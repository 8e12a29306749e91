#include "gifsent/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gifsent/analytics.hpp"
#include "gifsent/corpus.hpp"
#include "gifsent/face_emotion.hpp"
#include "gifsent/frames.hpp"
#include "gifsent/fusion.hpp"
#include "gifsent/jsonio.hpp"
#include "gifsent/log.hpp"
#include "gifsent/ocr_caption.hpp"
#include "parallel.hpp"

namespace gifsent {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    if (corpus_format != "jsonl" && corpus_format != "csv")
        throw ConfigError("corpus_format must be 'jsonl' or 'csv', got '" + corpus_format + "'");
    if (!(frame_period > 0.0)) throw ConfigError("frame_period must be positive");
    if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
    if (max_text_tokens < 1) throw ConfigError("max_text_tokens must be at least 1");
    if (min_face_box < 0) throw ConfigError("min_face_box must be non-negative");
    if (fetch_timeout_ms < 1) throw ConfigError("fetch_timeout_ms must be at least 1");
    try {
        Log::parse_level(log_level);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (out_dir.empty()) throw ConfigError("out_dir must be set");
    if (cache_dir.empty()) throw ConfigError("cache_dir must be set");
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("config key '" + key + "' needs true or false, got '" + value + "'");
}

/// Applies one key in one section. Shared by the file parser and --set.
void set_config_key(PipelineConfig& config, const std::string& section,
                    const std::string& key, const std::string& raw_value) {
    std::string value = unquote(raw_value);
    auto full = [&] { return section + "." + key; };

    if (section == "pipeline") {
        if (key == "corpus_path") config.corpus_path = value;
        else if (key == "corpus_format") config.corpus_format = value;
        else if (key == "cache_dir") config.cache_dir = value;
        else if (key == "out_dir") config.out_dir = value;
        else if (key == "frame_period") config.frame_period = parse_double(full(), value);
        else if (key == "parallelism") config.parallelism = parse_int(full(), value);
        else if (key == "max_text_tokens") config.max_text_tokens = parse_int(full(), value);
        else if (key == "min_face_box") config.min_face_box = parse_int(full(), value);
        else if (key == "dump_frames") config.dump_frames = parse_bool(full(), value);
        else if (key == "network_fetch") config.network_fetch = parse_bool(full(), value);
        else if (key == "fetch_url_template") config.fetch_url_template = value;
        else if (key == "fetch_timeout_ms") config.fetch_timeout_ms = parse_int(full(), value);
        else if (key == "log_level") config.log_level = value;
        else throw ConfigError("unknown config key: " + full());
        return;
    }
    if (section == "backends") {
        if (key == "text") config.text_backend.name = value;
        else if (key == "image") config.image_backend.name = value;
        else if (key == "face") config.face_backend.name = value;
        else if (key == "ocr") config.ocr_backend.name = value;
        else throw ConfigError("unknown config key: " + full());
        return;
    }
    if (section == "backends.text") { config.text_backend.params[key] = value; return; }
    if (section == "backends.image") { config.image_backend.params[key] = value; return; }
    if (section == "backends.face") { config.face_backend.params[key] = value; return; }
    if (section == "backends.ocr") { config.ocr_backend.params[key] = value; return; }

    if (section == "text.finetune") {
        auto& ft = config.text_finetune;
        if (key == "epochs") ft.epochs = parse_int(full(), value);
        else if (key == "batch_size") ft.batch_size = parse_int(full(), value);
        else if (key == "max_seq_len") ft.max_seq_len = parse_int(full(), value);
        else if (key == "encoder_lr") ft.encoder_lr = parse_double(full(), value);
        else if (key == "rest_lr") ft.rest_lr = parse_double(full(), value);
        else if (key == "freeze_embeddings") ft.freeze_embeddings = parse_bool(full(), value);
        else if (key == "optimizer") ft.optimizer = value;
        else if (key == "loss") ft.loss = value;
        else throw ConfigError("unknown config key: " + full());
        return;
    }
    if (section == "image.finetune") {
        auto& ft = config.image_finetune;
        if (key == "epochs") ft.epochs = parse_int(full(), value);
        else if (key == "batch_size") ft.batch_size = parse_int(full(), value);
        else if (key == "input_side") ft.input_side = parse_int(full(), value);
        else if (key == "learning_rate") ft.learning_rate = parse_double(full(), value);
        else if (key == "validation_split") ft.validation_split = parse_double(full(), value);
        else if (key == "freeze_base") ft.freeze_base = parse_bool(full(), value);
        else if (key == "optimizer") ft.optimizer = value;
        else if (key == "loss") ft.loss = value;
        else throw ConfigError("unknown config key: " + full());
        return;
    }
    throw ConfigError("unknown config section: [" + section + "]");
}

} // namespace

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    PipelineConfig config;
    std::string section = "pipeline";
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(path + ":" + std::to_string(line_no) + ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError(path + ":" + std::to_string(line_no) + ": empty section name");
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        try {
            set_config_key(config, section, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

void apply_override(PipelineConfig& config, const std::string& dotted_key,
                    const std::string& value) {
    size_t dot = dotted_key.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == dotted_key.size())
        throw ConfigError("override key must look like section.key, got '" + dotted_key + "'");
    set_config_key(config, dotted_key.substr(0, dot), dotted_key.substr(dot + 1), value);
}

namespace {

std::string canonical_corpus_path(const PipelineConfig& config) {
    return (fs::path(config.out_dir) / "corpus.jsonl").string();
}

CorpusIndex load_canonical_corpus(const PipelineConfig& config, const char* needed_by) {
    std::string path = canonical_corpus_path(config);
    if (!fs::exists(path))
        throw ConfigError("canonical corpus not found: " + path + " (run ingest before " +
                          needed_by + ")");
    return load_corpus(path, CorpusFormat::Jsonl).index;
}

/// Unique GIFs in first-appearance order, each with its first record (the
/// media_path source).
std::vector<const TweetRecord*> unique_gifs(const CorpusIndex& corpus) {
    std::vector<const TweetRecord*> out;
    std::set<std::string> seen;
    for (const auto& r : corpus.records) {
        if (seen.insert(r.gif_id).second) out.push_back(&r);
    }
    return out;
}

} // namespace

IngestSummary cmd_ingest(const PipelineConfig& config) {
    config.validate();
    if (config.corpus_path.empty())
        throw ConfigError("corpus_path is required for ingest (set pipeline.corpus_path)");

    CorpusFormat format =
        config.corpus_format == "csv" ? CorpusFormat::Csv : CorpusFormat::Jsonl;
    LoadResult loaded = load_corpus(config.corpus_path, format);

    fs::create_directories(config.out_dir);
    IngestSummary summary;
    summary.corpus_out = canonical_corpus_path(config);
    save_corpus(loaded.index, summary.corpus_out);
    summary.rejects_out = write_rejects(loaded.rejects, summary.corpus_out);
    summary.accepted = static_cast<int>(loaded.index.records.size());
    summary.rejected = static_cast<int>(loaded.rejects.size());

    Log::info("ingest: ", summary.accepted, " accepted, ", summary.rejected, " rejected");
    return summary;
}

FetchSummary cmd_fetch_media(const PipelineConfig& config) {
    config.validate();
    CorpusIndex corpus = load_canonical_corpus(config, "fetch-media");
    fs::create_directories(config.cache_dir);

    MediaResolveOptions options;
    options.network_fetch = config.network_fetch;
    options.url_template = config.fetch_url_template;
    options.timeout_ms = config.fetch_timeout_ms;

    FetchSummary summary;
    summary.log_out = (fs::path(config.out_dir) / "fetch_report.jsonl").string();
    std::ofstream log_out(summary.log_out, std::ios::binary);
    if (!log_out) throw ConfigError("cannot write fetch report: " + summary.log_out);

    for (const auto& rec : corpus.records) {
        TweetRecord resolved = resolve_media(rec, config.cache_dir, options);
        nlohmann::json row;
        row["record_id"] = rec.record_id;
        row["gif_id"] = rec.gif_id;
        if (resolved.media_missing) {
            ++summary.missing;
            row["status"] = "missing";
            row["cause"] = resolved.media_missing_cause;
        } else {
            ++summary.resolved;
            row["status"] = "ok";
            row["media_path"] = *resolved.media_path;
        }
        write_json(log_out, row, JsonFormat{});
        log_out << "\n";
    }
    return summary;
}

ExtractSummary cmd_extract_frames(const PipelineConfig& config) {
    config.validate();
    CorpusIndex corpus = load_canonical_corpus(config, "extract-frames");
    if (!fs::is_directory(config.cache_dir))
        throw ConfigError("media cache directory does not exist: " + config.cache_dir);

    auto gifs = unique_gifs(corpus);
    std::vector<int> ok(gifs.size(), 0);
    parallel_for(gifs.size(), config.parallelism, [&](size_t i) {
        const TweetRecord& rec = *gifs[i];
        TweetRecord resolved = resolve_media(rec, config.cache_dir);
        if (resolved.media_missing) {
            Log::warn("extract: ", rec.gif_id, ": ", resolved.media_missing_cause);
            return;
        }
        try {
            FrameSet frames = extract_frames(*resolved.media_path, config.frame_period,
                                             rec.gif_id);
            dump_frames(frames, (fs::path(config.cache_dir) / rec.gif_id).string());
            ok[i] = 1;
        } catch (const DataError& e) {
            Log::warn("extract: ", rec.gif_id, ": ", e.what());
        }
    });

    ExtractSummary summary;
    for (int v : ok) (v ? summary.extracted : summary.skipped) += 1;
    return summary;
}

ScoreSummary cmd_score(const PipelineConfig& config) {
    config.validate();
    CorpusIndex corpus = load_canonical_corpus(config, "score");
    if (!fs::is_directory(config.cache_dir))
        throw ConfigError("media cache directory does not exist: " + config.cache_dir);

    // Backend initialization failures are fatal before any scoring starts.
    auto& registry = BackendRegistry::global();
    auto text = registry.get_text(config.text_backend.name, config.text_backend.params);
    auto image = registry.get_image(config.image_backend.name, config.image_backend.params);
    auto face = registry.get_face(config.face_backend.name, config.face_backend.params);
    auto ocr = registry.get_ocr(config.ocr_backend.name, config.ocr_backend.params);

    FaceScoreOptions face_options;
    face_options.min_box_side = config.min_face_box;

    auto gifs = unique_gifs(corpus);
    struct Slot {
        bool scored = false;
        FusedSentiment fused;
        std::string skip_reason;
    };
    std::vector<Slot> slots(gifs.size());

    parallel_for(gifs.size(), config.parallelism, [&](size_t i) {
        const TweetRecord& rec = *gifs[i];
        Slot& slot = slots[i];
        TweetRecord resolved = resolve_media(rec, config.cache_dir);
        if (resolved.media_missing) {
            slot.skip_reason = resolved.media_missing_cause;
            return;
        }
        try {
            FrameSet frames = extract_frames(*resolved.media_path, config.frame_period,
                                             rec.gif_id);
            if (config.dump_frames)
                dump_frames(frames, (fs::path(config.cache_dir) / rec.gif_id).string());

            ModuleScore image_score = score_gif_images(frames, *image);
            ModuleScore face_score = score_gif_faces(frames, *face, face_options);
            ModuleScore ocr_score =
                score_caption(extract_caption(frames, *ocr), *text, config.max_text_tokens);

            slot.fused = fuse(image_score, face_score, ocr_score);
            slot.fused.gif_id = rec.gif_id;
            slot.scored = true;
        } catch (const DataError& e) {
            slot.skip_reason = e.what();
        } catch (const BackendError& e) {
            slot.skip_reason = std::string("backend: ") + e.what();
            Log::error("score: ", rec.gif_id, ": ", e.what());
        }
    });

    fs::create_directories(config.out_dir);
    ScoreSummary summary;
    summary.scores_out = (fs::path(config.out_dir) / "scores.jsonl").string();
    summary.skips_out = (fs::path(config.out_dir) / "scores.skipped.jsonl").string();

    std::ofstream scores_out(summary.scores_out, std::ios::binary);
    if (!scores_out) throw ConfigError("cannot write scores: " + summary.scores_out);
    std::ofstream skips_out(summary.skips_out, std::ios::binary);
    if (!skips_out) throw ConfigError("cannot write skips: " + summary.skips_out);

    for (size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].scored) {
            scores_out << scores_row_json(slots[i].fused) << "\n";
            ++summary.scored;
        } else {
            nlohmann::json row;
            row["gif_id"] = gifs[i]->gif_id;
            row["reason"] = slots[i].skip_reason;
            write_json(skips_out, row, JsonFormat{});
            skips_out << "\n";
            ++summary.skipped;
        }
    }
    Log::info("score: ", summary.scored, " scored, ", summary.skipped, " skipped");
    return summary;
}

namespace {

std::vector<FusedSentiment> load_scores(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("scores file not found: " + path + " (run score before analyze)");
    std::vector<FusedSentiment> out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        try {
            out.push_back(parse_scores_row(line));
        } catch (const DataError& e) {
            throw DataError(path + ":" + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

void print_report_summary(const AnalysisReport& report) {
    std::ostringstream out;
    out << "pairs: " << report.pairs
        << " (excluded for empty text: " << report.excluded_empty_text << ")\n";
    out << "combination matrix (perceived/induced): "
        << "pos/pos " << report.matrix.pos_pos << ", pos/neg " << report.matrix.pos_neg
        << ", neg/pos " << report.matrix.neg_pos << ", neg/neg " << report.matrix.neg_neg
        << "\n";
    if (report.ratio.finite)
        out << "same-to-opposing ratio: " << report.ratio.value << "\n";
    else
        out << "same-to-opposing ratio: infinite (no opposing pairs)\n";
    out << "fused-vs-induced accuracy: " << report.attributes.overall_accuracy << " over "
        << report.attributes.covered_records << " records\n";
    for (const auto& [cls, cell] : report.attributes.cells) {
        out << "  " << to_string(cls) << ": count " << cell.count << ", accuracy "
            << cell.accuracy << "\n";
    }
    std::cout << out.str();
}

} // namespace

AnalyzeSummary cmd_analyze(const PipelineConfig& config) {
    config.validate();
    CorpusIndex corpus = load_canonical_corpus(config, "analyze");
    auto scored = load_scores((fs::path(config.out_dir) / "scores.jsonl").string());

    auto text = BackendRegistry::global().get_text(config.text_backend.name,
                                                   config.text_backend.params);
    AnalysisReport report = analyze_corpus(corpus, scored, *text, config.max_text_tokens);

    AnalyzeSummary summary;
    summary.manifest = emit_report(report, (fs::path(config.out_dir) / "report").string());
    print_report_summary(report);
    return summary;
}

AnalyzeSummary cmd_report(const PipelineConfig& config) {
    config.validate();
    std::string path = (fs::path(config.out_dir) / "report" / "report.json").string();
    if (!fs::exists(path))
        throw ConfigError("report not found: " + path + " (run analyze before report)");
    AnalysisReport report = load_report(path);

    AnalyzeSummary summary;
    summary.manifest = emit_report(report, (fs::path(config.out_dir) / "report").string());
    print_report_summary(report);
    return summary;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Multimodal GIF sentiment pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir_flag, log_level_flag, corpus_flag, format_flag, cache_dir_flag;
    int parallelism_flag = 0;
    bool dump_frames_flag = false, network_flag = false;
    std::string url_template_flag;

    app.add_option("--config", config_path, "Config file (INI-style)");
    app.add_option("--out-dir", out_dir_flag, "Output directory");
    app.add_option("--parallelism", parallelism_flag, "Worker threads")
        ->check(CLI::PositiveNumber);
    app.add_option("--log-level", log_level_flag, "error, warn, info or debug");
    app.add_option("--set", overrides, "Override a config key: section.key=value")
        ->take_all();

    auto* ingest = app.add_subcommand("ingest", "Validate a corpus into canonical form");
    ingest->add_option("--corpus", corpus_flag, "Input corpus file");
    ingest->add_option("--format", format_flag, "jsonl or csv");

    auto* fetch = app.add_subcommand("fetch-media", "Resolve media into the cache");
    fetch->add_flag("--network", network_flag, "Allow HTTP downloads");
    fetch->add_option("--url-template", url_template_flag,
                      "Media URL with a {gif_id} placeholder");
    fetch->add_option("--cache-dir", cache_dir_flag, "Media cache directory");

    auto* extract = app.add_subcommand("extract-frames", "Dump sampled frames as JPEGs");
    extract->add_option("--cache-dir", cache_dir_flag, "Media cache directory");

    auto* score = app.add_subcommand("score", "Score GIF sentiment per corpus GIF");
    score->add_flag("--dump-frames", dump_frames_flag, "Also dump sampled frames");
    score->add_option("--cache-dir", cache_dir_flag, "Media cache directory");

    app.add_subcommand("analyze", "Perceived-vs-induced analysis and report");
    app.add_subcommand("report", "Re-render an existing report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        PipelineConfig config;
        if (!config_path.empty()) config = load_config(config_path);
        for (const auto& kv : overrides) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set needs section.key=value, got '" + kv + "'");
            apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!out_dir_flag.empty()) config.out_dir = out_dir_flag;
        if (!cache_dir_flag.empty()) config.cache_dir = cache_dir_flag;
        if (parallelism_flag > 0) config.parallelism = parallelism_flag;
        if (!log_level_flag.empty()) config.log_level = log_level_flag;
        if (!corpus_flag.empty()) config.corpus_path = corpus_flag;
        if (!format_flag.empty()) config.corpus_format = format_flag;
        if (dump_frames_flag) config.dump_frames = true;
        if (network_flag) config.network_fetch = true;
        if (!url_template_flag.empty()) config.fetch_url_template = url_template_flag;

        try {
            Log::set_level(Log::parse_level(config.log_level));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }

        if (ingest->parsed()) {
            IngestSummary s = cmd_ingest(config);
            std::cout << "ingest: " << s.accepted << " accepted, " << s.rejected
                      << " rejected\n" << "corpus: " << s.corpus_out << "\n"
                      << "rejects: " << s.rejects_out << "\n";
        } else if (fetch->parsed()) {
            FetchSummary s = cmd_fetch_media(config);
            std::cout << "fetch-media: " << s.resolved << " resolved, " << s.missing
                      << " missing\n" << "log: " << s.log_out << "\n";
        } else if (extract->parsed()) {
            ExtractSummary s = cmd_extract_frames(config);
            std::cout << "extract-frames: " << s.extracted << " extracted, " << s.skipped
                      << " skipped\n";
        } else if (score->parsed()) {
            ScoreSummary s = cmd_score(config);
            std::cout << "score: " << s.scored << " scored, " << s.skipped << " skipped\n"
                      << "scores: " << s.scores_out << "\n";
        } else if (app.get_subcommand("analyze")->parsed()) {
            AnalyzeSummary s = cmd_analyze(config);
            for (const auto& f : s.manifest) std::cout << "wrote: " << f << "\n";
        } else if (app.get_subcommand("report")->parsed()) {
            AnalyzeSummary s = cmd_report(config);
            for (const auto& f : s.manifest) std::cout << "wrote: " << f << "\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace gifsent

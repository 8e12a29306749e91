// Acceptance gate for the toolkit. Each criterion prints exactly one
// PASS/FAIL/SKIP line; the process exits nonzero when anything failed.
//
//   1  end-to-end oracle equivalence on the 12-gif fixture corpus
//   2  fusion property suite (10,000 randomized tuples)
//   3  constant-period frame sampling counts and timestamps
//   4  emotion polarity and renormalization properties
//   5  analytics oracle (combination matrix, ratio, attribute report)
//   6  real dataset statistics (skipped when the metadata file is absent)
//   7  full-scale accuracy figures: excluded by design, configs+runbook ship
//   8  determinism: rerun produces byte-identical outputs

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gifsent/analytics.hpp"
#include "gifsent/backends.hpp"
#include "gifsent/cli.hpp"
#include "gifsent/corpus.hpp"
#include "gifsent/face_emotion.hpp"
#include "gifsent/frames.hpp"
#include "gifsent/fusion.hpp"
#include "gifsent/image_sentiment.hpp"
#include "gifsent/text_sentiment.hpp"

#include "avi_writer.hpp"
#include "fixture_media.hpp"
#include "test_util.hpp"

using namespace gifsent;
using namespace gifsent::testsupport;

namespace {

int g_failed = 0;

void emit(int criterion, const char* status, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", status, criterion, detail.c_str());
    std::fflush(stdout);
}

void pass(int criterion, const std::string& detail) { emit(criterion, "PASS", detail); }
void fail(int criterion, const std::string& detail) {
    emit(criterion, "FAIL", detail);
    ++g_failed;
}
void skip(int criterion, const std::string& detail) { emit(criterion, "SKIP", detail); }

template <typename Fn>
void guarded(int criterion, Fn fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        fail(criterion, std::string("threw: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- fixture pipeline ------------------------------------------------------

struct PipelineRun {
    PipelineConfig config;
    std::string root;
    IngestSummary ingest;
    ScoreSummary score;
    AnalyzeSummary analyze;
    double seconds = 0.0;
};

PipelineRun run_fixture_pipeline() {
    PipelineRun run;
    run.root = fresh_dir("acceptance");
    std::string cache = run.root + "/cache";
    materialize_fixture_media(fixture_path("fixture.json"), cache);

    PipelineConfig& c = run.config;
    c.corpus_path = fixture_path("corpus_12.jsonl");
    c.cache_dir = cache;
    c.out_dir = run.root + "/out";
    c.parallelism = 4;
    c.face_backend.params["script"] = fixture_path("fixture.json");
    c.ocr_backend.params["script"] = fixture_path("fixture.json");

    auto t0 = std::chrono::steady_clock::now();
    run.ingest = cmd_ingest(c);
    run.score = cmd_score(c);
    run.analyze = cmd_analyze(c);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

// ---- oracle table ----------------------------------------------------------

struct OracleRow {
    std::string gif_id;
    double image_score = 0.0;
    int image_evidence = 0;
    bool face_available = false;
    double face_score = 0.0;
    int face_evidence = 0;
    bool ocr_available = false;
    double ocr_score = 0.0;
    int ocr_evidence = 0;
    double fused_score = 0.0;
    int label = 0;
    std::string attribute_class;
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<OracleRow> load_oracle_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open oracle table: " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<OracleRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 12) throw std::runtime_error("bad oracle row: " + line);
        OracleRow r;
        r.gif_id = f[0];
        r.image_score = std::stod(f[1]);
        r.image_evidence = std::stoi(f[2]);
        r.face_available = f[3] == "1";
        if (!f[4].empty()) r.face_score = std::stod(f[4]);
        r.face_evidence = std::stoi(f[5]);
        r.ocr_available = f[6] == "1";
        if (!f[7].empty()) r.ocr_score = std::stod(f[7]);
        r.ocr_evidence = std::stoi(f[8]);
        r.fused_score = std::stod(f[9]);
        r.label = std::stoi(f[10]);
        r.attribute_class = f[11];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<FusedSentiment> load_score_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scores: " + path);
    std::vector<FusedSentiment> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(parse_scores_row(line));
    }
    return rows;
}

bool module_matches(const ModuleScore& got, bool available, double score, int evidence,
                    const std::string& gif_id, const char* name, std::string& why) {
    if (got.available != available) {
        why = gif_id + ": " + name + " availability is " + (got.available ? "1" : "0");
        return false;
    }
    if (got.evidence_count != evidence) {
        why = gif_id + ": " + name + " evidence " + std::to_string(got.evidence_count) +
              " != " + std::to_string(evidence);
        return false;
    }
    if (available && std::fabs(got.score - score) > 1e-9) {
        why = gif_id + ": " + name + " score " + fmt(got.score) + " != " + fmt(score);
        return false;
    }
    return true;
}

void criterion_1(const PipelineRun& run) {
    if (run.ingest.accepted != 12 || run.ingest.rejected != 0) {
        fail(1, "ingest accepted " + std::to_string(run.ingest.accepted) + ", rejected " +
                    std::to_string(run.ingest.rejected) + " (want 12/0)");
        return;
    }
    if (run.score.scored != 12 || run.score.skipped != 0) {
        fail(1, "scored " + std::to_string(run.score.scored) + ", skipped " +
                    std::to_string(run.score.skipped) + " (want 12/0)");
        return;
    }
    auto oracle = load_oracle_scores(fixture_path("oracle_scores.csv"));
    auto got = load_score_rows(run.score.scores_out);
    if (got.size() != oracle.size()) {
        fail(1, "score rows " + std::to_string(got.size()) + " != " + std::to_string(oracle.size()));
        return;
    }
    std::string why;
    for (size_t i = 0; i < oracle.size() && why.empty(); ++i) {
        const auto& want = oracle[i];
        const auto& row = got[i];
        if (row.gif_id != want.gif_id) {
            why = "row " + std::to_string(i) + " is " + row.gif_id + ", want " + want.gif_id;
        } else if (!module_matches(row.image, true, want.image_score, want.image_evidence,
                                   want.gif_id, "image", why) ||
                   !module_matches(row.face, want.face_available, want.face_score,
                                   want.face_evidence, want.gif_id, "face", why) ||
                   !module_matches(row.ocr, want.ocr_available, want.ocr_score,
                                   want.ocr_evidence, want.gif_id, "ocr", why)) {
            // why already set
        } else if (std::fabs(row.fused_score - want.fused_score) > 1e-9) {
            why = want.gif_id + ": fused " + fmt(row.fused_score) + " != " + fmt(want.fused_score);
        } else if (row.label != want.label) {
            why = want.gif_id + ": label " + std::to_string(row.label) + " != " +
                  std::to_string(want.label);
        } else if (to_string(row.attribute_class) != want.attribute_class) {
            why = want.gif_id + ": class " + to_string(row.attribute_class) + " != " +
                  want.attribute_class;
        }
    }
    if (run.seconds >= 10.0) {
        why = "pipeline took " + fmt(run.seconds) + "s (budget 10s)";
    }
    if (why.empty()) {
        char detail[160];
        std::snprintf(detail, sizeof(detail),
                      "12/12 gifs match the committed oracle table (labels exact, scores "
                      "within 1e-9), pipeline ran in %.2fs",
                      run.seconds);
        pass(1, detail);
    } else {
        fail(1, why);
    }
}

// ---- fusion properties -----------------------------------------------------

ModuleScore module(Modality m, bool available, double score, int evidence) {
    ModuleScore s;
    s.modality = m;
    s.available = available;
    s.score = score;
    s.evidence_count = available ? evidence : 0;
    return s;
}

void criterion_2() {
    std::mt19937 rng(20260817u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> evidence(1, 40);
    std::uniform_int_distribution<int> bit(0, 1);

    int violations = 0;
    std::string first;
    auto note = [&](const std::string& what) {
        if (violations == 0) first = what;
        ++violations;
    };

    for (int i = 0; i < 10000; ++i) {
        double si = unit(rng), sf = unit(rng), so = unit(rng);
        bool face_on = bit(rng) == 1, ocr_on = bit(rng) == 1;
        auto img = module(Modality::Image, true, si, evidence(rng));
        auto face = module(Modality::Face, face_on, sf, evidence(rng));
        auto ocr = module(Modality::Ocr, ocr_on, so, evidence(rng));
        auto fused = fuse(img, face, ocr);

        double lo = si, hi = si;
        if (face_on) { lo = std::min(lo, sf); hi = std::max(hi, sf); }
        if (ocr_on) { lo = std::min(lo, so); hi = std::max(hi, so); }
        if (fused.fused_score < lo - 1e-12 || fused.fused_score > hi + 1e-12)
            note("mean bounds at tuple " + std::to_string(i));
        if ((fused.fused_score >= 0.5) != (fused.label == 1))
            note("threshold rule at tuple " + std::to_string(i));

        // swapping the two optional slots must not move the mean
        auto face_swapped = module(Modality::Face, ocr_on, so, ocr.evidence_count);
        auto ocr_swapped = module(Modality::Ocr, face_on, sf, face.evidence_count);
        auto swapped = fuse(img, face_swapped, ocr_swapped);
        if (std::fabs(swapped.fused_score - fused.fused_score) > 1e-12)
            note("permutation invariance at tuple " + std::to_string(i));

        // the score field of an unavailable module must not leak into the mean
        auto face_junk = face;
        auto ocr_junk = ocr;
        if (!face_on) face_junk.score = unit(rng);
        if (!ocr_on) ocr_junk.score = unit(rng);
        auto rejunked = fuse(img, face_junk, ocr_junk);
        if (rejunked.fused_score != fused.fused_score || rejunked.label != fused.label)
            note("unavailable-module exclusion at tuple " + std::to_string(i));

        AttributeClass want = face_on
                                  ? (ocr_on ? AttributeClass::FaceYes_OcrYes
                                            : AttributeClass::FaceYes_OcrNo)
                                  : (ocr_on ? AttributeClass::FaceNo_OcrYes
                                            : AttributeClass::FaceNo_OcrNo);
        if (fused.attribute_class != want) note("attribute class at tuple " + std::to_string(i));
    }

    auto none = module(Modality::Face, false, 0.0, 0);
    auto none_ocr = module(Modality::Ocr, false, 0.0, 0);
    auto tie = fuse(module(Modality::Image, true, 0.5, 1), none, none_ocr);
    if (tie.label != 1) note("tie rule: image-only 0.5 labeled negative");
    auto tie2 = fuse(module(Modality::Image, true, 0.3, 1),
                     module(Modality::Face, true, 0.7, 1), none_ocr);
    if (tie2.fused_score != 0.5 || tie2.label != 1) note("tie rule: (0.3+0.7)/2 case");
    auto below = fuse(module(Modality::Image, true, 0.49999999, 1), none, none_ocr);
    if (below.label != 0) note("threshold: 0.49999999 labeled positive");

    if (violations == 0)
        pass(2, "10000 randomized tuples: bounds, permutation, exclusion and tie rule all hold");
    else
        fail(2, std::to_string(violations) + " violations, first: " + first);
}

// ---- frame sampling --------------------------------------------------------

void criterion_3() {
    std::string dir = fresh_dir("acceptance_sampling");
    const int source_frames[] = {1, 5, 20, 60, 61};
    const size_t expected[] = {1, 3, 10, 30, 31};
    std::string why;
    for (size_t k = 0; k < 5 && why.empty(); ++k) {
        std::vector<Image> frames;
        for (int i = 0; i < source_frames[k]; ++i)
            frames.emplace_back(32, 24, 3, static_cast<uint8_t>(i * 3 % 251));
        std::string path = dir + "/clip" + std::to_string(source_frames[k]) + ".avi";
        write_avi(path, frames, 20);
        auto fs = extract_frames(path, 0.1, "clip");
        if (fs.frames.size() != expected[k]) {
            why = std::to_string(source_frames[k]) + " frames at 20fps sampled " +
                  std::to_string(fs.frames.size()) + " != " + std::to_string(expected[k]);
            break;
        }
        for (size_t j = 0; j < fs.frames.size(); ++j) {
            if (fs.frames[j].timestamp != 0.1 * static_cast<double>(j)) {
                why = "timestamp " + std::to_string(j) + " is " + fmt(fs.frames[j].timestamp);
                break;
            }
        }
    }
    if (why.empty())
        pass(3, "durations {0.05,0.25,1,3,3.05}s at period 0.1s sample {1,3,10,30,31} frames "
                "with exact k*0.1 timestamps");
    else
        fail(3, why);
}

// ---- emotion polarity ------------------------------------------------------

void criterion_4() {
    std::mt19937 rng(41u);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    const std::array<const char*, 6> labels = {"happy", "surprise", "sad",
                                               "angry", "fear",     "disgust"};
    int violations = 0;
    std::string first;
    auto note = [&](const std::string& what) {
        if (violations == 0) first = what;
        ++violations;
    };

    for (int i = 0; i < 1000; ++i) {
        std::array<double, 6> raw{};
        RawEmotionMap six;
        for (size_t j = 0; j < 6; ++j) {
            raw[j] = mass(rng);
            six[labels[j]] = raw[j];
        }
        RawEmotionMap with_extra = six;
        with_extra["neutral"] = 2.0 * mass(rng);  // class outside the model

        auto base = normalize_emotions(six);
        auto dropped = normalize_emotions(with_extra);

        for (const auto* dist : {&base, &dropped}) {
            double pos = positive_mass(*dist);
            double neg = (*dist)[Emotion::Sad] + (*dist)[Emotion::Angry] +
                         (*dist)[Emotion::Fear] + (*dist)[Emotion::Disgust];
            if (std::fabs(pos + neg - 1.0) > 1e-9)
                note("mass sum " + fmt(pos + neg) + " at sample " + std::to_string(i));
        }
        // dropping the extra class must leave pairwise ratios intact
        for (size_t a = 0; a < 6; ++a) {
            for (size_t b = a + 1; b < 6; ++b) {
                double got = dropped[kAllEmotions[a]] / dropped[kAllEmotions[b]];
                double want = raw[a] / raw[b];
                if (std::fabs(got - want) > 1e-9)
                    note(std::string("ratio ") + labels[a] + "/" + labels[b] + " drifted at sample " +
                         std::to_string(i));
            }
        }
    }

    if (violations == 0)
        pass(4, "1000 random distributions: positive+negative mass == 1 and drop-and-renormalize "
                "preserves pairwise ratios (1e-9)");
    else
        fail(4, std::to_string(violations) + " violations, first: " + first);
}

// ---- analytics oracle ------------------------------------------------------

void criterion_5(const PipelineRun& run) {
    auto report = load_report(run.config.out_dir + "/report/report.json");

    // brute-force recount straight from the raw fixture corpus
    auto loaded = load_corpus(fixture_path("corpus_12.jsonl"), CorpusFormat::Jsonl);
    auto text = mock_text_backend();
    CombinationMatrix brute;
    int excluded = 0;
    for (const auto& rec : loaded.index.records) {
        auto clean = preprocess_tweet(rec.tweet_text);
        if (clean.empty()) {
            ++excluded;
            continue;
        }
        int perceived = classify_text(clean, *text) >= 0.5 ? 1 : 0;
        if (perceived == 1 && rec.induced_label == 1) ++brute.pos_pos;
        else if (perceived == 1) ++brute.pos_neg;
        else if (rec.induced_label == 1) ++brute.neg_pos;
        else ++brute.neg_neg;
    }

    std::string why;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok && why.empty()) why = what;
    };

    expect(brute.pos_pos == 3 && brute.pos_neg == 2 && brute.neg_pos == 3 && brute.neg_neg == 3,
           "brute-force matrix (" + std::to_string(brute.pos_pos) + "," +
               std::to_string(brute.pos_neg) + "," + std::to_string(brute.neg_pos) + "," +
               std::to_string(brute.neg_neg) + ") != (3,2,3,3)");
    expect(report.matrix.pos_pos == brute.pos_pos && report.matrix.pos_neg == brute.pos_neg &&
               report.matrix.neg_pos == brute.neg_pos && report.matrix.neg_neg == brute.neg_neg,
           "report matrix disagrees with the brute-force recount");
    expect(report.ratio.finite && std::fabs(report.ratio.value - 1.2) <= 1e-12,
           "same/opposing ratio " + fmt(report.ratio.value) + " != 1.2");
    expect(report.pairs == 11, "pairs " + std::to_string(report.pairs) + " != 11");
    expect(report.excluded_empty_text == 1 && excluded == 1,
           "excluded-empty-text " + std::to_string(report.excluded_empty_text) + " != 1");
    expect(report.perceived_positive == 5,
           "perceived positive " + std::to_string(report.perceived_positive) + " != 5");
    // report.json stores nine significant digits, so loaded values carry up
    // to ~5e-10 of rounding; compare at the 1e-9 score tolerance.
    expect(std::fabs(report.attributes.overall_accuracy - 10.0 / 12.0) <= 1e-9,
           "overall accuracy " + fmt(report.attributes.overall_accuracy) + " != 10/12");

    struct CellWant {
        AttributeClass cls;
        int count;
        double accuracy;
    };
    const CellWant cells[] = {
        {AttributeClass::FaceYes_OcrYes, 4, 0.75},
        {AttributeClass::FaceYes_OcrNo, 3, 1.0},
        {AttributeClass::FaceNo_OcrYes, 3, 2.0 / 3.0},
        {AttributeClass::FaceNo_OcrNo, 2, 1.0},
    };
    for (const auto& want : cells) {
        auto it = report.attributes.cells.find(want.cls);
        expect(it != report.attributes.cells.end(),
               std::string("cell ") + to_string(want.cls) + " missing");
        if (it == report.attributes.cells.end()) continue;
        expect(it->second.count == want.count,
               std::string(to_string(want.cls)) + " count " + std::to_string(it->second.count) +
                   " != " + std::to_string(want.count));
        expect(std::fabs(it->second.accuracy - want.accuracy) <= 1e-9,
               std::string(to_string(want.cls)) + " accuracy " + fmt(it->second.accuracy));
        expect(std::fabs(it->second.fraction - want.count / 12.0) <= 1e-9,
               std::string(to_string(want.cls)) + " fraction " + fmt(it->second.fraction));
    }

    // partition shape on a synthetic 5/3/1/1 split
    std::vector<FusedSentiment> synth;
    auto add = [&](AttributeClass cls, int n) {
        for (int i = 0; i < n; ++i) {
            FusedSentiment f;
            f.gif_id = std::string(to_string(cls)) + std::to_string(i);
            f.attribute_class = cls;
            synth.push_back(f);
        }
    };
    add(AttributeClass::FaceYes_OcrYes, 5);
    add(AttributeClass::FaceYes_OcrNo, 3);
    add(AttributeClass::FaceNo_OcrYes, 1);
    add(AttributeClass::FaceNo_OcrNo, 1);
    auto part = attribute_partition(synth);
    expect(part[AttributeClass::FaceYes_OcrYes] == 0.5 &&
               part[AttributeClass::FaceYes_OcrNo] == 0.3 &&
               part[AttributeClass::FaceNo_OcrYes] == 0.1 &&
               part[AttributeClass::FaceNo_OcrNo] == 0.1,
           "5/3/1/1 partition is not exactly (0.5,0.3,0.1,0.1)");

    if (why.empty())
        pass(5, "matrix (3,2,3,3) matches a brute-force recount, ratio 1.2, attribute report and "
                "partition exact");
    else
        fail(5, why);
}

// ---- real dataset statistics -----------------------------------------------

void criterion_6() {
    const std::string base = GIFSENT_DATA_DIR;
    std::string path;
    CorpusFormat format = CorpusFormat::Jsonl;
    if (std::filesystem::exists(base + "/reactiongif.jsonl")) {
        path = base + "/reactiongif.jsonl";
    } else if (std::filesystem::exists(base + "/reactiongif.csv")) {
        path = base + "/reactiongif.csv";
        format = CorpusFormat::Csv;
    } else {
        skip(6, "real dataset metadata not present (" + base +
                    "/reactiongif.{jsonl,csv}); statistics not checked");
        return;
    }
    auto loaded = load_corpus(path, format);
    auto stats = corpus_stats(loaded.index);
    std::string why;
    if (stats.distinct_tweet_count != 17714)
        why = "distinct tweets " + std::to_string(stats.distinct_tweet_count) + " != 17714";
    else if (stats.unique_gif_count != 18976)
        why = "unique gifs " + std::to_string(stats.unique_gif_count) + " != 18976";
    else if (std::fabs(stats.single_reaction_fraction - 15731.0 / 17714.0) > 1e-12)
        why = "single-reaction fraction " + fmt(stats.single_reaction_fraction) +
              " != 15731/17714";
    else if (stats.max_reactions_per_tweet != 330)
        why = "max reactions " + std::to_string(stats.max_reactions_per_tweet) + " != 330";
    if (why.empty())
        pass(6, "dataset statistics match: 17714 tweets, 18976 gifs, 15731/17714 single-reaction, "
                "max 330");
    else
        fail(6, why);
}

// ---- full-scale figures shipped as configs + runbook -------------------------

void criterion_7() {
    // The published accuracy figures need trained production backends, the
    // full media cache and live tweets, so they cannot run here. What the
    // repo must ship instead: the exact training recipes and a runbook.
    auto repo_root = std::filesystem::path(GIFSENT_DATA_DIR).parent_path();
    bool runbook = std::filesystem::exists(repo_root / "docs" / "runbook.md");

    TextFineTuneConfig text;
    ImageFineTuneConfig image;
    text.validate();
    image.validate();
    bool text_ok = text.epochs == 3 && text.batch_size == 32 && text.max_seq_len == 50 &&
                   text.encoder_lr == 0.01 && text.rest_lr == 2e-5 && text.freeze_embeddings &&
                   text.optimizer == "adam" && text.loss == "mse";
    bool image_ok = image.epochs == 3 && image.batch_size == 32 && image.input_side == 48 &&
                    image.learning_rate == 1e-4 && image.validation_split == 0.2 &&
                    image.freeze_base && image.optimizer == "adam" &&
                    image.loss == "categorical_crossentropy";

    if (runbook && text_ok && image_ok)
        pass(7, "full-scale accuracy figures excluded by design; training configs and "
                "docs/runbook.md ship in their place");
    else if (!runbook)
        fail(7, "docs/runbook.md is missing");
    else
        fail(7, std::string("default fine-tune config drifted from the documented recipe (") +
                    (text_ok ? "image" : "text") + ")");
}

// ---- determinism -----------------------------------------------------------

void criterion_8(const PipelineRun& run) {
    std::string scores_path = run.config.out_dir + "/scores.jsonl";
    std::string report_path = run.config.out_dir + "/report/report.json";
    std::string scores_a = read_file(scores_path);
    std::string report_a = read_file(report_path);

    PipelineConfig again = run.config;
    again.parallelism = 1;  // determinism must not depend on the worker count
    cmd_score(again);
    cmd_analyze(again);

    bool scores_same = read_file(scores_path) == scores_a;
    bool report_same = read_file(report_path) == report_a;
    if (scores_same && report_same)
        pass(8, "rerun (parallelism 4 then 1) produced byte-identical scores.jsonl and report.json");
    else
        fail(8, std::string(scores_same ? "report.json" : "scores.jsonl") + " changed between runs");
}

}  // namespace

int main() {
    std::printf("gifsent acceptance suite\n");

    PipelineRun run;
    bool pipeline_ok = false;
    std::string pipeline_err;
    try {
        run = run_fixture_pipeline();
        pipeline_ok = true;
    } catch (const std::exception& e) {
        pipeline_err = e.what();
    }

    if (pipeline_ok)
        guarded(1, [&] { criterion_1(run); });
    else
        fail(1, "fixture pipeline threw: " + pipeline_err);
    guarded(2, [] { criterion_2(); });
    guarded(3, [] { criterion_3(); });
    guarded(4, [] { criterion_4(); });
    if (pipeline_ok)
        guarded(5, [&] { criterion_5(run); });
    else
        fail(5, "fixture pipeline threw: " + pipeline_err);
    guarded(6, [] { criterion_6(); });
    guarded(7, [] { criterion_7(); });
    if (pipeline_ok)
        guarded(8, [&] { criterion_8(run); });
    else
        fail(8, "fixture pipeline threw: " + pipeline_err);

    if (g_failed == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}

#include "gifsent/analytics.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

#include "charts.hpp"
#include "gifsent/jsonio.hpp"
#include "gifsent/text_sentiment.hpp"

namespace gifsent {

namespace fs = std::filesystem;

int perceived_sentiment(const TweetRecord& record, const TextSentimentBackend& backend,
                        int max_tokens) {
    CleanText clean = preprocess_tweet(record.tweet_text);
    double score = classify_text(clean, backend, max_tokens);
    return score >= 0.5 ? 1 : 0;
}

CombinationMatrix combination_matrix(const std::vector<SentimentPair>& pairs) {
    CombinationMatrix m;
    for (const auto& p : pairs) {
        if (p.perceived == 1)
            (p.induced == 1 ? m.pos_pos : m.pos_neg) += 1;
        else
            (p.induced == 1 ? m.neg_pos : m.neg_neg) += 1;
    }
    return m;
}

RatioResult same_to_opposing(const CombinationMatrix& matrix) {
    RatioResult r;
    if (matrix.opposing() == 0) {
        r.finite = false;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    r.value = static_cast<double>(matrix.same()) / static_cast<double>(matrix.opposing());
    return r;
}

AttributeReport attribute_accuracy(const std::vector<FusedSentiment>& scored,
                                   const std::vector<TweetRecord>& records) {
    std::map<std::string, const FusedSentiment*> by_gif;
    for (const auto& f : scored) by_gif[f.gif_id] = &f;

    AttributeReport report;
    for (AttributeClass c : kAllAttributeClasses) report.cells[c] = {};

    for (const auto& rec : records) {
        auto it = by_gif.find(rec.gif_id);
        if (it == by_gif.end()) {
            ++report.uncovered_records;
            continue;
        }
        ++report.covered_records;
        auto& cell = report.cells[it->second->attribute_class];
        ++cell.count;
        if (it->second->label == rec.induced_label) {
            ++cell.correct;
            ++report.correct_records;
        }
    }
    for (auto& [cls, cell] : report.cells) {
        if (report.covered_records > 0)
            cell.fraction = static_cast<double>(cell.count) / report.covered_records;
        if (cell.count > 0)
            cell.accuracy = static_cast<double>(cell.correct) / cell.count;
    }
    if (report.covered_records > 0)
        report.overall_accuracy =
            static_cast<double>(report.correct_records) / report.covered_records;
    return report;
}

AnalysisReport analyze_corpus(const CorpusIndex& corpus,
                              const std::vector<FusedSentiment>& scored,
                              const TextSentimentBackend& text_backend,
                              int max_tokens) {
    AnalysisReport report;
    report.corpus = corpus_stats(corpus);  // throws on empty corpus

    std::set<std::string> corpus_gifs;
    for (const auto& r : corpus.records) corpus_gifs.insert(r.gif_id);
    for (const auto& f : scored) {
        if (!corpus_gifs.count(f.gif_id))
            throw DataError("score references a gif absent from the corpus: " + f.gif_id);
    }

    std::vector<SentimentPair> pairs;
    for (const auto& rec : corpus.records) {
        try {
            int perceived = perceived_sentiment(rec, text_backend, max_tokens);
            pairs.push_back({rec.record_id, perceived, rec.induced_label});
        } catch (const DataError&) {
            ++report.excluded_empty_text;
        }
    }
    report.pairs = static_cast<int>(pairs.size());
    report.matrix = combination_matrix(pairs);
    report.ratio = same_to_opposing(report.matrix);
    report.perceived_positive = report.matrix.pos_pos + report.matrix.pos_neg;
    report.induced_positive = report.matrix.pos_pos + report.matrix.neg_pos;

    report.attributes = attribute_accuracy(scored, corpus.records);
    report.scored_gifs = static_cast<int>(scored.size());
    if (!scored.empty()) {
        report.partition = attribute_partition(scored);
    } else {
        for (AttributeClass c : kAllAttributeClasses) report.partition[c] = 0.0;
    }
    return report;
}

namespace {

nlohmann::json report_to_json(const AnalysisReport& report) {
    nlohmann::json doc;
    doc["pairs"] = report.pairs;
    doc["excluded_empty_text"] = report.excluded_empty_text;
    doc["perceived_positive"] = report.perceived_positive;
    doc["induced_positive"] = report.induced_positive;
    doc["scored_gifs"] = report.scored_gifs;

    doc["combination_matrix"] = {{"pos_pos", report.matrix.pos_pos},
                                 {"pos_neg", report.matrix.pos_neg},
                                 {"neg_pos", report.matrix.neg_pos},
                                 {"neg_neg", report.matrix.neg_neg}};
    if (report.ratio.finite)
        doc["same_to_opposing_ratio"] = report.ratio.value;
    else
        doc["same_to_opposing_ratio"] = nullptr;

    nlohmann::json cells = nlohmann::json::object();
    for (const auto& [cls, cell] : report.attributes.cells) {
        cells[to_string(cls)] = {{"count", cell.count},
                                 {"correct", cell.correct},
                                 {"fraction", cell.fraction},
                                 {"accuracy", cell.accuracy}};
    }
    doc["attribute_accuracy"] = cells;
    doc["overall_accuracy"] = report.attributes.overall_accuracy;
    doc["covered_records"] = report.attributes.covered_records;
    doc["uncovered_records"] = report.attributes.uncovered_records;

    nlohmann::json partition = nlohmann::json::object();
    for (const auto& [cls, frac] : report.partition) partition[to_string(cls)] = frac;
    doc["attribute_partition"] = partition;

    doc["corpus_stats"] = {
        {"record_count", report.corpus.record_count},
        {"distinct_tweet_count", report.corpus.distinct_tweet_count},
        {"unique_gif_count", report.corpus.unique_gif_count},
        {"single_reaction_fraction", report.corpus.single_reaction_fraction},
        {"max_reactions_per_tweet", report.corpus.max_reactions_per_tweet}};
    return doc;
}

} // namespace

std::vector<std::string> emit_report(const AnalysisReport& report, const std::string& out_dir) {
    fs::create_directories(out_dir);

    std::string matrix_png = (fs::path(out_dir) / "combination_matrix.png").string();
    render_bar_chart(matrix_png, "Perceived vs induced sentiment combinations",
                     {{"pos/pos", report.matrix.pos_pos},
                      {"pos/neg", report.matrix.pos_neg},
                      {"neg/pos", report.matrix.neg_pos},
                      {"neg/neg", report.matrix.neg_neg}},
                     std::max({report.matrix.pos_pos, report.matrix.pos_neg,
                               report.matrix.neg_pos, report.matrix.neg_neg, 1}));

    std::string accuracy_png = (fs::path(out_dir) / "attribute_accuracy.png").string();
    std::vector<std::pair<std::string, double>> accuracy_bars;
    for (const auto& [cls, cell] : report.attributes.cells)
        accuracy_bars.emplace_back(to_string(cls), cell.accuracy);
    render_bar_chart(accuracy_png, "Fused label accuracy by modality availability",
                     accuracy_bars, 1.0);

    std::string report_path = (fs::path(out_dir) / "report.json").string();
    {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw DataError("cannot write report: " + report_path);
        write_json(out, report_to_json(report), JsonFormat{9});
        out << "\n";
    }

    std::vector<std::string> manifest = {matrix_png, accuracy_png, report_path};
    std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
    {
        std::ofstream out(manifest_path, std::ios::binary);
        if (!out) throw DataError("cannot write manifest: " + manifest_path);
        nlohmann::json doc;
        doc["files"] = manifest;
        write_json(out, doc, JsonFormat{});
        out << "\n";
    }
    return manifest;
}

AnalysisReport load_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open report: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("report is not valid JSON: " + path + ": " + e.what());
    }

    AnalysisReport report;
    try {
        report.pairs = doc.at("pairs").get<int>();
        report.excluded_empty_text = doc.at("excluded_empty_text").get<int>();
        report.perceived_positive = doc.at("perceived_positive").get<int>();
        report.induced_positive = doc.at("induced_positive").get<int>();
        report.scored_gifs = doc.at("scored_gifs").get<int>();

        const auto& m = doc.at("combination_matrix");
        report.matrix.pos_pos = m.at("pos_pos").get<int>();
        report.matrix.pos_neg = m.at("pos_neg").get<int>();
        report.matrix.neg_pos = m.at("neg_pos").get<int>();
        report.matrix.neg_neg = m.at("neg_neg").get<int>();
        if (doc.at("same_to_opposing_ratio").is_null()) {
            report.ratio.finite = false;
            report.ratio.value = std::numeric_limits<double>::infinity();
        } else {
            report.ratio.value = doc.at("same_to_opposing_ratio").get<double>();
        }

        for (const auto& [name, cell] : doc.at("attribute_accuracy").items()) {
            AttributeCellStats stats;
            stats.count = cell.at("count").get<int>();
            stats.correct = cell.at("correct").get<int>();
            stats.fraction = cell.at("fraction").get<double>();
            stats.accuracy = cell.at("accuracy").get<double>();
            report.attributes.cells[attribute_class_from_string(name)] = stats;
        }
        report.attributes.overall_accuracy = doc.at("overall_accuracy").get<double>();
        report.attributes.covered_records = doc.at("covered_records").get<int>();
        report.attributes.uncovered_records = doc.at("uncovered_records").get<int>();
        report.attributes.correct_records = static_cast<int>(std::lround(
            report.attributes.overall_accuracy * report.attributes.covered_records));

        for (const auto& [name, frac] : doc.at("attribute_partition").items())
            report.partition[attribute_class_from_string(name)] = frac.get<double>();

        const auto& cs = doc.at("corpus_stats");
        report.corpus.record_count = cs.at("record_count").get<int>();
        report.corpus.distinct_tweet_count = cs.at("distinct_tweet_count").get<int>();
        report.corpus.unique_gif_count = cs.at("unique_gif_count").get<int>();
        report.corpus.single_reaction_fraction = cs.at("single_reaction_fraction").get<double>();
        report.corpus.max_reactions_per_tweet = cs.at("max_reactions_per_tweet").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("report is missing fields: " + path + ": " + e.what());
    }
    return report;
}

} // namespace gifsent

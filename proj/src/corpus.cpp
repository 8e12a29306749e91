#include "gifsent/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gifsent/jsonio.hpp"
#include "gifsent/log.hpp"

namespace gifsent {

// Defined in media_fetch.cpp. Downloads into the cache; returns an empty
// string on success, else the failure cause.
std::string fetch_media_http(const std::string& gif_id, const std::string& cache_dir,
                             const MediaResolveOptions& options);

namespace {

namespace fs = std::filesystem;

const char* kMediaExtensions[] = {".mp4", ".avi", ".gif"};

void finalize_counts(CorpusIndex& index) {
    std::set<std::string> tweets, gifs;
    for (const auto& r : index.records) {
        tweets.insert(r.tweet_id);
        gifs.insert(r.gif_id);
    }
    index.distinct_tweet_count = static_cast<int>(tweets.size());
    index.unique_gif_count = static_cast<int>(gifs.size());
}

/// Validates one parsed JSON object into a record. Returns an error message
/// or empty on success.
std::string record_from_json(const nlohmann::json& row, TweetRecord& out) {
    if (!row.is_object()) return "row is not a JSON object";
    for (const char* key : {"record_id", "tweet_id", "tweet_text", "gif_id"}) {
        if (!row.contains(key)) return std::string("missing required field: ") + key;
        if (!row[key].is_string()) return std::string("field must be a string: ") + key;
    }
    if (!row.contains("induced_label")) return "missing required field: induced_label";
    if (!row["induced_label"].is_number_integer())
        return "induced_label must be an integer";
    int label = row["induced_label"].get<int>();
    if (label != 0 && label != 1) return "induced_label must be 0 or 1";

    out.record_id = row["record_id"].get<std::string>();
    out.tweet_id = row["tweet_id"].get<std::string>();
    out.tweet_text = row["tweet_text"].get<std::string>();
    out.gif_id = row["gif_id"].get<std::string>();
    out.induced_label = label;
    if (out.record_id.empty()) return "record_id must be non-empty";
    if (out.gif_id.empty()) return "gif_id must be non-empty";

    if (row.contains("media_path")) {
        if (!row["media_path"].is_string()) return "media_path must be a string";
        std::string p = row["media_path"].get<std::string>();
        if (!p.empty()) out.media_path = p;
    }
    if (row.contains("reaction_category")) {
        if (!row["reaction_category"].is_string()) return "reaction_category must be a string";
        out.reaction_category = row["reaction_category"].get<std::string>();
    }
    return "";
}

LoadResult load_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open corpus file: " + path);

    LoadResult result;
    std::set<std::string> seen_ids;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            result.rejects.push_back({row, std::string("invalid JSON: ") + e.what()});
            continue;
        }
        TweetRecord rec;
        std::string err = record_from_json(parsed, rec);
        if (!err.empty()) {
            result.rejects.push_back({row, err});
            continue;
        }
        if (!seen_ids.insert(rec.record_id).second) {
            result.rejects.push_back({row, "duplicate record_id: " + rec.record_id});
            continue;
        }
        result.index.records.push_back(std::move(rec));
    }
    finalize_counts(result.index);
    return result;
}

/// RFC 4180 style fields: quoted fields may contain commas, doubled quotes
/// and newlines. Returns rows of cells.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> cells;
    std::string cell;
    bool in_quotes = false;
    bool row_has_content = false;
    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    cell += '"';
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_has_content = true;
            break;
        case ',':
            cells.push_back(cell);
            cell.clear();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_has_content || !cell.empty() || !cells.empty()) {
                cells.push_back(cell);
                rows.push_back(cells);
            }
            cells.clear();
            cell.clear();
            row_has_content = false;
            break;
        default:
            cell += c;
            row_has_content = true;
        }
    }
    if (row_has_content || !cell.empty() || !cells.empty()) {
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

LoadResult load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open corpus file: " + path);

    auto rows = parse_csv(in);
    if (rows.empty()) throw ConfigError("corpus CSV has no header row: " + path);

    std::map<std::string, size_t> columns;
    for (size_t i = 0; i < rows[0].size(); ++i) columns[rows[0][i]] = i;
    for (const char* key : {"record_id", "tweet_id", "tweet_text", "gif_id", "induced_label"}) {
        if (!columns.count(key))
            throw ConfigError("corpus CSV is missing required column '" + std::string(key) +
                              "': " + path);
    }

    LoadResult result;
    std::set<std::string> seen_ids;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        int row_no = static_cast<int>(r);  // 1-based data row
        if (cells.size() != rows[0].size()) {
            result.rejects.push_back({row_no, "wrong number of columns"});
            continue;
        }
        auto cell = [&](const char* key) { return cells[columns.at(key)]; };
        nlohmann::json as_json = {
            {"record_id", cell("record_id")}, {"tweet_id", cell("tweet_id")},
            {"tweet_text", cell("tweet_text")}, {"gif_id", cell("gif_id")},
        };
        std::string label = cell("induced_label");
        try {
            size_t pos = 0;
            as_json["induced_label"] = std::stoi(label, &pos);
            if (pos != label.size()) throw std::invalid_argument(label);
        } catch (const std::exception&) {
            result.rejects.push_back({row_no, "induced_label must be an integer: '" + label + "'"});
            continue;
        }
        if (columns.count("media_path")) as_json["media_path"] = cell("media_path");
        if (columns.count("reaction_category"))
            as_json["reaction_category"] = cell("reaction_category");

        TweetRecord rec;
        std::string err = record_from_json(as_json, rec);
        if (!err.empty()) {
            result.rejects.push_back({row_no, err});
            continue;
        }
        if (!seen_ids.insert(rec.record_id).second) {
            result.rejects.push_back({row_no, "duplicate record_id: " + rec.record_id});
            continue;
        }
        result.index.records.push_back(std::move(rec));
    }
    finalize_counts(result.index);
    return result;
}

} // namespace

LoadResult load_corpus(const std::string& path, CorpusFormat format) {
    return format == CorpusFormat::Jsonl ? load_jsonl(path) : load_csv(path);
}

void save_corpus(const CorpusIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write corpus file: " + path);
    for (const auto& r : index.records) {
        nlohmann::json row;
        row["record_id"] = r.record_id;
        row["tweet_id"] = r.tweet_id;
        row["tweet_text"] = r.tweet_text;
        row["gif_id"] = r.gif_id;
        row["induced_label"] = r.induced_label;
        if (r.media_path) row["media_path"] = *r.media_path;
        if (!r.reaction_category.empty()) row["reaction_category"] = r.reaction_category;
        write_json(out, row, JsonFormat{});
        out << "\n";
    }
}

std::string write_rejects(const std::vector<RowReject>& rejects,
                          const std::string& corpus_out_path) {
    std::string path = corpus_out_path + ".rejects.jsonl";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write rejects file: " + path);
    for (const auto& rej : rejects) {
        nlohmann::json row;
        row["row"] = rej.row;
        row["reason"] = rej.reason;
        write_json(out, row, JsonFormat{});
        out << "\n";
    }
    return path;
}

CorpusStats corpus_stats(const CorpusIndex& index) {
    if (index.records.empty()) throw DataError("empty corpus");

    std::map<std::string, int> reactions_per_tweet;
    std::set<std::string> gifs;
    for (const auto& r : index.records) {
        ++reactions_per_tweet[r.tweet_id];
        gifs.insert(r.gif_id);
    }
    int singles = 0;
    int max_reactions = 0;
    for (const auto& [tweet, count] : reactions_per_tweet) {
        if (count == 1) ++singles;
        max_reactions = std::max(max_reactions, count);
    }

    CorpusStats stats;
    stats.record_count = static_cast<int>(index.records.size());
    stats.distinct_tweet_count = static_cast<int>(reactions_per_tweet.size());
    stats.unique_gif_count = static_cast<int>(gifs.size());
    stats.single_reaction_fraction =
        static_cast<double>(singles) / static_cast<double>(reactions_per_tweet.size());
    stats.max_reactions_per_tweet = max_reactions;
    return stats;
}

TweetRecord resolve_media(const TweetRecord& record, const std::string& cache_dir,
                          const MediaResolveOptions& options) {
    if (!fs::is_directory(cache_dir))
        throw ConfigError("media cache directory does not exist: " + cache_dir);

    TweetRecord out = record;
    out.media_missing = false;
    out.media_missing_cause.clear();

    auto accept = [&](const fs::path& p) {
        std::error_code ec;
        auto size = fs::file_size(p, ec);
        if (ec) return false;
        if (size == 0) {
            out.media_missing_cause = "media file is empty: " + p.string();
            return false;
        }
        out.media_path = p.string();
        return true;
    };

    if (record.media_path && fs::exists(*record.media_path)) {
        if (accept(*record.media_path)) return out;
    }
    for (const char* ext : kMediaExtensions) {
        fs::path candidate = fs::path(cache_dir) / (record.gif_id + ext);
        if (fs::exists(candidate) && accept(candidate)) return out;
    }

    if (options.network_fetch && !options.url_template.empty()) {
        std::string cause = fetch_media_http(record.gif_id, cache_dir, options);
        if (cause.empty()) {
            for (const char* ext : kMediaExtensions) {
                fs::path candidate = fs::path(cache_dir) / (record.gif_id + ext);
                if (fs::exists(candidate) && accept(candidate)) return out;
            }
            cause = "fetched media did not land in the cache";
        }
        out.media_missing = true;
        out.media_path.reset();
        out.media_missing_cause = cause;
        return out;
    }

    out.media_missing = true;
    out.media_path.reset();
    if (out.media_missing_cause.empty())
        out.media_missing_cause = "not in cache: " + record.gif_id;
    return out;
}

} // namespace gifsent

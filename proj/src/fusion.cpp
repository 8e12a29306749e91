#include "gifsent/fusion.hpp"

#include <json.hpp>

#include "gifsent/jsonio.hpp"

namespace gifsent {

const char* to_string(AttributeClass c) {
    switch (c) {
    case AttributeClass::FaceYes_OcrYes: return "FaceYes_OcrYes";
    case AttributeClass::FaceYes_OcrNo: return "FaceYes_OcrNo";
    case AttributeClass::FaceNo_OcrYes: return "FaceNo_OcrYes";
    case AttributeClass::FaceNo_OcrNo: return "FaceNo_OcrNo";
    }
    return "?";
}

AttributeClass attribute_class_from_string(const std::string& s) {
    for (AttributeClass c : kAllAttributeClasses) {
        if (s == to_string(c)) return c;
    }
    throw DataError("unknown attribute class: " + s);
}

FusedSentiment fuse(const ModuleScore& image, const ModuleScore& face,
                    const ModuleScore& ocr) {
    if (!image.available) throw DataError("no scorable modality: image module unavailable");

    FusedSentiment out;
    out.image = image;
    out.face = face;
    out.ocr = ocr;

    double sum = image.score;
    int n = 1;
    if (face.available) {
        sum += face.score;
        ++n;
    }
    if (ocr.available) {
        sum += ocr.score;
        ++n;
    }
    out.fused_score = sum / n;
    out.label = out.fused_score >= 0.5 ? 1 : 0;

    if (face.available)
        out.attribute_class = ocr.available ? AttributeClass::FaceYes_OcrYes
                                            : AttributeClass::FaceYes_OcrNo;
    else
        out.attribute_class = ocr.available ? AttributeClass::FaceNo_OcrYes
                                            : AttributeClass::FaceNo_OcrNo;
    return out;
}

std::map<AttributeClass, double> attribute_partition(const std::vector<FusedSentiment>& fused) {
    if (fused.empty()) throw DataError("attribute partition over an empty set");
    std::map<AttributeClass, int> counts;
    for (AttributeClass c : kAllAttributeClasses) counts[c] = 0;
    for (const auto& f : fused) ++counts[f.attribute_class];
    std::map<AttributeClass, double> out;
    for (const auto& [cls, count] : counts)
        out[cls] = static_cast<double>(count) / static_cast<double>(fused.size());
    return out;
}

namespace {

nlohmann::json module_to_json(const ModuleScore& m) {
    if (!m.available) return nullptr;
    return {{"score", m.score}, {"evidence", m.evidence_count}};
}

ModuleScore module_from_json(const nlohmann::json& j, Modality modality) {
    ModuleScore m;
    m.modality = modality;
    if (j.is_null()) return m;
    m.available = true;
    m.score = j.at("score").get<double>();
    m.evidence_count = j.at("evidence").get<int>();
    return m;
}

} // namespace

std::string scores_row_json(const FusedSentiment& fused) {
    nlohmann::json row;
    row["gif_id"] = fused.gif_id;
    row["fused_score"] = fused.fused_score;
    row["label"] = fused.label;
    row["attribute_class"] = to_string(fused.attribute_class);
    row["modules"] = {{"image", module_to_json(fused.image)},
                      {"face", module_to_json(fused.face)},
                      {"ocr", module_to_json(fused.ocr)}};
    return to_json_string(row, JsonFormat{});
}

FusedSentiment parse_scores_row(const std::string& line) {
    nlohmann::json row;
    try {
        row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed scores row: ") + e.what());
    }
    FusedSentiment fused;
    try {
        fused.gif_id = row.at("gif_id").get<std::string>();
        fused.fused_score = row.at("fused_score").get<double>();
        fused.label = row.at("label").get<int>();
        fused.attribute_class = attribute_class_from_string(
            row.at("attribute_class").get<std::string>());
        const auto& modules = row.at("modules");
        fused.image = module_from_json(modules.at("image"), Modality::Image);
        fused.face = module_from_json(modules.at("face"), Modality::Face);
        fused.ocr = module_from_json(modules.at("ocr"), Modality::Ocr);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("scores row is missing fields: ") + e.what());
    }
    return fused;
}

} // namespace gifsent

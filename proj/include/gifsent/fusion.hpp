#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gifsent/error.hpp"
#include "gifsent/module_score.hpp"

namespace gifsent {

/// Which optional modalities produced a score for a GIF. The image module is
/// always present when a GIF is scorable at all, so the partition is over
/// face and OCR availability.
enum class AttributeClass { FaceYes_OcrYes, FaceYes_OcrNo, FaceNo_OcrYes, FaceNo_OcrNo };

inline constexpr std::array<AttributeClass, 4> kAllAttributeClasses = {
    AttributeClass::FaceYes_OcrYes, AttributeClass::FaceYes_OcrNo,
    AttributeClass::FaceNo_OcrYes, AttributeClass::FaceNo_OcrNo};

const char* to_string(AttributeClass c);
AttributeClass attribute_class_from_string(const std::string& s);

struct FusedSentiment {
    std::string gif_id;
    double fused_score = 0.0;
    int label = 0;  // 1 = positive, 0 = negative
    AttributeClass attribute_class = AttributeClass::FaceNo_OcrNo;
    ModuleScore image, face, ocr;
};

/// Late fusion: the unweighted mean of the available module scores. Scores
/// of exactly 0.5 label positive. The image module must be available
/// (a GIF nothing could be decoded from is not scorable); face and OCR join
/// the mean only when available, with no imputation for missing ones.
FusedSentiment fuse(const ModuleScore& image, const ModuleScore& face,
                    const ModuleScore& ocr);

/// Fraction of GIFs in each attribute class. Classes with no members are
/// present with fraction 0. Throws DataError on an empty input.
std::map<AttributeClass, double> attribute_partition(const std::vector<FusedSentiment>& fused);

/// One scores.jsonl row (no trailing newline). Unavailable modules serialize
/// as null; doubles use shortest round-trip formatting, so equal results
/// always produce identical bytes.
std::string scores_row_json(const FusedSentiment& fused);

/// Parses a scores.jsonl row back. Throws DataError on malformed rows.
FusedSentiment parse_scores_row(const std::string& line);

} // namespace gifsent

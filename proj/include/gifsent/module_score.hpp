#pragma once

namespace gifsent {

enum class Modality { Image, Face, Ocr };

const char* to_string(Modality m);

/// Outcome of one scoring module for one GIF. When available is false the
/// score is meaningless and the module is left out of fusion entirely (no
/// imputation). evidence_count says what the score rests on: frames scored
/// for the image module, face observations for the face module, cleaned
/// caption characters for OCR. skipped_count tallies per-frame backend
/// failures that were logged and dropped.
struct ModuleScore {
    Modality modality = Modality::Image;
    bool available = false;
    double score = 0.0;
    int evidence_count = 0;
    int skipped_count = 0;
};

} // namespace gifsent

#pragma once

#include <filesystem>
#include <string>

#include "sentirec/classify.hpp"

namespace sentirec {

// Model persistence: one self-describing JSON document per model with
// format_version, model_kind, the full TrainConfig echo, the vocabulary and
// kind-specific parameters. Serialization is deterministic (sorted keys,
// round-trip float formatting), so retraining with identical inputs yields
// byte-identical files.

inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const AnyModel& model);
AnyModel deserialize_model(const std::string& text);  // throws DataError

void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace sentirec

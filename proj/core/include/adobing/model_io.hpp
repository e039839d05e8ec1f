#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "adobing/bing.hpp"

namespace adobing {

// Recorded when a model was produced by adaptation.
struct ModelProvenance {
    std::uint64_t base_model_hash = 0;
    double C = 0.0;
    std::uint64_t seed = 0;
    std::string spec;  // sample-spec summary, single line
};

struct ModelFile {
    LinearModel model;
    std::optional<ModelProvenance> provenance;
};

// Text key-value document:
//   format_version: 1
//   weights: <64 decimals>
// plus base_model_hash / C / seed / spec lines when provenance is present.
ModelFile load_model(const std::string& path);
void save_model(const std::string& path, const LinearModel& m,
                const std::optional<ModelProvenance>& prov = std::nullopt);

// FNV-1a over the canonical weight text, stable across platforms.
std::uint64_t model_hash(const LinearModel& m);

}  // namespace adobing

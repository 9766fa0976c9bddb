#pragma once

#include "tdc/model.hpp"

namespace tdc {

enum class WeightingMode { Physical, Unit };
enum class NormalizationScope { PerLayer, Global };

WeightingMode weighting_mode_from_string(const std::string& s);
const char* to_string(WeightingMode m);
NormalizationScope normalization_scope_from_string(const std::string& s);
const char* to_string(NormalizationScope s);

// |Z| = sqrt(r^2 + x^2).
double impedance_magnitude(double r, double x);

// Physical mode: T/D intra edge weight = |Z| / mean(|Z|) where the mean is
// taken per layer (or globally over all impedance-bearing layers when scope
// is Global); C intra edges get weight 1; inter edges get weight 0.
// Unit mode: every intra edge 1, every inter edge 0.
// Layers whose intra edges all lack impedance data (communication layers)
// are treated as unit-weight layers in physical mode.
MultilayerNetwork assign_weights(
    const MultilayerNetwork& net, WeightingMode mode,
    NormalizationScope scope = NormalizationScope::PerLayer);

}  // namespace tdc

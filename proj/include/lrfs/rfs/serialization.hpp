#pragma once

#include "lrfs/rfs/densities.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>

namespace lrfs::rfs {

/// JSON exchange format.
///
/// A mixture is {"log_weights": [...], "means": [[...], ...],
/// "covariances": [[row-major d*d], ...]}. A label is [birth_time, index].
///
///   LMB:     {"kind": "lmb", "entries": [{"label": [k,i], "existence": r, "pdf": mixture}, ...]}
///   Mδ-GLMB: {"kind": "mdglmb", "hypotheses": [{"labels": [[k,i], ...], "log_weight": w,
///                                              "pdfs": [mixture, ...]}, ...]}
///
/// Numbers are written in double precision.
[[nodiscard]] nlohmann::json to_json(const gm::GaussianMixture& m);
[[nodiscard]] nlohmann::json to_json(const LmbDensity& d);
[[nodiscard]] nlohmann::json to_json(const MdGlmbDensity& d);

/// Throw ValidationError on malformed input.
[[nodiscard]] gm::GaussianMixture mixture_from_json(const nlohmann::json& j);
[[nodiscard]] LmbDensity lmb_from_json(const nlohmann::json& j);
[[nodiscard]] MdGlmbDensity mdglmb_from_json(const nlohmann::json& j);

/// Exchange cost assuming 4-byte floats and one 4-D Gaussian (4 mean + 10
/// covariance entries) per track: 4 Σ_I (1 + 14|I|).
[[nodiscard]] std::size_t nominal_exchange_bytes(const MdGlmbDensity& d);
/// 4 (1 + 14|L|); the formula counts a single scalar header regardless of |L|.
[[nodiscard]] std::size_t nominal_exchange_bytes(const LmbDensity& d);

/// Size of the compact JSON encoding actually produced by to_json.
[[nodiscard]] std::size_t serialized_bytes(const MdGlmbDensity& d);
[[nodiscard]] std::size_t serialized_bytes(const LmbDensity& d);

}  // namespace lrfs::rfs

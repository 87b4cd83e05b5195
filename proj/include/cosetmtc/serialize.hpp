#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cosetmtc/common.hpp"
#include "cosetmtc/wzw.hpp"

namespace cmtc {

using ordered_json = nlohmann::ordered_json;

// Complex values serialize as [re, im] pairs, lossless at double precision.
ordered_json complex_to_json(const cd& z);
cd complex_from_json(const nlohmann::json& j);

// Width of the weight part of a label row: sum over factors of (n - 1).
// Rows of a "coset" theory carry one extra trailing resolution index that
// is not a Dynkin label and passes through unshifted.
int weight_width(const ModularData& md);

// Labels with every Dynkin entry lowered by one (external convention);
// a trailing resolution index, when present, is copied through.
std::vector<std::vector<int>> unshifted_labels(const ModularData& md);

// { "type", "factors", "labels", "S", "T", "delta", "c" } with unshifted
// labels and [re, im] complex entries.
ordered_json modular_to_json(const ModularData& md);

// Inverse of modular_to_json; quantum dimensions and the conjugation
// permutation are rebuilt from the S matrix.   Throws schema_error on
// malformed input.
ModularData modular_from_json(const nlohmann::json& j);

// Minimal identifier of a reconstructible theory: { "type", "factors" }.
ordered_json theory_ref(const ModularData& md);

// Rebuild a "wzw" or "product" theory from its reference.
ModularData theory_from_ref(const nlohmann::json& j);

// Sparse fusion listing: one { "a", "b", "c", "n" } row per nonzero
// coefficient, labels unshifted, rows in lexicographic index order.
ordered_json fusion_to_json(const ModularData& md, const FusionTensor& f);

}  // namespace cmtc

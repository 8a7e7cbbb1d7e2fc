#pragma once

// Dense Gaussian elimination over a finite field.

#include "sparse/galois_field.hpp"

#include <optional>
#include <vector>

namespace sparse {

using FieldMatrix = std::vector<std::vector<FieldElement>>;

/// One solution of a x = b (free variables set to zero), or nullopt when the
/// system is inconsistent. All entries must share one field.
std::optional<std::vector<FieldElement>> solve_linear(FieldMatrix a, std::vector<FieldElement> b);

FieldElement determinant(FieldMatrix a);

std::size_t rank(FieldMatrix a);

}  // namespace sparse

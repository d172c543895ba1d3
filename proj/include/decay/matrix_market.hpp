#pragma once

#include <filesystem>
#include <istream>

#include "decay/sparse_matrix.hpp"

namespace decay {

/// Reads a Matrix Market coordinate file with a symmetric or hermitian
/// qualifier (real, integer, complex or pattern field). General and
/// skew-symmetric files are rejected. Throws ParseError.
SparseHermitianMatrix read_matrix_market(std::istream& in);
SparseHermitianMatrix load_matrix_market(const std::filesystem::path& path);

}  // namespace decay

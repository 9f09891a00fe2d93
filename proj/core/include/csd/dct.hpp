#pragma once

#include "csd/types.hpp"

namespace csd {

/// Orthonormal 2D DCT-II basis for p x p patches vectorized row-major.
///
/// The returned d x d matrix (d = p^2) is the Kronecker product of two 1D
/// orthonormal DCT-II matrices, transposed so that columns are atoms.
/// Column l = kv*p + kh holds the atom with vertical frequency kv and
/// horizontal frequency kh; analysis coefficients of a patch x are
/// Psi^T x.
Dictionary dct_dictionary(int patch_side);

}  // namespace csd

#include "csd/dct.hpp"

#include <cmath>

namespace csd {

Dictionary dct_dictionary(int patch_side) {
    if (patch_side < 1) {
        throw std::invalid_argument("dct_dictionary: patch_side must be >= 1");
    }
    const int p = patch_side;

    // 1D orthonormal DCT-II: C(k, j) = s_k cos(pi (2j+1) k / (2p)).
    Matrix c(p, p);
    const double s0 = std::sqrt(1.0 / p);
    const double sk = std::sqrt(2.0 / p);
    for (int k = 0; k < p; ++k) {
        const double scale = (k == 0) ? s0 : sk;
        for (int j = 0; j < p; ++j) {
            c(k, j) = scale * std::cos(M_PI * (2.0 * j + 1.0) * k / (2.0 * p));
        }
    }

    // Atom (kv, kh) evaluated at pixel (r, col) is C(kv, r) * C(kh, col);
    // both the pixel and the frequency pair are laid out row-major, so the
    // basis is kron(C, C)^T.
    const int d = p * p;
    Matrix basis(d, d);
    for (int kv = 0; kv < p; ++kv) {
        for (int kh = 0; kh < p; ++kh) {
            const int atom = kv * p + kh;
            for (int r = 0; r < p; ++r) {
                for (int col = 0; col < p; ++col) {
                    basis(r * p + col, atom) = c(kv, r) * c(kh, col);
                }
            }
        }
    }
    return Dictionary(std::move(basis));
}

}  // namespace csd

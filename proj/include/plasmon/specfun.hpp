#pragma once

#include <array>
#include <vector>

#include "plasmon/types.hpp"

namespace plasmon {

inline constexpr int max_bessel_order = 200;

struct BesselPair {
    cplx j;  // spherical Bessel j_n
    cplx h;  // spherical Hankel h_n^(1)
};

struct RiccatiPair {
    cplx J;  // j_n + z j_n'
    cplx H;  // h_n + z h_n'
};

/// j_n, h_n^(1), and the Riccati combinations for every order 0..nmax at one argument.
struct BesselTable {
    cplx z;
    std::vector<cplx> j, h, J, H;
    int nmax() const { return static_cast<int>(j.size()) - 1; }
};

BesselPair bessel_pair(int n, cplx z);
RiccatiPair riccati_pair(int n, cplx z);
BesselTable bessel_table(int nmax, cplx z);

enum class ProductKind {
    Jh,  // i J_n(t) h_n(tt)
    jH,  // i j_n(t) H_n(tt)
    jh,  // i j_n(t) h_n(tt)
    JH,  // i J_n(t) H_n(tt)
};

struct SmallProduct {
    cplx value;
    bool in_regime;  // false when |t|, |tt| > 0.3 or t/tt outside [1/2, 2]
};

/// Three-term small-argument expansion of i * (product), with the ratio t/tt kept exact.
SmallProduct bessel_product_small(ProductKind kind, int n, cplx t, cplx tt);

/// Exact i * (product) from bessel_table, for comparison with the expansion.
cplx bessel_product_exact(ProductKind kind, int n, cplx t, cplx tt);

struct ModeIndex {
    int n = 1;
    int m = 0;
};

void check_mode(const ModeIndex& idx);

/// Normalizes v and checks it is a usable direction.
Vec3 make_direction(const Vec3& v);

struct Harmonics {
    cplx Y;
    CVec3 U;  // surface gradient of Y over sqrt(n(n+1))
    CVec3 V;  // xhat x U

    Harmonics conjugate() const { return {std::conj(Y), U.conjugate(), V.conjugate()}; }
};

/// Orthonormal Y_n^m without Condon-Shortley phase (Y_n^{-m} = conj Y_n^m) and its
/// tangential vector fields. Regular at both poles.
Harmonics harmonics(const ModeIndex& idx, const Vec3& xhat);

/// harmonics for m = -n..n, index m + n.
std::vector<Harmonics> harmonics_all(int n, const Vec3& xhat);

/// Normalized associated Legendre values for degrees m..nmax at fixed order m >= 0.
/// p[k] = Pbar_{m+k}^m(cos theta); ps[k] = Pbar_{m+k}^m / sin theta (zero-filled when m == 0).
void legendre_column(int m, int nmax, double cos_t, double sin_t, std::vector<double>& p,
                     std::vector<double>& ps);

}  // namespace plasmon

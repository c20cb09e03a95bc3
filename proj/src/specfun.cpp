#include "plasmon/specfun.hpp"

#include <cmath>
#include <limits>

namespace plasmon {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::overflow: return "overflow";
        case ErrorKind::degenerate: return "degenerate";
        case ErrorKind::singular: return "singular";
        case ErrorKind::accuracy: return "accuracy";
        case ErrorKind::not_found: return "not_found";
    }
    return "unknown";
}

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// j_N / j_{N-1} by modified Lentz on 1/r_N = b_0 - 1/(b_1 - 1/(b_2 - ...)), b_k = (2N+1+2k)/z.
cplx ratio_seed(int N, cplx z) {
    const double tiny = 1e-300;
    auto b = [&](int k) { return double(2 * N + 1 + 2 * k) / z; };
    cplx f = b(0);
    if (f == 0.0) f = tiny;
    cplx C = f, D = 0.0;
    for (int k = 1; k < 100000; ++k) {
        D = b(k) - D;
        if (D == 0.0) D = tiny;
        C = b(k) - 1.0 / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) return 1.0 / f;
    }
    throw Error(ErrorKind::accuracy, "bessel: continued fraction did not converge");
}

}  // namespace

BesselTable bessel_table(int nmax, cplx z) {
    if (nmax < 0 || nmax > max_bessel_order)
        throw Error(ErrorKind::domain, "bessel: order outside [0, 200]");
    if (z == 0.0) throw Error(ErrorKind::domain, "bessel: argument z = 0");

    const int N = std::max(nmax, 1);
    std::vector<cplx> ratio(N + 1);  // ratio[n] = j_n / j_{n-1}
    ratio[N] = ratio_seed(N, z);
    for (int n = N - 1; n >= 1; --n) ratio[n] = z / (double(2 * n + 1) - z * ratio[n + 1]);

    std::vector<cplx> j(N + 1);
    const cplx s = std::sin(z), c = std::cos(z);
    const cplx j0 = s / z;
    const cplx j1 = (s / z - c) / z;
    if (!finite(j0) || !finite(j1)) throw Error(ErrorKind::overflow, "bessel: |Im z| too large");
    if (std::abs(j0) >= std::abs(j1)) {
        j[0] = j0;
        j[1] = j0 * ratio[1];
    } else {
        j[1] = j1;
        j[0] = j0;
    }
    for (int n = 2; n <= N; ++n) j[n] = j[n - 1] * ratio[n];

    std::vector<cplx> h(N + 1);
    const cplx e = std::exp(I * z);
    h[0] = -I * e / z;
    h[1] = -e * (z + I) / (z * z);
    for (int n = 1; n < N; ++n) h[n + 1] = double(2 * n + 1) / z * h[n] - h[n - 1];

    BesselTable t;
    t.z = z;
    t.j.assign(j.begin(), j.begin() + nmax + 1);
    t.h.assign(h.begin(), h.begin() + nmax + 1);
    t.J.resize(nmax + 1);
    t.H.resize(nmax + 1);
    t.J[0] = j[0] - z * j[1];
    t.H[0] = h[0] - z * h[1];
    for (int n = 1; n <= nmax; ++n) {
        t.J[n] = z * j[n - 1] - double(n) * j[n];
        t.H[n] = z * h[n - 1] - double(n) * h[n];
    }
    for (int n = 0; n <= nmax; ++n) {
        if (!finite(t.h[n]) || !finite(t.H[n]))
            throw Error(ErrorKind::overflow, "bessel: h_n overflows for order " + std::to_string(n));
        if (t.j[n] == 0.0 || std::abs(t.j[n]) < std::numeric_limits<double>::min())
            throw Error(ErrorKind::overflow, "bessel: j_n underflows for order " + std::to_string(n));
    }
    return t;
}

BesselPair bessel_pair(int n, cplx z) {
    BesselTable t = bessel_table(n, z);
    return {t.j[n], t.h[n]};
}

RiccatiPair riccati_pair(int n, cplx z) {
    BesselTable t = bessel_table(n, z);
    return {t.J[n], t.H[n]};
}

SmallProduct bessel_product_small(ProductKind kind, int n, cplx t, cplx tt) {
    if (n < 1) throw Error(ErrorKind::domain, "bessel_product_small: n must be >= 1");
    if (t == 0.0 || tt == 0.0) throw Error(ErrorKind::domain, "bessel_product_small: zero argument");
    const double a = 2 * n + 1, am = 2 * (2 * n - 1) * (2 * n + 1), ap = 2 * (2 * n + 1) * (2 * n + 3);
    double c0 = 0, c1 = 0, c2 = 0;
    switch (kind) {
        case ProductKind::Jh: c0 = (n + 1) / a; c1 = (n + 1) / am; c2 = -(n + 3) / ap; break;
        case ProductKind::jH: c0 = -n / a; c1 = (2 - n) / am; c2 = n / ap; break;
        case ProductKind::jh: c0 = 1 / a; c1 = 1 / am; c2 = -1 / ap; break;
        case ProductKind::JH: c0 = -n * (n + 1) / a; c1 = (n + 1) * (2 - n) / am; c2 = n * (n + 3) / ap; break;
    }
    const cplx u = t / tt;
    const cplx un = std::pow(u, n);
    SmallProduct out;
    out.value = c0 * un / tt + c1 * un * tt + c2 * un * u * t;
    const double ratio = std::abs(u);
    out.in_regime = std::abs(t) <= 0.3 && std::abs(tt) <= 0.3 && ratio >= 0.5 && ratio <= 2.0;
    return out;
}

cplx bessel_product_exact(ProductKind kind, int n, cplx t, cplx tt) {
    BesselTable a = bessel_table(n, t), b = bessel_table(n, tt);
    switch (kind) {
        case ProductKind::Jh: return I * a.J[n] * b.h[n];
        case ProductKind::jH: return I * a.j[n] * b.H[n];
        case ProductKind::jh: return I * a.j[n] * b.h[n];
        case ProductKind::JH: return I * a.J[n] * b.H[n];
    }
    return 0.0;
}

void check_mode(const ModeIndex& idx) {
    if (idx.n < 1 || std::abs(idx.m) > idx.n)
        throw Error(ErrorKind::domain, "mode index requires n >= 1 and |m| <= n");
}

Vec3 make_direction(const Vec3& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorKind::domain, "direction must be nonzero");
    return v / norm;
}

void legendre_column(int m, int nmax, double cos_t, double sin_t, std::vector<double>& p,
                     std::vector<double>& ps) {
    const int len = nmax - m + 1;
    p.assign(std::max(len, 0), 0.0);
    ps.assign(std::max(len, 0), 0.0);
    if (len <= 0) return;
    double cm = 1.0 / std::sqrt(4.0 * pi);
    for (int k = 1; k <= m; ++k) cm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    const double smm1 = m >= 1 ? std::pow(sin_t, m - 1) : 0.0;
    p[0] = m >= 1 ? cm * smm1 * sin_t : cm;
    ps[0] = m >= 1 ? cm * smm1 : 0.0;
    if (len > 1) {
        const double a = std::sqrt(2.0 * m + 3.0);
        p[1] = a * cos_t * p[0];
        ps[1] = a * cos_t * ps[0];
    }
    for (int k = 2; k < len; ++k) {
        const int n = m + k;
        const double a = std::sqrt((4.0 * n * n - 1.0) / (double(n) * n - double(m) * m));
        const double b = std::sqrt(((n - 1.0) * (n - 1.0) - double(m) * m) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
        p[k] = a * (cos_t * p[k - 1] - b * p[k - 2]);
        ps[k] = a * (cos_t * ps[k - 1] - b * ps[k - 2]);
    }
}

Harmonics harmonics(const ModeIndex& idx, const Vec3& xhat) {
    check_mode(idx);
    const int n = idx.n, ma = std::abs(idx.m);
    const double cos_t = std::clamp(xhat.z(), -1.0, 1.0);
    const double sin_t = std::hypot(xhat.x(), xhat.y());
    const double phi = (sin_t == 0.0) ? 0.0 : std::atan2(xhat.y(), xhat.x());

    std::vector<double> p, ps;
    legendre_column(ma, n, cos_t, sin_t, p, ps);
    const double P = p[n - ma];
    double dP = 0.0, Q = 0.0;
    if (ma == 0) {
        std::vector<double> p1, ps1;
        legendre_column(1, n, cos_t, sin_t, p1, ps1);
        dP = -std::sqrt(double(n) * (n + 1)) * p1[n - 1];
    } else {
        Q = ps[n - ma];
        const double Qm1 = (n - 1 >= ma) ? ps[n - 1 - ma] : 0.0;
        dP = n * cos_t * Q - std::sqrt((2.0 * n + 1.0) * (double(n) * n - double(ma) * ma) / (2.0 * n - 1.0)) * Qm1;
    }

    const cplx phase = std::polar(1.0, ma * phi);
    const Vec3 e_theta(cos_t * std::cos(phi), cos_t * std::sin(phi), -sin_t);
    const Vec3 e_phi(-std::sin(phi), std::cos(phi), 0.0);
    const double norm = 1.0 / std::sqrt(double(n) * (n + 1));
    const cplx imq = I * double(ma) * Q;

    Harmonics out;
    out.Y = P * phase;
    out.U = (e_theta.cast<cplx>() * dP + e_phi.cast<cplx>() * imq) * (phase * norm);
    out.V = (e_phi.cast<cplx>() * dP - e_theta.cast<cplx>() * imq) * (phase * norm);
    return idx.m < 0 ? out.conjugate() : out;
}

std::vector<Harmonics> harmonics_all(int n, const Vec3& xhat) {
    std::vector<Harmonics> out;
    out.reserve(2 * n + 1);
    for (int m = -n; m <= n; ++m) out.push_back(harmonics({n, m}, xhat));
    return out;
}

}  // namespace plasmon

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace plasmon {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;
using CVec4 = Eigen::Vector4cd;
using CMat8 = Eigen::Matrix<cplx, 8, 8>;
using CVec8 = Eigen::Matrix<cplx, 8, 1>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

/// a x b without conjugation (Eigen conjugates complex cross products).
inline CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

enum class ErrorKind {
    domain,      // argument outside the operation's domain
    overflow,    // results not representable in double
    degenerate,  // a contrast or denominator vanishes
    singular,    // matrix / pole singularity
    accuracy,    // numerical certification failed
    not_found,   // search produced nothing
};

const char* to_string(ErrorKind k);

/// Error carrying a machine-readable kind; the CLI maps it to exit code 3.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace plasmon

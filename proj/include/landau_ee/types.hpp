#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace landau_ee {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// A point (or vector) in the plane.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Point a) { return dot(a, a); }

/// J = [[0, 1], [-1, 0]], the rotation used for the symmetric gauge A0 = (B0/2) J x.
inline Point apply_j(Point a) { return {a.y, -a.x}; }

/// <x | J y>
inline double symplectic(Point x, Point y) { return x.x * y.y - x.y * y.x; }

using CVec2 = std::array<cplx, 2>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. Everything derives from Error so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
/// A spectral parameter sits (numerically) on a pole.
struct SingularityError : Error {
    using Error::Error;
};
/// A quadrature or truncation did not reach the requested accuracy.
struct AccuracyError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace landau_ee

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace legw {

using Real = double;

// Ambient vectors live in R^6 = C^3 with coordinate order (x1,x2,x3,y1,y2,y3).
template <class T>
using Vec6 = std::array<T, 6>;

using AmbientVector = Vec6<Real>;

template <class T>
inline Vec6<T> vzero() {
    return Vec6<T>{T(0), T(0), T(0), T(0), T(0), T(0)};
}

template <class T>
inline Vec6<T> operator+(const Vec6<T>& a, const Vec6<T>& b) {
    Vec6<T> r;
    for (int k = 0; k < 6; ++k) r[k] = a[k] + b[k];
    return r;
}

template <class T>
inline Vec6<T> operator-(const Vec6<T>& a, const Vec6<T>& b) {
    Vec6<T> r;
    for (int k = 0; k < 6; ++k) r[k] = a[k] - b[k];
    return r;
}

template <class T>
inline Vec6<T> operator-(const Vec6<T>& a) {
    Vec6<T> r;
    for (int k = 0; k < 6; ++k) r[k] = -a[k];
    return r;
}

template <class T, class S>
inline Vec6<T> operator*(const S& s, const Vec6<T>& a) {
    Vec6<T> r;
    for (int k = 0; k < 6; ++k) r[k] = s * a[k];
    return r;
}

template <class T>
inline Vec6<T>& operator+=(Vec6<T>& a, const Vec6<T>& b) {
    for (int k = 0; k < 6; ++k) a[k] = a[k] + b[k];
    return a;
}

template <class T>
inline Vec6<T>& operator-=(Vec6<T>& a, const Vec6<T>& b) {
    for (int k = 0; k < 6; ++k) a[k] = a[k] - b[k];
    return a;
}

template <class T>
inline T dot(const Vec6<T>& a, const Vec6<T>& b) {
    T s = a[0] * b[0];
    for (int k = 1; k < 6; ++k) s = s + a[k] * b[k];
    return s;
}

inline Real norm(const AmbientVector& a) { return std::sqrt(dot(a, a)); }

// Errors shared across the library.

struct NonTangent : std::runtime_error {
    explicit NonTangent(const std::string& what) : std::runtime_error(what) {}
};

struct OrderTooHigh : std::runtime_error {
    explicit OrderTooHigh(const std::string& what) : std::runtime_error(what) {}
};

struct NotPeriodic : std::runtime_error {
    explicit NotPeriodic(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateMetric : std::runtime_error {
    explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

struct DriftExceeded : std::runtime_error {
    explicit DriftExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct StepRejected : std::runtime_error {
    explicit StepRejected(const std::string& what) : std::runtime_error(what) {}
};

struct EvaluationOutsideChart : std::runtime_error {
    explicit EvaluationOutsideChart(const std::string& what) : std::runtime_error(what) {}
};

struct FormatError : std::runtime_error {
    long line;
    FormatError(const std::string& what, long line_) : std::runtime_error(what + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

}  // namespace legw

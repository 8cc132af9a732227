#ifndef ELLWAVE_FOURVEC_HPP
#define ELLWAVE_FOURVEC_HPP

#include <array>

namespace ellwave {

// Four-vector with metric signature (+, -, -, -).
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int mu) const {
        switch (mu) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    double& operator[](int mu) {
        switch (mu) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
};

inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

// diag(+1, -1, -1, -1)
inline constexpr std::array<double, 4> metric_diag = {1.0, -1.0, -1.0, -1.0};

inline FourVector shifted(FourVector v, int mu, double h) {
    v[mu] += h;
    return v;
}

}  // namespace ellwave

#endif

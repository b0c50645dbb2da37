#pragma once

#include <stdexcept>
#include <vector>

namespace crsslab {

// least-squares slope of y against x
inline double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_slope: need two or more paired points");
    double xm = 0.0, ym = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= x.size();
    ym /= y.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - xm) * (y[i] - ym);
        den += (x[i] - xm) * (x[i] - xm);
    }
    if (den == 0.0) throw std::invalid_argument("linear_slope: degenerate abscissa");
    return num / den;
}

}  // namespace crsslab

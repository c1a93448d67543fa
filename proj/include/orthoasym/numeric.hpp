#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace orthoasym {

/// Neumaier-compensated accumulator.
template <class R>
class CompensatedSum {
public:
    void add(R v)
    {
        R t = sum_ + v;
        using std::abs;
        if (abs(sum_) >= abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    R value() const { return sum_ + comp_; }

private:
    R sum_ = R(0);
    R comp_ = R(0);
};

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope*x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fixed 17-significant-digit rendering used for every artifact.
std::string fmt17(double v);

std::vector<double> linspace(double a, double b, std::size_t n);

} // namespace orthoasym

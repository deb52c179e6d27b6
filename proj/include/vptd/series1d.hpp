#pragma once

#include <cstddef>
#include <vector>

#include "vptd/bigreal.hpp"

namespace vptd {

// Power series truncated at a fixed window of coefficients, over BigReal.
// All binary operations require matching windows; multiplication truncates
// to the window, which is exactly the 1/D bookkeeping the expansion needs.
class TruncSeries {
public:
    TruncSeries(std::size_t window, long digits);

    std::size_t window() const { return a_.size(); }
    long digits() const { return digits_; }

    BigReal& operator[](std::size_t i);
    const BigReal& operator[](std::size_t i) const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& scale(const BigReal& s);

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    // Multiplicative inverse; requires a nonzero constant term.
    TruncSeries inverse() const;

private:
    std::vector<BigReal> a_;
    long digits_;
};

}

#include "vptd/series1d.hpp"

#include "vptd/error.hpp"

namespace vptd {

TruncSeries::TruncSeries(std::size_t window, long digits) : digits_(digits) {
    if (window == 0) throw DomainError("TruncSeries", "window must be positive");
    a_.assign(window, BigReal::of(0L, digits));
}

BigReal& TruncSeries::operator[](std::size_t i) {
    if (i >= a_.size()) throw DomainError("TruncSeries", "coefficient index beyond window");
    return a_[i];
}

const BigReal& TruncSeries::operator[](std::size_t i) const {
    if (i >= a_.size()) throw DomainError("TruncSeries", "coefficient index beyond window");
    return a_[i];
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    if (o.window() != window()) throw DomainError("TruncSeries", "window mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    if (o.window() != window()) throw DomainError("TruncSeries", "window mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

TruncSeries& TruncSeries::scale(const BigReal& s) {
    for (auto& c : a_) c *= s;
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.window() != b.window()) throw DomainError("TruncSeries", "window mismatch");
    TruncSeries out(a.window(), a.digits_);
    for (std::size_t i = 0; i < a.window(); ++i) {
        if (a.a_[i].sign() == 0) continue;
        for (std::size_t j = 0; i + j < b.window(); ++j) {
            out.a_[i + j] += a.a_[i] * b.a_[j];
        }
    }
    return out;
}

TruncSeries TruncSeries::inverse() const {
    if (a_[0].sign() == 0) {
        throw DomainError("TruncSeries::inverse", "constant term must be nonzero");
    }
    TruncSeries out(window(), digits_);
    const BigReal inv0 = BigReal::of(1L, digits_) / a_[0];
    out.a_[0] = inv0;
    for (std::size_t n = 1; n < window(); ++n) {
        BigReal acc = BigReal::of(0L, digits_);
        for (std::size_t i = 1; i <= n; ++i) {
            acc += a_[i] * out.a_[n - i];
        }
        out.a_[n] = -acc * inv0;
    }
    return out;
}

}

#pragma once

#include <cmath>
#include <limits>

namespace gmentropy {

/// Streaming log-sum-exp accumulator. Holds the running max and the sum of
/// exp(x - max); merge() is associative so per-thread partials can be combined.
class LogSumExp {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term <= max_) {
            scaled_sum_ += std::exp(log_term - max_);
        } else {
            scaled_sum_ = scaled_sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }

    void merge(const LogSumExp& other) {
        if (other.empty()) return;
        if (empty()) {
            *this = other;
            return;
        }
        if (other.max_ <= max_) {
            scaled_sum_ += other.scaled_sum_ * std::exp(other.max_ - max_);
        } else {
            scaled_sum_ = scaled_sum_ * std::exp(max_ - other.max_) + other.scaled_sum_;
            max_ = other.max_;
        }
    }

    bool empty() const { return max_ == -std::numeric_limits<double>::infinity(); }

    double value() const {
        if (empty()) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(scaled_sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double scaled_sum_ = 0.0;
};

}  // namespace gmentropy

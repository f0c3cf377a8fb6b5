#include "gmentropy/compositions.hpp"

#include <stdexcept>
#include <string>

#include "gmentropy/errors.hpp"

namespace gmentropy {

namespace {

constexpr std::uint64_t kMaxCompositions = 100'000'000ULL;

}  // namespace

std::uint64_t composition_count(int q, int a) {
    if (q < 1 || a < 0) throw std::invalid_argument("composition_count needs q >= 1 and a >= 0");
    // binom(a + k, k) built up as prod_{i=1..k} (a + i) / i; each partial
    // product is itself a binomial, so the division is exact.
    const int k = q - 1;
    std::uint64_t count = 1;
    for (int i = 1; i <= k; ++i) {
        const auto factor = static_cast<std::uint64_t>(a + i);
        if (count > kMaxCompositions * static_cast<std::uint64_t>(i) / factor + 1)
            throw ResourceLimitError("more than 1e8 compositions for q=" + std::to_string(q) +
                                     ", a=" + std::to_string(a));
        count = count * factor / static_cast<std::uint64_t>(i);
    }
    if (count > kMaxCompositions)
        throw ResourceLimitError("more than 1e8 compositions for q=" + std::to_string(q) + ", a=" + std::to_string(a));
    return count;
}

CompositionStream::CompositionStream(int q, int a) : CompositionStream(q, a, 0, false) {}

CompositionStream CompositionStream::with_first(int q, int a, int first) {
    if (first < 0 || first > a) throw std::invalid_argument("first part must lie in [0, a]");
    return CompositionStream(q, a, first, true);
}

CompositionStream::CompositionStream(int q, int a, int first, bool fixed) {
    if (q < 1 || a < 1) throw std::invalid_argument("compositions need q >= 1 and a >= 1");
    composition_count(q, a);
    current_.order = a;
    current_.t.assign(static_cast<std::size_t>(q), 0);
    lowest_free_ = fixed ? 1 : 0;
    if (fixed) {
        current_.t[0] = first;
        if (q == 1 && first != a) done_ = true;
    }
    const int rest = a - (fixed ? first : 0);
    if (q > 1 || !fixed) current_.t.back() += rest;
}

bool CompositionStream::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        return true;
    }
    auto& t = current_.t;
    const int q = static_cast<int>(t.size());
    int suffix = t.back();
    for (int i = q - 2; i >= lowest_free_; --i) {
        if (suffix > 0) {
            ++t[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < q - 1; ++k) t[static_cast<std::size_t>(k)] = 0;
            t.back() = suffix - 1;
            return true;
        }
        suffix += t[static_cast<std::size_t>(i)];
    }
    done_ = true;
    return false;
}

}  // namespace gmentropy

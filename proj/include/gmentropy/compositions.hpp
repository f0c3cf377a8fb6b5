#pragma once

#include <cstdint>
#include <vector>

namespace gmentropy {

/// Nonnegative integer q-tuple t with sum(t) == order.
struct Composition {
    std::vector<int> t;
    int order = 0;
};

/// binom(a + q - 1, q - 1): the number of compositions of a into q parts.
/// Throws ResourceLimitError above 1e8.
std::uint64_t composition_count(int q, int a);

/// Streams the compositions of `a` into `q` nonnegative parts in ascending
/// lexicographic order, holding only the current tuple.
///
///     CompositionStream stream(2, 2);
///     while (stream.next()) use(stream.current());   // (0,2) (1,1) (2,0)
class CompositionStream {
public:
    CompositionStream(int q, int a);

    /// Only the tuples whose first part equals `first` (0 <= first <= a).
    static CompositionStream with_first(int q, int a, int first);

    /// Advances to the next composition; false once exhausted.
    bool next();

    const Composition& current() const { return current_; }

private:
    CompositionStream(int q, int a, int first, bool fixed);

    Composition current_;
    bool started_ = false;
    bool done_ = false;
    int lowest_free_ = 0;
};

}  // namespace gmentropy

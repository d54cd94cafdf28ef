#ifndef ALTRANK_PARALLEL_HPP
#define ALTRANK_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace altrank {

/// Worker count: ALTRANK_THREADS if set (>= 1), else hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("ALTRANK_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

/// Half-open index range [begin, end).
struct IndexRange {
    std::uint64_t begin;
    std::uint64_t end;
};

/// Splits [0, total) into `parts` contiguous ranges of near-equal size.
inline std::vector<IndexRange> partition_range(std::uint64_t total, std::uint64_t parts)
{
    parts = std::max<std::uint64_t>(1, std::min(parts, std::max<std::uint64_t>(total, 1)));
    std::vector<IndexRange> out;
    out.reserve(parts);
    const std::uint64_t base = total / parts, extra = total % parts;
    std::uint64_t at = 0;
    for (std::uint64_t k = 0; k < parts; ++k) {
        const std::uint64_t len = base + (k < extra ? 1 : 0);
        out.push_back({at, at + len});
        at += len;
    }
    return out;
}

/// Evaluates fn on each chunk of [0, total) and returns the per-chunk results
/// in chunk order, so folds over the result are independent of scheduling.
template <class Fn>
auto map_chunks(std::uint64_t total, Fn&& fn, unsigned workers = worker_count())
{
    using R = decltype(fn(IndexRange{0, 0}));
    // Several chunks per worker keeps load balanced when cost varies by index.
    const std::uint64_t chunks = workers <= 1 ? 1 : std::uint64_t{workers} * 4;
    const auto ranges = partition_range(total, chunks);
    std::vector<R> results(ranges.size());
    if (workers <= 1 || ranges.size() == 1) {
        for (std::size_t k = 0; k < ranges.size(); ++k) results[k] = fn(ranges[k]);
        return results;
    }
    std::vector<std::exception_ptr> errors(ranges.size());
    std::vector<std::thread> pool;
    std::atomic_size_t next{0};
    for (unsigned w = 0; w < std::min<std::size_t>(workers, ranges.size()); ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < ranges.size(); k = next++) {
                try {
                    results[k] = fn(ranges[k]);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

/// Counter-based 64-bit mixer (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent stream seed for item `index` under `seed`; draws for one
/// index never depend on how indices are split across workers.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ull));
}

} // namespace altrank

#endif // ALTRANK_PARALLEL_HPP

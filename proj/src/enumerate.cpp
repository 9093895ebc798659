#include "popstack/enumerate.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace popstack {

namespace {

constexpr std::size_t kMaxChunks = 64;
// 20! is the largest factorial that fits in 64 bits.
constexpr std::size_t kMaxFactorialArg = 20;

}  // namespace

EnumerationLimits EnumerationLimits::from_env() {
    EnumerationLimits limits;
    if (const char* raw = std::getenv("POPSTACK_MAX_ENUM_LEN"); raw != nullptr && *raw != '\0') {
        const std::string_view text(raw);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0 || value > 16) {
            throw InvalidInput("POPSTACK_MAX_ENUM_LEN must be an integer in 1..16, got '" +
                               std::string(text) + "'");
        }
        limits.max_length = value;
    }
    return limits;
}

unsigned EnumerationLimits::worker_count() const noexcept {
    if (jobs != 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

void EnumerationLimits::require(std::size_t length, const std::string& what) const {
    if (length > max_length) {
        throw BudgetExceeded(what + " needs permutations of length " + std::to_string(length) +
                             ", beyond the enumeration limit of " + std::to_string(max_length) +
                             " (raise it with POPSTACK_MAX_ENUM_LEN)");
    }
}

std::uint64_t factorial(std::size_t n) {
    if (n > kMaxFactorialArg) throw std::overflow_error("factorial overflows 64 bits");
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<Entry> unrank_permutation(std::size_t n, std::uint64_t rank) {
    if (rank >= factorial(n)) throw InvalidInput("permutation rank out of range");
    std::vector<Entry> pool(n);
    std::iota(pool.begin(), pool.end(), Entry{1});
    std::vector<Entry> out;
    out.reserve(n);
    for (std::size_t i = n; i > 0; --i) {
        const std::uint64_t block = factorial(i - 1);
        const auto pick = static_cast<std::size_t>(rank / block);
        rank %= block;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

void run_chunks(std::size_t chunks, unsigned jobs, const std::function<void(std::size_t)>& work) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) work(c);
        return;
    }

    std::mutex mutex;
    std::size_t next = 0;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            std::size_t chunk = 0;
            {
                std::lock_guard lock(mutex);
                if (next == chunks || failure) return;
                chunk = next++;
            }
            try {
                work(chunk);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

std::size_t permutation_chunk_count(std::size_t n) {
    return static_cast<std::size_t>(std::min<std::uint64_t>(factorial(n), kMaxChunks));
}

void for_each_permutation_in_chunk(std::size_t n, std::size_t chunk,
                                   const std::function<void(const Permutation&)>& visit) {
    const std::uint64_t total = factorial(n);
    const std::uint64_t chunks = permutation_chunk_count(n);
    const std::uint64_t begin = total * chunk / chunks;
    const std::uint64_t end = total * (chunk + 1) / chunks;
    if (begin >= end) return;

    std::vector<Entry> current = unrank_permutation(n, begin);
    for (std::uint64_t r = begin; r < end; ++r) {
        visit(Permutation(current));
        std::next_permutation(current.begin(), current.end());
    }
}

std::vector<Permutation> collect_permutations(std::size_t n, unsigned jobs,
                                              const std::function<bool(const Permutation&)>& pred) {
    const std::size_t chunks = permutation_chunk_count(n);
    std::vector<std::vector<Permutation>> parts(chunks);
    run_chunks(chunks, jobs, [&](std::size_t c) {
        for_each_permutation_in_chunk(n, c, [&](const Permutation& p) {
            if (pred(p)) parts[c].push_back(p);
        });
    });
    std::vector<Permutation> out;
    for (auto& part : parts) {
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

std::uint64_t count_permutations(std::size_t n, unsigned jobs,
                                 const std::function<bool(const Permutation&)>& pred) {
    const std::size_t chunks = permutation_chunk_count(n);
    std::vector<std::uint64_t> parts(chunks, 0);
    run_chunks(chunks, jobs, [&](std::size_t c) {
        for_each_permutation_in_chunk(n, c, [&](const Permutation& p) {
            if (pred(p)) ++parts[c];
        });
    });
    return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

}  // namespace popstack

#include "sublin/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sublin {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * (index + 1));
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0}) return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return lo + r % range;
}

SpacePtr random_space(Rng& rng, std::size_t min_outcomes, std::size_t max_outcomes) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(min_outcomes, max_outcomes));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("w" + std::to_string(i));
    return make_space(std::move(labels));
}

Measure random_measure(Rng& rng, const SpacePtr& space) {
    const std::size_t m = space->size();
    std::vector<double> w(m);
    for (;;) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            // exponential draws give a uniform point on the simplex; some zeros
            // keep faces of the simplex represented
            w[i] = (m > 1 && rng.coin(0.1)) ? 0.0 : -std::log1p(-rng.uniform());
            sum += w[i];
        }
        if (sum <= 0.0) continue;
        for (auto& x : w) x /= sum;
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) total += w[i];
        w[m - 1] = std::max(0.0, 1.0 - total);
        return Measure(space, w);
    }
}

CredalSet random_credal_set(Rng& rng, const SpacePtr& space, std::size_t min_vertices, std::size_t max_vertices) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(min_vertices, max_vertices));
    std::vector<Measure> v;
    v.reserve(k);
    for (std::size_t i = 0; i < k; ++i) v.push_back(random_measure(rng, space));
    return CredalSet(space, std::move(v));
}

RandomVar random_var(Rng& rng, const SpacePtr& space, double lo, double hi) {
    std::vector<double> x(space->size());
    for (auto& v : x) {
        // mix of grid values (ties and integers) and continuous values
        v = rng.coin(0.3) ? std::round(rng.uniform(lo, hi)) : rng.uniform(lo, hi);
    }
    return RandomVar(space, std::move(x));
}

EventSet random_event(Rng& rng, const SpacePtr& space) {
    std::vector<bool> m(space->size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.coin();
    return EventSet(space, std::move(m));
}

std::size_t default_thread_count() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace sublin

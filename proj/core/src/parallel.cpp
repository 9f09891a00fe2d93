#include "csd/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace csd {

int default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(int begin, int end, int jobs, const std::function<void(int)>& fn) {
    const int count = end - begin;
    if (count <= 0) {
        return;
    }
    if (jobs <= 0) {
        jobs = default_jobs();
    }
    jobs = std::min(jobs, count);
    if (jobs == 1 || count < 2) {
        for (int i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<int> next{begin};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= end || failed.load()) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                bool expected = false;
                if (failed.compare_exchange_strong(expected, true)) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs) - 1);
    for (int t = 1; t < jobs; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto& th : threads) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

double pairwise_sum(const double* data, std::size_t n) {
    if (n == 0) {
        return 0.0;
    }
    if (n <= 8) {
        double s = data[0];
        for (std::size_t i = 1; i < n; ++i) {
            s += data[i];
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace csd

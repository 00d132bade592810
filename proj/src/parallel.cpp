#include "anyonprop/parallel.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "anyonprop/errors.hpp"

namespace anyonprop {

int worker_count() {
    int n = (int)std::thread::hardware_concurrency();
    if (n < 1) n = 1;
    const char* env = std::getenv("ANYONPROP_THREADS");
    if (env != nullptr && *env != '\0') {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 1)
            throw UsageError("ANYONPROP_THREADS must be a positive integer");
        if (cap < n) n = (int)cap;
    }
    return n;
}

void parallel_for(long n, const std::function<void(long)>& f) {
    if (n <= 0) return;
    const int workers = (int)std::min<long>(worker_count(), n);
    if (workers == 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve((size_t)workers);
    for (int w = 0; w < workers; ++w) {
        const long lo = n * w / workers;
        const long hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace anyonprop

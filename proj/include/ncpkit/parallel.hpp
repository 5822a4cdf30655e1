// Copyright 2026 The ncpkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NCPKIT_PARALLEL_HPP_
#define NCPKIT_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ncpkit {

/// Runs task(i) for i in [0, tasks) on up to `workers` threads. Results are
/// written by index, so output order never depends on scheduling. The first
/// exception thrown by a task is rethrown on the caller's thread.
template <typename Task>
void parallel_for(std::size_t tasks, unsigned workers, Task &&task) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks)
                return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(tasks);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

/// Maps task over [0, tasks) and concatenates the per-task vectors in index
/// order.
template <typename T, typename Task>
std::vector<T> parallel_concat(std::size_t tasks, unsigned workers, Task &&task) {
    std::vector<std::vector<T>> parts(tasks);
    parallel_for(tasks, workers, [&](std::size_t i) { parts[i] = task(i); });
    std::vector<T> out;
    std::size_t total = 0;
    for (const auto &p : parts)
        total += p.size();
    out.reserve(total);
    for (auto &p : parts)
        for (auto &x : p)
            out.push_back(std::move(x));
    return out;
}

} // namespace ncpkit

#endif // NCPKIT_PARALLEL_HPP_

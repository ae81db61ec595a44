// SPDX-License-Identifier: Apache-2.0
//
// specmimo: exact MIMO channel synthesis for links reflected off a smooth planar surface
// Copyright (C) 2026 The specmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SPECMIMO_PARALLEL_HPP
#define SPECMIMO_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace specmimo
{
    // Thread count from the SPECMIMO_THREADS environment variable, else 1.
    int default_threads();

    // Runs fn(i) for i in [0, n) on up to `threads` workers with a static
    // contiguous partition. The first exception thrown by any worker is rethrown.
    template <class Fn>
    void parallel_for(std::size_t n, int threads, Fn &&fn)
    {
        const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t)
        {
            pool.emplace_back([&, t] {
                const std::size_t begin = n * t / workers;
                const std::size_t end = n * (t + 1) / workers;
                try
                {
                    for (std::size_t i = begin; i < end; ++i)
                        fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
        }
        for (auto &th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }
}

#endif

#include "bootbench/worker_pool.hpp"

#include <algorithm>
#include <stdexcept>

namespace bootbench {

WorkerPool::WorkerPool(unsigned workers) {
    if (workers == 0) {
        throw std::invalid_argument("worker pool needs at least one worker");
    }
    threads_.reserve(workers - 1);
    for (unsigned i = 1; i < workers; ++i) {
        threads_.emplace_back([this, i] { worker_loop(i); });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_) {
        t.join();
    }
}

void WorkerPool::run(unsigned active, const std::function<void(unsigned)>& fn) {
    active = std::clamp(active, 1u, size());
    if (active == 1) {
        fn(0);
        return;
    }
    {
        std::lock_guard lock(mutex_);
        job_ = &fn;
        active_ = active;
        pending_ = active - 1;
        error_ = nullptr;
        ++generation_;
    }
    start_cv_.notify_all();

    std::exception_ptr own_error;
    try {
        fn(0);
    } catch (...) {
        own_error = std::current_exception();
    }

    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
    if (own_error) {
        std::rethrow_exception(own_error);
    }
    if (error_) {
        std::rethrow_exception(error_);
    }
}

void WorkerPool::worker_loop(unsigned index) {
    std::uint64_t seen = 0;
    for (;;) {
        const std::function<void(unsigned)>* job = nullptr;
        {
            std::unique_lock lock(mutex_);
            start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
            if (stopping_) {
                return;
            }
            seen = generation_;
            if (index >= active_) {
                continue;
            }
            job = job_;
        }
        std::exception_ptr err;
        try {
            (*job)(index);
        } catch (...) {
            err = std::current_exception();
        }
        {
            std::lock_guard lock(mutex_);
            if (err && !error_) {
                error_ = err;
            }
            --pending_;
        }
        done_cv_.notify_one();
    }
}

WorkerPool& WorkerPool::shared() {
    static WorkerPool pool(std::max(1u, std::thread::hardware_concurrency()));
    return pool;
}

} // namespace bootbench

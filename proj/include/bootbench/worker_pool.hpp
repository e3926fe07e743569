#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bootbench {

/// Fork-join pool of persistent OS threads. The calling thread acts as
/// worker 0, so a pool of size 1 spawns no threads at all.
class WorkerPool {
public:
    explicit WorkerPool(unsigned workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    unsigned size() const noexcept { return static_cast<unsigned>(threads_.size()) + 1; }

    /// Calls fn(w) for w in [0, min(active, size())) and blocks until all
    /// calls return. The first exception thrown by any worker is rethrown.
    void run(unsigned active, const std::function<void(unsigned)>& fn);

    /// Process-wide pool sized to the hardware concurrency.
    static WorkerPool& shared();

private:
    void worker_loop(unsigned index);

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(unsigned)>* job_ = nullptr;
    unsigned active_ = 0;
    unsigned pending_ = 0;
    std::uint64_t generation_ = 0;
    bool stopping_ = false;
    std::exception_ptr error_;
};

} // namespace bootbench

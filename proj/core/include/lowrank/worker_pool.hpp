#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lowrank {

/// Fixed set of persistent worker threads. parallel_for(n, fn) runs fn(i) for
/// i in [0, n) with static assignment (worker w handles i = w, w + W, ...) and
/// returns once every call has finished. With one worker, calls run inline on
/// the calling thread.
class WorkerPool {
 public:
  explicit WorkerPool(int workers = 1);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workers() const noexcept { return workers_; }

  void parallel_for(int n, const std::function<void(int)>& fn);

 private:
  void run(int worker);

  int workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_;
  std::condition_variable done_;
  const std::function<void(int)>* task_ = nullptr;
  int task_size_ = 0;
  std::size_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace lowrank

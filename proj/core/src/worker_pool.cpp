#include "lowrank/worker_pool.hpp"

#include "lowrank/errors.hpp"

namespace lowrank {

WorkerPool::WorkerPool(int workers) : workers_(workers) {
  if (workers < 1) throw ConfigError("WorkerPool: at least one worker required");
  // Worker 0 is the calling thread.
  for (int w = 1; w < workers_; ++w) threads_.emplace_back([this, w] { run(w); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  start_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::parallel_for(int n, const std::function<void(int)>& fn) {
  if (workers_ == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    task_ = &fn;
    task_size_ = n;
    pending_ = workers_ - 1;
    error_ = nullptr;
    ++generation_;
  }
  start_.notify_all();

  std::exception_ptr local;
  try {
    for (int i = 0; i < n; i += workers_) fn(i);
  } catch (...) {
    local = std::current_exception();
  }

  std::unique_lock lock(mutex_);
  done_.wait(lock, [this] { return pending_ == 0; });
  task_ = nullptr;
  if (local) std::rethrow_exception(local);
  if (error_) std::rethrow_exception(error_);
}

void WorkerPool::run(int worker) {
  std::size_t seen = 0;
  for (;;) {
    const std::function<void(int)>* task;
    int n;
    {
      std::unique_lock lock(mutex_);
      start_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      task = task_;
      n = task_size_;
    }
    std::exception_ptr local;
    try {
      for (int i = worker; i < n; i += workers_) (*task)(i);
    } catch (...) {
      local = std::current_exception();
    }
    {
      std::lock_guard lock(mutex_);
      if (local && !error_) error_ = local;
      --pending_;
    }
    done_.notify_one();
  }
}

}  // namespace lowrank

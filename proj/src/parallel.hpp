#pragma once

#include <exception>
#include <mutex>
#include <utility>

namespace cminer::detail {

// Exceptions must not escape an OpenMP region. Run loop bodies through
// capture() and call rethrow() after the region ends.
class ExceptionSlot {
 public:
  template <typename F>
  void capture(F&& body) noexcept {
    try {
      std::forward<F>(body)();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace cminer::detail

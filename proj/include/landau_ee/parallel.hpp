#pragma once

#include <exception>

namespace landau_ee {

/// Carries the first exception thrown inside an OpenMP region out of it.
class ExceptionSlot {
public:
    template <class F>
    void run(F&& f) noexcept {
        try {
            f();
        } catch (...) {
#pragma omp critical(landau_ee_exception_slot)
            if (!ptr_) ptr_ = std::current_exception();
        }
    }
    bool failed() const { return static_cast<bool>(ptr_); }
    void rethrow() const {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::exception_ptr ptr_;
};

/// Number of OpenMP threads a parallel region would use (1 without OpenMP).
int max_threads();

/// Sets the default thread count for later regions; n <= 0 keeps the runtime default.
void set_threads(int n);

}  // namespace landau_ee

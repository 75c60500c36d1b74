#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace aqm::detail {

namespace {

// FFTW's planner is not thread-safe; execution with new arrays is. Plans are
// created once per (size, direction) under a lock and reused. FFTW_ESTIMATE
// keeps plan selection deterministic between runs.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto* buf = fftw_alloc_complex(static_cast<size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(std::span<std::complex<double>> data, int sign) {
    const int n = static_cast<int>(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(cache().get(n, sign), ptr, ptr);
}

}  // namespace

void fft_forward(std::span<std::complex<double>> data) { execute(data, FFTW_FORWARD); }

void fft_backward(std::span<std::complex<double>> data) { execute(data, FFTW_BACKWARD); }

}  // namespace aqm::detail

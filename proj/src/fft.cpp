#include "nls/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "nls/error.hpp"

namespace nls::fft {
namespace {

// fftw_plan_* is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    Plan(std::size_t n, int sign) : n_(n) {
        in_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, sign, FFTW_ESTIMATE);
    }
    ~Plan() {
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan_);
        }
        fftw_free(in_);
        fftw_free(out_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    void run(std::span<const cplx> in, std::span<cplx> out) {
        std::memcpy(in_, in.data(), sizeof(fftw_complex) * n_);
        fftw_execute(plan_);
        std::memcpy(static_cast<void*>(out.data()), out_, sizeof(fftw_complex) * n_);
    }

private:
    std::size_t n_;
    fftw_complex* in_ = nullptr;
    fftw_complex* out_ = nullptr;
    fftw_plan plan_ = nullptr;
};

Plan& plan_for(std::size_t n, int sign) {
    thread_local std::map<std::pair<std::size_t, int>, std::unique_ptr<Plan>> cache;
    auto& slot = cache[{n, sign}];
    if (!slot) {
        slot = std::make_unique<Plan>(n, sign);
    }
    return *slot;
}

void check_sizes(std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != out.size() || in.empty()) {
        throw Error(ErrorKind::InvalidArgument, "fft: input and output sizes differ or are empty");
    }
}

} // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
    check_sizes(in, out);
    plan_for(in.size(), FFTW_FORWARD).run(in, out);
}

void inverse(std::span<const cplx> in, std::span<cplx> out) {
    check_sizes(in, out);
    plan_for(in.size(), FFTW_BACKWARD).run(in, out);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (auto& z : out) {
        z *= scale;
    }
}

std::vector<cplx> forward(std::span<const cplx> in) {
    std::vector<cplx> out(in.size());
    forward(in, out);
    return out;
}

std::vector<cplx> inverse(std::span<const cplx> in) {
    std::vector<cplx> out(in.size());
    inverse(in, out);
    return out;
}

} // namespace nls::fft

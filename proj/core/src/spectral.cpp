#include "emph/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <string>
#include <vector>

#include "emph/errors.hpp"

namespace emph {

namespace {

// FFTW plan creation/destruction mutates global planner state and is not
// thread-safe; execution of a private plan is. Serialize the planner only.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Full half-spectrum of the 1/n-normalized DFT.
std::vector<std::complex<double>> half_spectrum(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    const std::size_t bins = n / 2 + 1;

    std::vector<double> in(samples.begin(), samples.end());
    std::vector<std::complex<double>> out(bins);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    // FFTW_ESTIMATE may still touch the input during planning; restore it.
    std::copy(samples.begin(), samples.end(), in.begin());
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : out) c *= scale;
    return out;
}

} // namespace

LiouvilleRadii fourier_amplitudes(const TimeSeries& series,
                                  const std::vector<int>& modes) {
    const std::size_t n = series.samples.size();
    if (n < 2) {
        throw input_error("fourier_amplitudes: series length must be at least 2, got " +
                          std::to_string(n));
    }
    for (double v : series.samples) {
        if (!std::isfinite(v)) {
            throw input_error("fourier_amplitudes: series contains a non-finite sample");
        }
    }
    const int nyquist = static_cast<int>(n / 2);
    int previous = 0;
    for (int mode : modes) {
        if (mode < 1 || mode > nyquist) {
            throw domain_error("fourier_amplitudes: mode " + std::to_string(mode) +
                               " outside [1, " + std::to_string(nyquist) + "]");
        }
        if (mode <= previous) {
            throw domain_error("fourier_amplitudes: modes must be strictly increasing");
        }
        previous = mode;
    }

    const auto spectrum = half_spectrum(series.samples);

    LiouvilleRadii result;
    result.modes = modes;
    result.radii.reserve(modes.size());
    for (int mode : modes) {
        result.radii.push_back(2.0 * std::abs(spectrum[static_cast<std::size_t>(mode)]));
    }
    return result;
}

} // namespace emph

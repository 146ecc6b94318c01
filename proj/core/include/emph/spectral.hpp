#pragma once

#include <vector>

namespace emph {

// Evenly sampled real signal on [0, 2pi); samples[i] is f(2*pi*i/n).
struct TimeSeries {
    std::vector<double> samples;
    int label = -1; // class id; -1 means unlabeled
};

// Per-mode torus radii r_L = 2|f_hat(L)| for a strictly increasing set of
// Fourier mode indices. The radii define the product-of-circles geometry the
// barcode module filters.
struct LiouvilleRadii {
    std::vector<int> modes;
    std::vector<double> radii;

    std::size_t size() const { return modes.size(); }
};

// Computes r_L = 2|f_hat(L)| with the 1/n DFT normalization, so a pure
// cos(L t) input yields r_L = 1. Phases are discarded. Every requested mode
// must satisfy 1 <= L <= floor(n/2); for even n the Nyquist mode n/2 is
// allowed but its amplitude is halved by conjugate symmetry.
LiouvilleRadii fourier_amplitudes(const TimeSeries& series,
                                  const std::vector<int>& modes);

} // namespace emph

#include "emph/barcode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "emph/errors.hpp"

namespace emph {

namespace {

constexpr double kPi = std::numbers::pi;

// Mapped filtration time of one unscaled threshold, with the segment that
// produced it (segment 1 for rays).
struct MappedPoint {
    double t = 0.0;
    int segment = 1;
};

// Shared assembly of the exact barcode: one interval per mode from
// circle_interval, each endpoint pushed through `map` (mode index, unscaled
// threshold) -> MappedPoint, intersected as (max births, min deaths].
// Arg-extremes keep the smallest mode index on ties; a max birth of 0 or a
// min death of +inf is the trivial contribution and records index -1.
template <typename Map>
BarcodeResult assemble_barcode(const LiouvilleRadii& radii, int n, Map&& map) {
    if (n < 0) throw input_error("barcode: homology dimension must be nonnegative");
    const int N = static_cast<int>(radii.size());

    BarcodeResult out;
    out.barcode.dimension = n;

    for (auto& comp : enumerate_compositions(N, n)) {
        double birth = 0.0;
        double death = kInfiniteDeath;
        int birth_mode = -1;
        int death_mode = -1;
        std::vector<int> birth_seg(N, 0), death_seg(N, 0);
        bool empty = false;

        for (int L = 0; L < N; ++L) {
            if (comp[L] == 0) continue; // contributes (0, inf)
            CircleInterval iv = circle_interval(radii.radii[L], comp[L]);
            if (iv.empty) {
                empty = true;
                break;
            }
            MappedPoint mb = map(L, iv.birth);
            MappedPoint md = map(L, iv.death);
            birth_seg[L] = mb.segment;
            death_seg[L] = md.segment;
            if (mb.t > birth) {
                birth = mb.t;
                birth_mode = L;
            }
            if (md.t < death) {
                death = md.t;
                death_mode = L;
            }
        }
        if (empty || !(birth < death)) continue;

        out.barcode.bars.push_back({birth, death, n});
        out.origins.push_back({comp, birth_mode, death_mode,
                               std::move(birth_seg), std::move(death_seg)});
    }

    // Sort bars (and origins in lockstep) by (birth, death, composition).
    std::vector<std::size_t> order(out.barcode.bars.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const Bar& a = out.barcode.bars[i];
        const Bar& b = out.barcode.bars[j];
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.death != b.death) return a.death < b.death;
        return out.origins[i].composition < out.origins[j].composition;
    });
    BarcodeResult sorted;
    sorted.barcode.dimension = n;
    sorted.barcode.bars.reserve(order.size());
    sorted.origins.reserve(order.size());
    for (std::size_t i : order) {
        sorted.barcode.bars.push_back(out.barcode.bars[i]);
        sorted.origins.push_back(std::move(out.origins[i]));
    }
    return sorted;
}

void validate_direction(const std::vector<double>& a) {
    if (a.empty()) throw domain_error("barcode: direction vector is empty");
    for (double v : a) {
        if (!(v > 0.0)) {
            throw domain_error("barcode: direction components must be strictly positive");
        }
    }
}

std::vector<double> normalized(const std::vector<double>& a) {
    double norm2 = 0.0;
    for (double v : a) norm2 += v * v;
    const double norm = std::sqrt(norm2);
    std::vector<double> rho(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rho[i] = a[i] / norm;
    return rho;
}

} // namespace

// ============================================================================
// Composition enumeration
// ============================================================================

namespace {

void compositions_rec(int N, int remaining, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
    const int pos = static_cast<int>(current.size());
    if (pos == N) {
        if (remaining == 0) out.push_back(current);
        return;
    }
    // Remaining positions can absorb anything from 0 to `remaining`, entry
    // by entry; allowed entries are 0 and odd numbers.
    current.push_back(0);
    compositions_rec(N, remaining, current, out);
    current.pop_back();
    for (int v = 1; v <= remaining; v += 2) {
        current.push_back(v);
        compositions_rec(N, remaining - v, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> enumerate_compositions(int N, int n) {
    if (N < 1) throw input_error("enumerate_compositions: N must be positive");
    if (n < 0) throw input_error("enumerate_compositions: n must be nonnegative");

    std::vector<std::vector<int>> out;
    std::vector<int> current;
    compositions_rec(N, n, current, out);

    // Deterministic order: fewest active modes first, then lexicographically
    // descending, so pure single-mode compositions lead in mode order:
    // (N=3, n=3) -> (3,0,0), (0,3,0), (0,0,3), (1,1,1).
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const auto nz = [](const std::vector<int>& c) {
            return std::count_if(c.begin(), c.end(), [](int v) { return v != 0; });
        };
        const auto na = nz(a), nb = nz(b);
        if (na != nb) return na < nb;
        return a > b;
    });
    return out;
}

// ============================================================================
// Circle intervals
// ============================================================================

CircleInterval circle_interval(double r, int n_L) {
    if (n_L < 0) throw domain_error("circle_interval: negative homology count");
    if (n_L == 0) {
        return {0.0, kInfiniteDeath, false, true};
    }
    if (n_L % 2 == 0) {
        throw domain_error("circle_interval: homology count " + std::to_string(n_L) +
                           " is even; a circle has none");
    }
    if (!(r >= 0.0)) throw domain_error("circle_interval: radius must be nonnegative");
    if (r == 0.0) {
        return {0.0, 0.0, true, false}; // degenerate circle, no cycle
    }
    const int k = (n_L - 1) / 2;
    const double birth = 2.0 * r * std::sin(kPi * k / (2.0 * k + 1.0));
    const double death = 2.0 * r * std::sin(kPi * (k + 1.0) / (2.0 * k + 3.0));
    return {birth, death, false, false};
}

// ============================================================================
// Ray and curve barcodes
// ============================================================================

BarcodeResult ray_barcode(const LiouvilleRadii& radii, const std::vector<double>& a,
                          int n) {
    validate_direction(a);
    if (a.size() != radii.size()) {
        throw input_error("ray_barcode: direction length " + std::to_string(a.size()) +
                          " does not match mode count " + std::to_string(radii.size()));
    }
    const double sqrtN = std::sqrt(static_cast<double>(a.size()));
    const std::vector<double> rho = normalized(a);
    return assemble_barcode(radii, n, [&](int L, double tau) {
        return MappedPoint{(tau / sqrtN) / rho[L], 1};
    });
}

BarcodeResult curve_barcode(const LiouvilleRadii& radii, const FiltrationCurve& curve,
                            int n) {
    const int R = curve.segment_count();
    if (R < 1) throw input_error("curve_barcode: curve needs at least one segment");
    const int N = curve.parameter_count();
    if (static_cast<std::size_t>(N) != radii.size()) {
        throw input_error("curve_barcode: direction width does not match mode count");
    }
    if (R > 1 && !(curve.Q > 0.0)) {
        throw input_error("curve_barcode: multi-segment curves need a positive horizon Q");
    }
    for (auto& a : curve.directions) {
        validate_direction(a);
        if (static_cast<int>(a.size()) != N) {
            throw input_error("curve_barcode: inconsistent direction widths");
        }
    }

    const double sqrtN = std::sqrt(static_cast<double>(N));
    const double seg_len = curve.Q / R; // Q/R; unused when R = 1

    // rho_by_seg[s][L]; cum[s][L] = sum_{i<=s} rho^i_L (cum[0] = 0).
    std::vector<std::vector<double>> rho_by_seg(R);
    std::vector<std::vector<double>> cum(R + 1, std::vector<double>(N, 0.0));
    for (int s = 0; s < R; ++s) {
        rho_by_seg[s] = normalized(curve.directions[s]);
        for (int L = 0; L < N; ++L) cum[s + 1][L] = cum[s][L] + rho_by_seg[s][L];
    }

    return assemble_barcode(radii, n, [&](int L, double tau) {
        // Smallest segment whose knot value reaches tau; beyond the horizon
        // the final segment extends indefinitely.
        int seg = R;
        for (int s = 1; s <= R; ++s) {
            if (sqrtN * seg_len * cum[s][L] >= tau) {
                seg = s;
                break;
            }
        }
        const double t = (seg - 1) * seg_len +
                         (tau / sqrtN - seg_len * cum[seg - 1][L]) / rho_by_seg[seg - 1][L];
        return MappedPoint{t, seg};
    });
}

// ============================================================================
// Piecewise-linear refinement check
// ============================================================================

namespace {

// Linear interpolation of the sampled curve at arc length u (u may exceed
// the table; the final chord is extended).
std::vector<double> table_point(const std::vector<std::vector<double>>& samples,
                                const std::vector<double>& arc, double u) {
    const std::size_t M = samples.size();
    std::size_t j = 1;
    while (j < M - 1 && arc[j] < u) ++j;
    const double span = arc[j] - arc[j - 1];
    const double w = (u - arc[j - 1]) / span;
    std::vector<double> p(samples[0].size());
    for (std::size_t L = 0; L < p.size(); ++L) {
        p[L] = samples[j - 1][L] + w * (samples[j][L] - samples[j - 1][L]);
    }
    return p;
}

} // namespace

RefineReport refine_check(const LiouvilleRadii& radii,
                          const std::vector<std::vector<double>>& curve_samples,
                          const std::vector<int>& segment_counts, int n) {
    const std::size_t M = curve_samples.size();
    const std::size_t N = radii.size();
    if (M < 2) throw input_error("refine_check: need at least two curve samples");
    for (auto& row : curve_samples) {
        if (row.size() != N) {
            throw input_error("refine_check: sample width does not match mode count");
        }
    }
    for (double v : curve_samples.front()) {
        if (std::abs(v) > 1e-12) {
            throw input_error("refine_check: sampled curve must start at the origin");
        }
    }
    for (std::size_t i = 1; i < M; ++i) {
        for (std::size_t L = 0; L < N; ++L) {
            if (!(curve_samples[i][L] > curve_samples[i - 1][L])) {
                throw input_error("refine_check: sampled curve must be strictly "
                                  "increasing in every component (row " +
                                  std::to_string(i) + ")");
            }
        }
    }

    const double sqrtN = std::sqrt(static_cast<double>(N));

    // Cumulative chord length = arc length of the sampled polyline. The
    // filtration curve is this path at constant speed sqrt(N), i.e.
    // c(t) = gamma(sqrt(N) t) with horizon Q = total/sqrt(N).
    std::vector<double> arc(M, 0.0);
    for (std::size_t i = 1; i < M; ++i) {
        double d2 = 0.0;
        for (std::size_t L = 0; L < N; ++L) {
            const double d = curve_samples[i][L] - curve_samples[i - 1][L];
            d2 += d * d;
        }
        arc[i] = arc[i - 1] + std::sqrt(d2);
    }
    const double total = arc.back();
    const double Q = total / sqrtN;

    // Limit barcode: invert the sampled component directly. gamma_L(u) = tau
    // at arc length u; the crossing time is u/sqrt(N).
    auto limit_result = assemble_barcode(radii, n, [&](int L, double tau) {
        const std::size_t Lz = static_cast<std::size_t>(L);
        if (tau <= curve_samples.back()[Lz]) {
            std::size_t j = 1;
            while (j < M - 1 && curve_samples[j][Lz] < tau) ++j;
            const double lo = curve_samples[j - 1][Lz];
            const double hi = curve_samples[j][Lz];
            const double u = arc[j - 1] + (tau - lo) / (hi - lo) * (arc[j] - arc[j - 1]);
            return MappedPoint{u / sqrtN, 1};
        }
        // Beyond the table: extend the final chord.
        const double chord = arc[M - 1] - arc[M - 2];
        const double rate = (curve_samples[M - 1][Lz] - curve_samples[M - 2][Lz]) / chord;
        const double u = total + (tau - curve_samples[M - 1][Lz]) / rate;
        return MappedPoint{u / sqrtN, 1};
    });

    RefineReport report;
    report.limit = limit_result.barcode;

    for (int R : segment_counts) {
        if (R < 1) throw input_error("refine_check: segment counts must be positive");
        FiltrationCurve curve;
        curve.Q = Q;
        curve.directions.reserve(R);
        std::vector<double> prev = table_point(curve_samples, arc, 0.0);
        for (int s = 1; s <= R; ++s) {
            std::vector<double> next = table_point(curve_samples, arc, total * s / R);
            std::vector<double> dir(N);
            for (std::size_t L = 0; L < N; ++L) dir[L] = next[L] - prev[L];
            curve.directions.push_back(std::move(dir));
            prev = std::move(next);
        }

        BarcodeResult approx = curve_barcode(radii, curve, n);

        // Compare endpoints matched by composition; a bar present on only
        // one side counts with its full persistence.
        double max_err = 0.0;
        auto key = [](const std::vector<int>& c) {
            std::string k;
            for (int v : c) k += std::to_string(v) + ",";
            return k;
        };
        std::vector<std::pair<std::string, Bar>> limit_by_comp;
        std::vector<bool> matched(limit_result.origins.size(), false);
        for (std::size_t i = 0; i < limit_result.origins.size(); ++i) {
            limit_by_comp.emplace_back(key(limit_result.origins[i].composition),
                                       limit_result.barcode.bars[i]);
        }
        for (std::size_t i = 0; i < approx.origins.size(); ++i) {
            const std::string k = key(approx.origins[i].composition);
            const Bar& bar = approx.barcode.bars[i];
            bool found = false;
            for (std::size_t m = 0; m < limit_by_comp.size(); ++m) {
                if (limit_by_comp[m].first != k) continue;
                found = true;
                matched[m] = true;
                const Bar& lbar = limit_by_comp[m].second;
                max_err = std::max(max_err, std::abs(bar.birth - lbar.birth));
                if (!(std::isinf(bar.death) && std::isinf(lbar.death))) {
                    max_err = std::max(max_err, std::abs(bar.death - lbar.death));
                }
                break;
            }
            if (!found) max_err = std::max(max_err, bar.persistence());
        }
        for (std::size_t m = 0; m < limit_by_comp.size(); ++m) {
            if (!matched[m]) {
                max_err = std::max(max_err, limit_by_comp[m].second.persistence());
            }
        }
        report.segment_counts.push_back(R);
        report.max_errors.push_back(max_err);
    }
    return report;
}

} // namespace emph

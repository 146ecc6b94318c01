#include "emph/multipers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "emph/errors.hpp"

namespace emph::multipers {

namespace {

using Point = std::array<double, 2>;

Point operator+(Point a, Point b) { return {a[0] + b[0], a[1] + b[1]}; }
Point operator-(Point a, Point b) { return {a[0] - b[0], a[1] - b[1]}; }
Point operator*(double s, Point a) { return {s * a[0], s * a[1]}; }
double dot(Point a, Point b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(Point a) { return std::sqrt(dot(a, a)); }
double cross(Point o, Point a, Point b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

void validate(const TwoParamGrid& grid) {
    if (grid.n < 2) throw input_error("two-parameter grid: n must be at least 2");
    if (!(grid.b > grid.a) || !(grid.d > grid.c)) {
        throw input_error("two-parameter grid: rectangle must be nonempty");
    }
    if (!(grid.sigma > 0.0)) {
        throw input_error("two-parameter grid: sigma must be positive");
    }
    if (grid.ray_count < 1) {
        throw input_error("two-parameter grid: need at least one ray");
    }
}

// Squared distance from p to the segment [s0, s1] (t clamped to [0, 1]) or
// to the ray s0 + t (s1 - s0), t >= 0, when `unbounded`.
double dist2_to_piece(Point p, Point s0, Point dir_unit, double len, bool unbounded) {
    double t = dot(p - s0, dir_unit);
    if (t < 0.0) t = 0.0;
    if (!unbounded && t > len) t = len;
    const Point closest = s0 + t * dir_unit;
    const Point d = p - closest;
    return dot(d, d);
}

// Where a ray leaving `start` along `dir` exits the rectangle; used to clip
// infinite bars when deriving hull endpoints.
Point clip_to_rectangle(Point start, Point dir, const TwoParamGrid& grid) {
    double t = std::numeric_limits<double>::infinity();
    if (dir[0] > 0.0) t = std::min(t, (grid.b - start[0]) / dir[0]);
    if (dir[0] < 0.0) t = std::min(t, (grid.a - start[0]) / dir[0]);
    if (dir[1] > 0.0) t = std::min(t, (grid.d - start[1]) / dir[1]);
    if (dir[1] < 0.0) t = std::min(t, (grid.c - start[1]) / dir[1]);
    if (!std::isfinite(t) || t < 0.0) return start;
    return start + t * dir;
}

} // namespace

// ============================================================================
// Convex hull area
// ============================================================================

double convex_hull_area(const std::vector<Point>& points) {
    if (points.size() < 3) return 0.0;
    std::vector<Point> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t m = pts.size();
    if (m < 3) return 0.0;

    // Andrew's monotone chain.
    std::vector<Point> hull(2 * m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = m - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) return 0.0;

    double twice_area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& p = hull[i];
        const Point& q = hull[(i + 1) % hull.size()];
        twice_area += p[0] * q[1] - q[0] * p[1];
    }
    return std::abs(twice_area) / 2.0;
}

// ============================================================================
// Persistence image
// ============================================================================

std::vector<double> two_param_persistence_image(const Vineyard& vineyard,
                                                const TwoParamGrid& grid) {
    validate(grid);
    const double rect_area = (grid.b - grid.a) * (grid.d - grid.c);

    // Geometric extent of every bar, resolved once: start point, unit
    // direction, arc length (infinite deaths become unbounded rays).
    struct Piece {
        Point start;
        Point dir;
        double len = 0.0;
        bool unbounded = false;
        double w2 = 0.0;
    };

    std::vector<double> image(grid.n * grid.n, 0.0);
    for (const VineyardSummand& summand : vineyard.summands) {
        std::vector<Piece> pieces;
        std::vector<Point> endpoints;
        for (const RayBar& bar : summand.bars) {
            if (bar.ray < 0 || bar.ray >= static_cast<int>(vineyard.rays.size())) {
                throw input_error("vineyard: bar references missing ray " +
                                  std::to_string(bar.ray));
            }
            const PlaneRay& ray = vineyard.rays[bar.ray];
            const double dnorm = norm(ray.direction);
            if (!(dnorm > 0.0)) throw input_error("vineyard: zero ray direction");
            const Point unit = (1.0 / dnorm) * ray.direction;

            Piece piece;
            piece.start = ray.origin + bar.birth * unit;
            piece.dir = unit;
            piece.unbounded = std::isinf(bar.death);
            piece.len = piece.unbounded ? 0.0 : bar.death - bar.birth;
            piece.w2 = std::min(unit[0], unit[1]);
            pieces.push_back(piece);

            endpoints.push_back(piece.start);
            endpoints.push_back(piece.unbounded
                                    ? clip_to_rectangle(piece.start, unit, grid)
                                    : piece.start + piece.len * unit);
        }
        if (pieces.empty()) continue;

        const double hull_area = summand.hull_points.empty()
                                     ? convex_hull_area(endpoints)
                                     : convex_hull_area(summand.hull_points);
        const double w1 = std::pow(hull_area / rect_area, grid.q);
        if (w1 == 0.0) continue;

        for (int i = 0; i < grid.n; ++i) {
            for (int j = 0; j < grid.n; ++j) {
                const Point g = grid.point(i, j);
                double best = std::numeric_limits<double>::infinity();
                double w2 = 0.0;
                for (const Piece& piece : pieces) {
                    const double d2 = dist2_to_piece(g, piece.start, piece.dir,
                                                     piece.len, piece.unbounded);
                    if (d2 < best) {
                        best = d2;
                        w2 = piece.w2;
                    }
                }
                image[i * grid.n + j] +=
                    w1 * w2 * std::exp(-best / (grid.sigma * grid.sigma));
            }
        }
    }
    return image;
}

// ============================================================================
// Persistence landscape
// ============================================================================

std::vector<double> two_param_persistence_landscape(
    const FiberedBarcodeFixture& fixture, int k, const TwoParamGrid& grid) {
    validate(grid);
    if (k < 1) throw input_error("landscape: k must be at least 1");

    std::map<int, const OffsetRayBarcode*> by_offset;
    for (const OffsetRayBarcode& ray : fixture.rays) {
        if (!by_offset.emplace(ray.offset, &ray).second) {
            throw input_error("landscape: duplicate offset " +
                              std::to_string(ray.offset));
        }
    }

    std::vector<double> values(grid.n * grid.n, 0.0);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            const auto it = by_offset.find(j - i);
            if (it == by_offset.end()) {
                throw input_error("landscape: no ray for offset " +
                                  std::to_string(j - i));
            }
            const OffsetRayBarcode& ray = *it->second;
            const double t = norm(grid.point(i, j) - ray.origin);

            std::vector<double> tents;
            for (const RayBar& bar : ray.bars) {
                const double up = (t - bar.birth) / std::numbers::sqrt2;
                const double down = std::isinf(bar.death)
                                        ? std::numeric_limits<double>::infinity()
                                        : (bar.death - t) / std::numbers::sqrt2;
                const double tent = std::max(0.0, std::min(up, down));
                for (int m = 0; m < std::max(1, bar.multiplicity); ++m) {
                    tents.push_back(tent);
                }
            }
            std::sort(tents.begin(), tents.end(), std::greater<>());
            values[i * grid.n + j] =
                (static_cast<std::size_t>(k) <= tents.size()) ? tents[k - 1] : 0.0;
        }
    }
    return values;
}

// ============================================================================
// Fixture I/O
// ============================================================================

namespace {

double death_from(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        throw input_error("fixture: unrecognized death '" + s + "'");
    }
    return j.get<double>();
}

Point point_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw input_error("fixture: points must be [x, y] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

// Diagonal rays fanned along the bottom and left edges: origin (a + i d, c)
// for 0 <= i <= floor(R/2), then (a, c + j d) for 1 <= j <= floor(R/2),
// with spacing d = ((b-a) + (d-c))/R and unit diagonal direction.
std::vector<PlaneRay> default_rays(const TwoParamGrid& grid) {
    const double delta = ((grid.b - grid.a) + (grid.d - grid.c)) / grid.ray_count;
    const double diag = std::numbers::sqrt2 / 2.0;
    std::vector<PlaneRay> rays;
    for (int i = 0; i <= grid.ray_count / 2; ++i) {
        rays.push_back({{grid.a + i * delta, grid.c}, {diag, diag}});
    }
    for (int j = 1; j <= grid.ray_count / 2; ++j) {
        rays.push_back({{grid.a, grid.c + j * delta}, {diag, diag}});
    }
    return rays;
}

} // namespace

Fixture parse_fixture(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("fixture: invalid JSON: ") + e.what());
    }
    try {
        Fixture fixture;
        const auto& g = doc.at("grid");
        fixture.grid.a = g.at("a").get<double>();
        fixture.grid.b = g.at("b").get<double>();
        fixture.grid.c = g.at("c").get<double>();
        fixture.grid.d = g.at("d").get<double>();
        fixture.grid.n = g.at("n").get<int>();
        fixture.grid.ray_count = g.at("rays").get<int>();
        fixture.grid.sigma = g.value("sigma", 1.0);
        fixture.grid.q = g.value("q", 1.0);
        validate(fixture.grid);

        if (doc.contains("vineyard")) {
            const auto& v = doc.at("vineyard");
            if (v.contains("rays")) {
                for (const auto& r : v.at("rays")) {
                    PlaneRay ray;
                    ray.origin = point_from(r.at("origin"));
                    ray.direction = point_from(r.at("direction"));
                    fixture.vineyard.rays.push_back(ray);
                }
            } else {
                fixture.vineyard.rays = default_rays(fixture.grid);
            }
            for (const auto& s : v.at("summands")) {
                VineyardSummand summand;
                for (const auto& b : s.at("bars")) {
                    RayBar bar;
                    bar.ray = b.at("ray").get<int>();
                    bar.birth = b.at("birth").get<double>();
                    bar.death = death_from(b.at("death"));
                    bar.multiplicity = b.value("multiplicity", 1);
                    summand.bars.push_back(bar);
                }
                if (s.contains("hull_points")) {
                    for (const auto& p : s.at("hull_points")) {
                        summand.hull_points.push_back(point_from(p));
                    }
                }
                fixture.vineyard.summands.push_back(std::move(summand));
            }
        }

        if (doc.contains("landscape")) {
            for (const auto& r : doc.at("landscape").at("rays")) {
                OffsetRayBarcode ray;
                ray.offset = r.at("offset").get<int>();
                ray.origin = point_from(r.at("origin"));
                for (const auto& b : r.at("bars")) {
                    RayBar bar;
                    if (b.is_array()) {
                        bar.birth = b.at(0).get<double>();
                        bar.death = death_from(b.at(1));
                        if (b.size() > 2) bar.multiplicity = b.at(2).get<int>();
                    } else {
                        bar.birth = b.at("birth").get<double>();
                        bar.death = death_from(b.at("death"));
                        bar.multiplicity = b.value("multiplicity", 1);
                    }
                    ray.bars.push_back(bar);
                }
                fixture.landscape.rays.push_back(std::move(ray));
            }
        }
        return fixture;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("fixture: schema error: ") + e.what());
    }
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("fixture: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_fixture(buffer.str());
}

std::string builtin_example_fixture_json() {
    // Two unit circles drawn as a 4-vertex chain graph, filtered by the
    // sublevel sets of two height-like functions on [0,2]^2; the connected
    // component module decomposes into a free summand born at the origin and
    // a second summand born along the anti-diagonal.
    return R"({
  "grid": {"a": 0.0, "b": 2.0, "c": 0.0, "d": 2.0, "n": 2, "rays": 3,
           "sigma": 1.0, "q": 1.0},
  "vineyard": {
    "rays": [
      {"origin": [0.0, 0.0], "direction": [0.7071067811865476, 0.7071067811865476]},
      {"origin": [1.3333333333333333, 0.0], "direction": [0.7071067811865476, 0.7071067811865476]},
      {"origin": [0.0, 1.3333333333333333], "direction": [0.7071067811865476, 0.7071067811865476]}
    ],
    "summands": [
      {"bars": [
         {"ray": 1, "birth": 0.0, "death": null},
         {"ray": 0, "birth": 1.4142135623730951, "death": null},
         {"ray": 2, "birth": 0.0, "death": null}
       ],
       "hull_points": [
         [1.3333333333333333, 0.0], [2.0, 0.6666666666666666],
         [1.0, 1.0], [1.6666666666666667, 1.6666666666666667],
         [0.0, 1.3333333333333333], [0.6666666666666666, 2.0]
       ]},
      {"bars": [
         {"ray": 0, "birth": 1.4142135623730951, "death": null}
       ]}
    ]
  },
  "landscape": {
    "rays": [
      {"offset": -1, "origin": [2.0, 0.0],
       "bars": [[0.0, null], [1.4142135623730951, null]]},
      {"offset": 0, "origin": [0.0, 0.0],
       "bars": [[1.4142135623730951, null, 2]]},
      {"offset": 1, "origin": [0.0, 2.0],
       "bars": [[0.0, null], [1.4142135623730951, null]]}
    ]
  }
})";
}

} // namespace emph::multipers

#include "tilecraft/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tilecraft/rng.hpp"

namespace tilecraft {

namespace {

void check_spec(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(spec.size_min > 0.0) || spec.size_min > spec.size_max) {
        throw std::invalid_argument("need 0 < size_min <= size_max");
    }
    if (spec.mode == GenMode::Clustered) {
        if (spec.hotspots < 1) throw std::invalid_argument("clustered mode needs hotspots >= 1");
        if (!(spec.cluster_spread > 0.0)) throw std::invalid_argument("cluster_spread must be > 0");
    }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double log_uniform(Rng& rng, double lo, double hi) {
    if (lo == hi) return lo;
    double t = rng_unit(rng);
    return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
}

}  // namespace

Dataset generate(const GenSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);

    std::vector<Point> hotspots;
    if (spec.mode == GenMode::Clustered) {
        hotspots.reserve(spec.hotspots);
        for (std::uint32_t i = 0; i < spec.hotspots; ++i) {
            hotspots.push_back(Point{rng_unit(rng), rng_unit(rng)});
        }
    }

    std::vector<SpatialObject> objects;
    objects.reserve(spec.n);
    for (std::uint64_t i = 0; i < spec.n; ++i) {
        Point c;
        if (spec.mode == GenMode::Uniform) {
            c = Point{rng_unit(rng), rng_unit(rng)};
        } else {
            const Point& h = hotspots[rng_below(rng, hotspots.size())];
            c = Point{clamp01(h.x + spec.cluster_spread * rng_gaussian(rng)),
                      clamp01(h.y + spec.cluster_spread * rng_gaussian(rng))};
        }
        double w = log_uniform(rng, spec.size_min, spec.size_max);
        double h = log_uniform(rng, spec.size_min, spec.size_max);
        Rect mbr{clamp01(c.x - w / 2.0), clamp01(c.y - h / 2.0), clamp01(c.x + w / 2.0),
                 clamp01(c.y + h / 2.0)};
        objects.push_back(SpatialObject{i, mbr, {}});
    }
    return make_dataset(std::move(objects));
}

}  // namespace tilecraft

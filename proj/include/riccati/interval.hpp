#ifndef RICCATI_INTERVAL_HPP
#define RICCATI_INTERVAL_HPP

#include <stdexcept>
#include <vector>

namespace riccati {

/// Evaluation window [t_lo, t_hi] with a uniform sample grid.
struct Interval {
    double t_lo = 0.0;
    double t_hi = 1.0;
    int samples = 201;

    Interval() = default;
    Interval(double lo, double hi, int n = 201) : t_lo(lo), t_hi(hi), samples(n) {
        if (!(t_lo < t_hi)) throw std::invalid_argument("Interval: t_lo must be < t_hi");
        if (samples < 2) throw std::invalid_argument("Interval: samples must be >= 2");
    }

    /// Uniform grid including both endpoints.
    std::vector<double> grid() const {
        std::vector<double> g;
        g.reserve(static_cast<std::size_t>(samples));
        const double h = (t_hi - t_lo) / (samples - 1);
        for (int i = 0; i < samples; ++i) g.push_back(i == samples - 1 ? t_hi : t_lo + i * h);
        return g;
    }

    /// Intersection; keeps the finer of the two sample counts.
    Interval intersect(const Interval& other) const {
        const double lo = t_lo > other.t_lo ? t_lo : other.t_lo;
        const double hi = t_hi < other.t_hi ? t_hi : other.t_hi;
        if (!(lo < hi)) throw std::invalid_argument("Interval: empty intersection");
        return Interval(lo, hi, samples > other.samples ? samples : other.samples);
    }
};

}  // namespace riccati

#endif

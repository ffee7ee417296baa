#include "chlab/torus_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chlab/parallel.hpp"

namespace chlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double PeriodicGrid3::spacing() const { return kTwoPi / n; }

void PeriodicGrid3::validate() const {
    const bool pow2 = n >= 8 && n <= 128 && (n & (n - 1)) == 0;
    if (!pow2) throw std::invalid_argument("PeriodicGrid3: n must be a power of two in [8, 128]");
    if (fd_order != 2 && fd_order != 4)
        throw std::invalid_argument("PeriodicGrid3: fd_order must be 2 or 4");
}

TorusBackend::TorusBackend(const PeriodicGrid3& grid) : grid_(grid) {
    grid_.validate();
    zero_bracket_ = zero_vector_field(sites());
    const double h = grid_.spacing();
    const int n = grid_.n;
    if (grid_.kernel == DerivKernel::Stencil) {
        if (grid_.fd_order == 2) {
            kernel_ = {{1, 1.0 / (2.0 * h)}, {n - 1, -1.0 / (2.0 * h)}};
        } else {
            kernel_ = {{1, 8.0 / (12.0 * h)},
                       {n - 1, -8.0 / (12.0 * h)},
                       {2, -1.0 / (12.0 * h)},
                       {n - 2, 1.0 / (12.0 * h)}};
        }
    } else {
        // trigonometric collocation weights for even n:
        // f'(x_i) = sum_{k != 0} w_k f(x_{i+k}), w_k = (-1)^{k+1}/2 * cot(k h / 2)
        kernel_.reserve(static_cast<std::size_t>(n - 1));
        for (int k = 1; k < n; ++k) {
            const double sgn = (k % 2 == 0) ? -0.5 : 0.5;
            kernel_.emplace_back(k, sgn / std::tan(0.5 * k * h));
        }
    }
}

std::size_t TorusBackend::sites() const {
    const auto n = static_cast<std::size_t>(grid_.n);
    return n * n * n;
}

std::size_t TorusBackend::site(int i, int j, int k) const {
    const int n = grid_.n;
    auto wrap = [n](int a) { return ((a % n) + n) % n; };
    return static_cast<std::size_t>(wrap(i)) +
           static_cast<std::size_t>(n) * (static_cast<std::size_t>(wrap(j)) +
                                          static_cast<std::size_t>(n) * static_cast<std::size_t>(wrap(k)));
}

Vec3 TorusBackend::coords(std::size_t s) const {
    const auto n = static_cast<std::size_t>(grid_.n);
    const double h = grid_.spacing();
    return {h * static_cast<double>(s % n), h * static_cast<double>((s / n) % n),
            h * static_cast<double>(s / (n * n))};
}

const VectorField& TorusBackend::frame_bracket(int, int) const { return zero_bracket_; }

ScalarField TorusBackend::derive_frame(const ScalarField& f, int axis) const {
    const auto n = static_cast<std::size_t>(grid_.n);
    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? n : n * n);
    const std::size_t total = sites();
    ScalarField out(total);

    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            // decompose s into the position along `axis` and the rest
            std::size_t along;
            std::size_t base;
            if (axis == 0) {
                along = s % n;
                base = s - along;
            } else if (axis == 1) {
                along = (s / n) % n;
                base = s - along * n;
            } else {
                along = s / (n * n);
                base = s - along * n * n;
            }
            double acc = 0.0;
            for (const auto& [off, w] : kernel_) {
                const std::size_t pos = (along + static_cast<std::size_t>(off)) % n;
                acc += w * f[base + pos * stride];
            }
            out[s] = acc;
        }
    });
    return out;
}

double TorusBackend::integrate(const ScalarField& density) const {
    // compensated serial sum; deterministic across thread counts
    double sum = 0.0, comp = 0.0;
    for (double x : density) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double h = grid_.spacing();
    return sum * h * h * h;
}

double TorusBackend::tolerance_scale() const {
    if (grid_.kernel == DerivKernel::Exact) return 0.0;
    return std::pow(grid_.spacing(), grid_.fd_order);
}

}  // namespace chlab

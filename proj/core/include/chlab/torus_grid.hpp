#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "chlab/backend.hpp"

namespace chlab {

/// Differentiation kernel for periodic sampled fields.
///   Stencil: explicit central stencil of order fd_order (2 or 4).
///   Exact: full-width trigonometric collocation kernel; differentiates any
///   field band-limited below Nyquist to machine precision (no transforms,
///   plain convolution with closed-form antisymmetric weights).
enum class DerivKernel { Stencil, Exact };

/// Uniform periodic grid on [0, 2pi)^3.
struct PeriodicGrid3 {
    int n = 32;
    int fd_order = 4;  // stencil order, 2 or 4
    DerivKernel kernel = DerivKernel::Exact;

    double spacing() const;
    /// n a power of two in [8, 128]; fd_order in {2, 4}. Throws otherwise.
    void validate() const;
};

struct TorusContactSpec {
    int m = 1;  // nonzero contact-form frequency
};

/// Coordinate-frame backend on the flat 3-torus: frame brackets vanish,
/// derivatives are periodic difference kernels, integration is the lattice
/// sum (exact for trigonometric polynomials below the Nyquist band).
class TorusBackend final : public GeometryBackend {
public:
    explicit TorusBackend(const PeriodicGrid3& grid);

    std::size_t sites() const override;
    const VectorField& frame_bracket(int i, int j) const override;
    ScalarField derive_frame(const ScalarField& f, int axis) const override;
    double integrate(const ScalarField& density) const override;
    double tolerance_scale() const override;

    const PeriodicGrid3& grid() const { return grid_; }
    /// Site index of lattice point (i, j, k); x_a = index_a * spacing.
    std::size_t site(int i, int j, int k) const;
    Vec3 coords(std::size_t s) const;

    /// Samples f(x1, x2, x3) on the lattice.
    template <class F>
    ScalarField sample(F&& f) const {
        ScalarField out(sites());
        for (std::size_t s = 0; s < out.size(); ++s) {
            const Vec3 x = coords(s);
            out[s] = f(x[0], x[1], x[2]);
        }
        return out;
    }

private:
    PeriodicGrid3 grid_;
    VectorField zero_bracket_;
    std::vector<std::pair<int, double>> kernel_;  // (offset, weight), antisymmetric
};

}  // namespace chlab

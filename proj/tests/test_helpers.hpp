#pragma once

#include <cmath>

#include "chlab/chlab.hpp"
#include "doctest.h"

namespace chtest {

using namespace chlab;

inline Model sl2(double lambda, double vol = 1.0) {
    ModelSpec spec;
    spec.kind = ModelKind::Sl2;
    spec.lambda = lambda;
    spec.volume = vol;
    return build_model(spec);
}

inline Model family(double a, double b, double vol = 1.0) {
    ModelSpec spec;
    spec.kind = ModelKind::Family;
    spec.a = a;
    spec.b = b;
    spec.volume = vol;
    return build_model(spec);
}

inline Model su2() {
    ModelSpec spec;
    spec.kind = ModelKind::Su2;
    return build_model(spec);
}

inline Model nil() {
    ModelSpec spec;
    spec.kind = ModelKind::Nil;
    return build_model(spec);
}

inline Model torus(int m, int n, DerivKernel kernel = DerivKernel::Exact, int fd_order = 4) {
    ModelSpec spec;
    spec.kind = ModelKind::Torus;
    spec.m = m;
    PeriodicGrid3 grid;
    grid.n = n;
    grid.fd_order = fd_order;
    grid.kernel = kernel;
    return build_model(spec, grid);
}

/// Constant-parameter compatible metric on a model, q derived from pq - r^2 = 1.
inline MetricField const_param_metric(const Model& model, double p, double r) {
    const std::size_t n = model.backend->sites();
    const double q = (1.0 + r * r) / p;
    return metric_from_params(
        model.params(constant_field(n, p), constant_field(n, q), constant_field(n, r)));
}

inline VectorField frame_vector(const Model& model, int i) {
    VectorField f = zero_vector_field(model.backend->sites());
    for (std::size_t s = 0; s < f.size(); ++s) f[s][static_cast<std::size_t>(i)] = 1.0;
    return f;
}

}  // namespace chtest

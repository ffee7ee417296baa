#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chlab/backend.hpp"
#include "chlab/lie_models.hpp"
#include "chlab/metrics.hpp"
#include "chlab/torus_grid.hpp"

namespace chlab {

enum class ModelKind { Su2, Nil, Sl2, Family, Torus };

struct ModelSpec {
    ModelKind kind = ModelKind::Sl2;
    double lambda = 1.0;   // sl2
    double a = 0.0, b = 0.0;  // family brackets
    int m = 1;             // torus frequency
    double volume = 1.0;   // normalized volume of homogeneous quotients

    std::string canonical_name() const;
};

/// A ready-to-use geometry: backend, contact structure, the adapted
/// parameter coframe (d_alpha = 2 e1 ^ e2) carrying the (p, q, r) metric
/// family, and the distinguished background metric
/// metric_from_params(p = q = 1, r = 0).
///
/// On homogeneous models the parameter coframe is the stable/unstable
/// rotation of the model coframe, ((eta1 - eta2)/sqrt2, (eta1 + eta2)/sqrt2):
/// the gauge in which L_R acts diagonally when a = b, which the parametrized
/// torsion formulas presume. On the torus it is the canonical gauge with
/// e_1 = (2/m) d/dx3 and e_2 = -phi_0 e_1.
struct Model {
    ModelSpec spec;
    std::string name;
    std::shared_ptr<const GeometryBackend> backend;
    ContactStructure contact;
    CovectorField e1, e2;  // parameter coframe
    std::optional<std::pair<CovectorField, CovectorField>> model_coframe;  // (eta1, eta2)
    MetricField background_metric;
    double lambda = 0.0;  // h-eigenvalue scale of the background metric

    CompatibleMetricParams params(const ScalarField& p, const ScalarField& q,
                                  const ScalarField& r) const;
    CompatibleMetricParams unit_params() const;  // p = q = 1, r = 0
};

/// Parses a CLI model string: `su2`, `nil`, `sl2:lambda=1.0`,
/// `family:a=1,b=0`, `torus:m=1`. Homogeneous models accept an optional
/// `vol=` key. Throws std::invalid_argument with a usage hint.
ModelSpec parse_model_string(const std::string& text);

Model build_model(const ModelSpec& spec, const PeriodicGrid3& grid = PeriodicGrid3{});

/// Registry entries for `models list` / `model describe`.
struct ModelInfo {
    std::string name;
    std::string parameters;
    std::string summary;
    std::vector<std::string> facts;
};
std::vector<ModelInfo> model_registry();
const ModelInfo* find_model_info(const std::string& name);

}  // namespace chlab

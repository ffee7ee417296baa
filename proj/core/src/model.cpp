#include "chlab/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chlab/tensor_ops.hpp"

namespace chlab {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Model build_homogeneous(const ModelSpec& spec) {
    double a = 0.0, b = 0.0;
    switch (spec.kind) {
        case ModelKind::Su2: a = -2.0; b = 2.0; break;
        case ModelKind::Nil: a = 0.0; b = 0.0; break;
        case ModelKind::Sl2:
            if (spec.lambda <= 0.0) throw std::invalid_argument("sl2 model requires lambda > 0");
            a = b = spec.lambda;
            break;
        case ModelKind::Family: a = spec.a; b = spec.b; break;
        case ModelKind::Torus: throw std::logic_error("build_homogeneous: torus spec");
    }

    Model model;
    model.spec = spec;
    model.name = spec.canonical_name();
    auto backend = std::make_shared<HomogeneousBackend>(family_constants(a, b), spec.volume);
    model.backend = backend;

    CovectorField alpha = zero_covector_field(1);
    alpha[0] = {1.0, 0.0, 0.0};
    model.contact = make_contact_structure(alpha, *backend, 2.0);

    CovectorField eta1 = zero_covector_field(1), eta2 = zero_covector_field(1);
    eta1[0] = {0.0, 1.0, 0.0};
    eta2[0] = {0.0, 0.0, 1.0};
    model.model_coframe = std::make_pair(eta1, eta2);

    // parameter coframe: stable/unstable rotation of the model coframe
    const double s = 1.0 / std::sqrt(2.0);
    model.e1 = zero_covector_field(1);
    model.e2 = zero_covector_field(1);
    model.e1[0] = {0.0, s, -s};
    model.e2[0] = {0.0, s, s};

    model.background_metric = metric_from_params(model.unit_params());
    model.lambda = std::abs(a + b) / 2.0;
    return model;
}

Model build_torus(const ModelSpec& spec, const PeriodicGrid3& grid) {
    if (spec.m == 0) throw std::invalid_argument("torus model requires m != 0");
    const double m = static_cast<double>(spec.m);

    Model model;
    model.spec = spec;
    model.name = spec.canonical_name();
    auto backend = std::make_shared<TorusBackend>(grid);
    model.backend = backend;
    const std::size_t n = backend->sites();

    // alpha = (m/2) (sin(m x3) dx1 + cos(m x3) dx2)
    CovectorField alpha = zero_covector_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3 x = backend->coords(s);
        alpha[s] = {0.5 * m * std::sin(m * x[2]), 0.5 * m * std::cos(m * x[2]), 0.0};
    }
    model.contact = make_contact_structure(alpha, *backend, 2.0);

    // canonical adapted gauge: e_1 = (2/m) d/dx3, e_2 = -phi_0 e_1; the
    // coframe below lists their flat-metric duals.
    model.e1 = zero_covector_field(n);
    model.e2 = zero_covector_field(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec3 x = backend->coords(s);
        model.e1[s] = {0.0, 0.0, 0.5 * m};
        model.e2[s] = {0.5 * m * std::cos(m * x[2]), -0.5 * m * std::sin(m * x[2]), 0.0};
    }

    model.background_metric = metric_from_params(model.unit_params());
    model.lambda = 1.0;
    return model;
}

}  // namespace

std::string ModelSpec::canonical_name() const {
    switch (kind) {
        case ModelKind::Su2: return "su2";
        case ModelKind::Nil: return "nil";
        case ModelKind::Sl2: return "sl2:lambda=" + format_double(lambda);
        case ModelKind::Family:
            return "family:a=" + format_double(a) + ",b=" + format_double(b);
        case ModelKind::Torus: return "torus:m=" + std::to_string(m);
    }
    return "?";
}

CompatibleMetricParams Model::params(const ScalarField& p, const ScalarField& q,
                                     const ScalarField& r) const {
    CompatibleMetricParams out;
    out.alpha = contact.alpha;
    out.e1 = e1;
    out.e2 = e2;
    out.p = p;
    out.q = q;
    out.r = r;
    return out;
}

CompatibleMetricParams Model::unit_params() const {
    const std::size_t n = backend->sites();
    return params(constant_field(n, 1.0), constant_field(n, 1.0), constant_field(n, 0.0));
}

ModelSpec parse_model_string(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

    ModelSpec spec;
    if (head == "su2") spec.kind = ModelKind::Su2;
    else if (head == "nil") spec.kind = ModelKind::Nil;
    else if (head == "sl2") spec.kind = ModelKind::Sl2;
    else if (head == "family") spec.kind = ModelKind::Family;
    else if (head == "torus") spec.kind = ModelKind::Torus;
    else
        throw std::invalid_argument("unknown model '" + head +
                                    "' (expected su2, nil, sl2:lambda=..., family:a=...,b=..., torus:m=...)");

    bool saw_a = false, saw_b = false, saw_lambda = false, saw_m = false;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed model parameter '" + item + "' (expected key=value)");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::size_t used = 0;
        double num = 0.0;
        try {
            num = std::stod(val, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("non-numeric value for model parameter '" + key + "'");
        }
        if (used != val.size())
            throw std::invalid_argument("non-numeric value for model parameter '" + key + "'");

        if (key == "lambda" && spec.kind == ModelKind::Sl2) { spec.lambda = num; saw_lambda = true; }
        else if (key == "a" && spec.kind == ModelKind::Family) { spec.a = num; saw_a = true; }
        else if (key == "b" && spec.kind == ModelKind::Family) { spec.b = num; saw_b = true; }
        else if (key == "m" && spec.kind == ModelKind::Torus) {
            spec.m = static_cast<int>(num);
            if (static_cast<double>(spec.m) != num) throw std::invalid_argument("torus m must be an integer");
            saw_m = true;
        } else if (key == "vol" && spec.kind != ModelKind::Torus) {
            if (num <= 0.0) throw std::invalid_argument("vol must be positive");
            spec.volume = num;
        } else {
            throw std::invalid_argument("model '" + head + "' does not accept parameter '" + key + "'");
        }
    }

    if (spec.kind == ModelKind::Sl2 && !saw_lambda)
        spec.lambda = 1.0;
    if (spec.kind == ModelKind::Family && (!saw_a || !saw_b))
        throw std::invalid_argument("family model requires both a= and b=");
    if (spec.kind == ModelKind::Torus && !saw_m)
        spec.m = 1;
    return spec;
}

Model build_model(const ModelSpec& spec, const PeriodicGrid3& grid) {
    if (spec.kind == ModelKind::Torus) return build_torus(spec, grid);
    return build_homogeneous(spec);
}

std::vector<ModelInfo> model_registry() {
    std::vector<ModelInfo> reg;
    reg.push_back({"su2", "vol=V (default 1)",
                   "left-invariant Sasakian structure of su(2) type; Reeb field is Killing",
                   {"brackets: [R,e1] = -2 e2, [R,e2] = 2 e1, [e1,e2] = -2 R",
                    "torsion L_R g = 0, torsion energy 0 (global minimum)",
                    "identity-frame metric is round: sectional curvature 1 on every plane"}});
    reg.push_back({"nil", "vol=V (default 1)",
                   "Heisenberg-group Sasakian structure; Reeb field is Killing",
                   {"brackets: [e1,e2] = -2 R, [R,e1] = [R,e2] = 0",
                    "coframe: d(eta1) = d(eta2) = 0, d(alpha) = 2 eta1 ^ eta2",
                    "torsion L_R g = 0, torsion energy 0 (global minimum)"}});
    reg.push_back({"sl2", "lambda=L (default 1), vol=V (default 1)",
                   "left-invariant frame of sl(2,R) with hyperbolic Reeb field; the "
                   "identity-frame metric is a critical compatible metric",
                   {"brackets: [R,e1] = lambda e2, [e1,e2] = -2 R, [e2,R] = -lambda e1",
                    "coframe: d(alpha) = 2 eta1 ^ eta2, d(eta1) = -lambda alpha ^ eta2, "
                    "d(eta2) = -lambda alpha ^ eta1",
                    "torsion energy E = 8 lambda^2 Vol; |L_R g|^2 = 8 lambda^2 (constant)",
                    "criticality residual nabla_R h - 2 h phi = 0",
                    "calibrated bi-contact coframe (eta1, eta2) with kappa = lambda",
                    "Anosov frame: [R,e_s] = lambda e_s, [R,e_u] = -lambda e_u, [e_s,e_u] = 2 R",
                    "sectional curvature on span{R,e_s} and span{R,e_u}: 1 - lambda^2"}});
    reg.push_back({"family", "a=A, b=B (required), vol=V (default 1)",
                   "general unimodular bracket family; su2 = family(-2,2), nil = family(0,0), "
                   "sl2(L) = family(L,L)",
                   {"brackets: [R,e1] = a e2, [R,e2] = b e1, [e1,e2] = -2 R",
                    "|L_R g|^2 = 2 (a+b)^2, lambda^2 = (a+b)^2 / 4 for the identity-frame metric",
                    "Killing Reeb field iff b = -a"}});
    reg.push_back({"torus", "m=M (nonzero integer, default 1); grid flags --n, --fd-order",
                   "flat 3-torus with the standard contact forms; the flat metric is "
                   "compatible but not critical",
                   {"contact form: eta_m = sin(m x3) dx1 + cos(m x3) dx2, alpha = (m/2) eta_m",
                    "flat compatible metric: g0 = (m^2/4)(dx1^2 + dx2^2 + dx3^2), theta = 2",
                    "Reeb field: R = (2/m)(sin(m x3) d1 + cos(m x3) d2)",
                    "|L_R g0|^2 = 8 everywhere, energy E = |m|^3 (2 pi)^3",
                    "criticality residual is strictly positive: no critical compatible metric"}});
    return reg;
}

const ModelInfo* find_model_info(const std::string& name) {
    static const std::vector<ModelInfo> reg = model_registry();
    for (const auto& info : reg)
        if (info.name == name) return &info;
    return nullptr;
}

}  // namespace chlab

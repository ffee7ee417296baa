#include "test_helpers.hpp"

using namespace chlab;
using namespace chtest;

TEST_CASE("family structure constants satisfy the algebra invariants") {
    for (double a : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double b : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const StructureConstants sc = family_constants(a, b);
            CHECK(sc.antisymmetry_defect() == 0.0);
            CHECK(sc.jacobi_defect() <= 1e-12);
            CHECK(sc.unimodularity_defect() <= 1e-12);
        }
}

TEST_CASE("non-unimodular custom constants are rejected") {
    StructureConstants sc;
    sc.set(1, 0, 1, 1.0);  // [X_0, X_1] = X_1: tr ad_{X_0} != 0
    CHECK_THROWS_AS(HomogeneousBackend(sc, 1.0), std::invalid_argument);
}

TEST_CASE("invalid model parameters are rejected") {
    ModelSpec spec;
    spec.kind = ModelKind::Sl2;
    spec.lambda = 0.0;
    CHECK_THROWS_AS(build_model(spec), std::invalid_argument);
    spec.lambda = 1.0;
    spec.volume = -1.0;
    CHECK_THROWS_AS(build_model(spec), std::invalid_argument);
}

TEST_CASE("sl2 coframe satisfies its structure equations") {
    const Model m = sl2(1.0);
    const auto& [eta1, eta2] = *m.model_coframe;
    const TwoFormField de1 = exterior_derivative(eta1, *m.backend);
    const TwoFormField de2 = exterior_derivative(eta2, *m.backend);
    // d eta1 = -lambda alpha ^ eta2, d eta2 = -lambda alpha ^ eta1
    CHECK(de1[0](0, 2) == doctest::Approx(-1.0));
    CHECK(de1[0](0, 1) == doctest::Approx(0.0));
    CHECK(de1[0](1, 2) == doctest::Approx(0.0));
    CHECK(de2[0](0, 1) == doctest::Approx(-1.0));
    CHECK(de2[0](0, 2) == doctest::Approx(0.0));
    // d alpha = 2 eta1 ^ eta2
    CHECK(m.contact.d_alpha[0](1, 2) == doctest::Approx(2.0));
    CHECK(m.contact.d_alpha[0](0, 1) == doctest::Approx(0.0));
    CHECK(m.contact.d_alpha[0](0, 2) == doctest::Approx(0.0));
}

TEST_CASE("nil is the Heisenberg structure") {
    const Model m = nil();
    const auto& [eta1, eta2] = *m.model_coframe;
    CHECK(exterior_derivative(eta1, *m.backend)[0].max_abs() == 0.0);
    CHECK(exterior_derivative(eta2, *m.backend)[0].max_abs() == 0.0);
    CHECK(m.contact.d_alpha[0](1, 2) == doctest::Approx(2.0));
}

TEST_CASE("family(1,0) background values match the bracket oracle") {
    // oracle: tau(X,Y) = -g([R,X],Y) - g(X,[R,Y]) on constant fields gives
    // tau(e1,e2) = -(a+b) = -1, |tau|^2 = 2, lambda^2 = 1/4
    const Model m = family(1.0, 0.0);
    const MatrixField tau = torsion(m.background_metric, m.contact.reeb, *m.backend);
    CHECK(tau[0](1, 2) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(tau[0](2, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(bilinear_norm_sq(tau, m.background_metric)[0] == doctest::Approx(2.0).epsilon(1e-12));

    const EndoField phi = phi_from_metric(m.background_metric, m.contact);
    const EndoField h = h_tensor(phi, m.contact.reeb, *m.backend);
    CHECK(lambda_sq(h, m.background_metric)[0] == doctest::Approx(0.25).epsilon(1e-12));

    // brute-force eigendecomposition: eigenvalues {0, -1/2, +1/2}
    Vec3 values;
    Mat3 vecs;
    generalized_symmetric_eig(m.background_metric[0] * h[0], m.background_metric[0], values, vecs);
    CHECK(values[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(values[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("family torsion norm sweep: |tau|^2 = 2 (a+b)^2") {
    for (double a : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double b : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const Model m = family(a, b);
            const MatrixField tau = torsion(m.background_metric, m.contact.reeb, *m.backend);
            const double n2 = bilinear_norm_sq(tau, m.background_metric)[0];
            CHECK(n2 == doctest::Approx(2.0 * (a + b) * (a + b)).epsilon(1e-12));

            const EndoField phi = phi_from_metric(m.background_metric, m.contact);
            const EndoField h = h_tensor(phi, m.contact.reeb, *m.backend);
            const double l2 = lambda_sq(h, m.background_metric)[0];
            CHECK(l2 == doctest::Approx((a + b) * (a + b) / 4.0).epsilon(1e-12));

            // cross-route: tau = 2 g(h phi ., .) entrywise
            const MatrixField tau2 = torsion_from_h(h, phi, m.background_metric);
            CHECK((tau[0] - tau2[0]).max_abs() <= 1e-12);
        }
}

TEST_CASE("homogeneous integration is density times normalized volume") {
    const Model m = sl2(2.0);
    CHECK(m.backend->integrate(constant_field(1, 8.0)) == doctest::Approx(8.0));
    CHECK(m.backend->integrate(constant_field(1, 8.0 * 4.0)) == doctest::Approx(32.0));
    CHECK(m.backend->integrate(constant_field(1, 0.0)) == 0.0);

    const Model mv = sl2(2.0, 2.5);
    CHECK(mv.backend->integrate(constant_field(1, 8.0)) == doctest::Approx(20.0));

    // R(f) integrates to zero trivially: scalars on one site are constants
    const ScalarField rf = reeb_derivative(constant_field(1, 3.0), m.contact, *m.backend);
    CHECK(m.backend->integrate(rf) == 0.0);
}

TEST_CASE("Koszul connection on homogeneous models") {
    SUBCASE("sl2: Reeb geodesic and the frame derivatives") {
        for (double lambda : {0.5, 1.0, 2.0}) {
            const Model m = sl2(lambda);
            const ConnectionField conn = levi_civita(m.background_metric, *m.backend);
            const auto& gamma = conn.gamma[0];
            // nabla_R R = 0
            for (int k = 0; k < 3; ++k) CHECK(std::abs(gamma[0](k, 0)) <= 1e-14);
            // nabla_R e1 = e2, nabla_R e2 = -e1
            CHECK(gamma[0](2, 1) == doctest::Approx(1.0));
            CHECK(gamma[0](1, 2) == doctest::Approx(-1.0));
            // nabla_{e1} R = (1 - lambda) e2, nabla_{e2} R = -(1 + lambda) e1
            CHECK(gamma[1](2, 0) == doctest::Approx(1.0 - lambda));
            CHECK(gamma[2](1, 0) == doctest::Approx(-(1.0 + lambda)));
        }
    }
    SUBCASE("nil: nabla_{e1} R = -phi e1 = e2 when h = 0") {
        const Model m = nil();
        const ConnectionField conn = levi_civita(m.background_metric, *m.backend);
        CHECK(conn.gamma[0][1](2, 0) == doctest::Approx(1.0));
        CHECK(conn.gamma[0][1](1, 0) == doctest::Approx(0.0));
    }
    SUBCASE("metric compatibility and torsion-freeness") {
        const Model m = sl2(2.0);
        for (double r : {0.0, 0.3}) {
            const MetricField g = const_param_metric(m, std::exp(0.2), r);
            const ConnectionField conn = levi_civita(g, *m.backend);
            CHECK(metric_compatibility_defect(conn, g, *m.backend) <= 1e-12);
            CHECK(torsion_free_defect(conn, *m.backend) <= 1e-12);
        }
    }
}

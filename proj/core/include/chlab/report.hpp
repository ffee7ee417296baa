#pragma once

#include <optional>

#include "chlab/bicontact.hpp"
#include "chlab/connection.hpp"
#include "chlab/model.hpp"

namespace chlab {

struct CurvatureRecord {
    double k_reeb_stable = 0.0;    // K(span{R, e_s})
    double k_reeb_unstable = 0.0;  // K(span{R, e_u})
};

/// Aggregated invariants of one metric on one model.
struct EnergyReport {
    double energy = 0.0;
    double lambda_sq_min = 0.0;
    double lambda_sq_max = 0.0;
    double lambda_sq_mean = 0.0;
    double tanno_residual_l2 = 0.0;
    double reeb_lambda_sq_sup = 0.0;  // sup |R(lambda^2)|
    CompatDiagnostics compatible;
    double covariant_reeb_defect = 0.0;
    std::optional<CalibrationRecord> calibration;  // absent when lambda^2 ~ 0
    std::optional<CurvatureRecord> curvature;
    bool critical = false;
    double tolerance = 0.0;  // effective tolerance the pass/fail used

    bool invariants_ok() const;
};

struct ReportOptions {
    double critical_tol = 1e-8;  // residual threshold for the critical flag
    Tolerances tolerances{};
    bool with_curvature = true;
    bool with_calibration = true;
};

EnergyReport build_energy_report(const Model& model, const MetricField& g,
                                 const ReportOptions& options = ReportOptions{});

}  // namespace chlab

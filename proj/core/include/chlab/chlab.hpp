#pragma once

// Umbrella header.
//
// chlab builds and checks metrics compatible with a contact form on model
// 3-manifolds, evaluates the torsion energy E(g) = integral of |L_R g|^2,
// tests criticality through the residual nabla_R h - 2 h phi, and minimizes
// the energy over the constrained family
//   g = alpha (x) alpha + p e1 (x) e1 + r (e1 (x) e2 + e2 (x) e1) + q e2 (x) e2,
// pq - r^2 = 1, parametrized by (u = ln p, r).

#include "chlab/backend.hpp"
#include "chlab/bicontact.hpp"
#include "chlab/connection.hpp"
#include "chlab/field.hpp"
#include "chlab/lie_models.hpp"
#include "chlab/linalg.hpp"
#include "chlab/metrics.hpp"
#include "chlab/model.hpp"
#include "chlab/optimizer.hpp"
#include "chlab/parallel.hpp"
#include "chlab/report.hpp"
#include "chlab/tensor_ops.hpp"
#include "chlab/torus_grid.hpp"

#pragma once

#include <string>

#include <json.hpp>

#include "phs/hautus.hpp"
#include "phs/observability.hpp"
#include "phs/resolvent.hpp"
#include "phs/simulation.hpp"
#include "phs/system.hpp"

namespace phs {

/// Complex entries travel as [re, im] pairs; matrices as row-major nested
/// arrays.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// System definition document: keys n, P1, G0, H (coefficient matrices in
/// ascending degree), WB, WC.
nlohmann::json system_to_json(const PortHamiltonianSystem& sys);
PortHamiltonianSystem system_from_json(const nlohmann::json& j);

void save_system(const PortHamiltonianSystem& sys, const std::string& path);
PortHamiltonianSystem load_system(const std::string& path);

/// CSV columns: t, E, then Re/Im of each output channel.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// CSV columns: Re(s), Im(s), m(s).
void write_scan_csv(const HautusScan& scan, const std::string& path);

/// CSV columns: zeta, tau, then Re/Im of each entry of Psi(zeta, tau).
void write_fundamental_csv(const FundamentalSolution& fs, const std::string& path);

nlohmann::json observability_to_json(const ObservabilityReport& report,
                                     bool embed_gramian = false);
nlohmann::json scan_to_json(const HautusScan& scan);
nlohmann::json theorem2_to_json(const Theorem2Report& report);
nlohmann::json bounds_to_json(const GrowthBoundFit& fit, Complex s);

void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace phs

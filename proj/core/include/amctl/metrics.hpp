#pragma once

#include <span>
#include <string>

#include "amctl/core.hpp"

namespace amctl {

struct MetricsReport {
  double rmse = 0.0;       // sqrt(mean |e|^2), m
  double max_error = 0.0;  // max |e|, m
  double std = 0.0;        // std of |e| about its mean, m
  Vec3 rmse_axis = Vec3::Zero();
  Vec3 max_axis = Vec3::Zero();  // max |e_i|
  Vec3 std_axis = Vec3::Zero();  // std of the signed component
  std::size_t samples = 0;
};

/// Throws kEmptySeries.
MetricsReport compute_metrics(std::span<const Vec3> errors);

/// "<label>: RMSE 0.029, Max 0.057" with three decimals, as in a
/// disturbance-rejection comparison table.
std::string format_table_row(const std::string& label, const MetricsReport& report);

/// "<label>: RMSE 0.006, STD 0.005" for stabilization tables.
std::string format_std_row(const std::string& label, const MetricsReport& report);

}  // namespace amctl

#include "amctl/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "amctl/error.hpp"

namespace amctl {

MetricsReport compute_metrics(std::span<const Vec3> errors) {
  if (errors.empty()) {
    throw Error(ErrorCode::kEmptySeries, "compute_metrics: empty error series");
  }
  MetricsReport r;
  r.samples = errors.size();
  const double n = static_cast<double>(errors.size());

  double sum_sq = 0.0;
  double sum_mag = 0.0;
  Vec3 sum_axis = Vec3::Zero();
  Vec3 sum_sq_axis = Vec3::Zero();
  for (const Vec3& e : errors) {
    const double mag = e.norm();
    sum_sq += e.squaredNorm();
    sum_mag += mag;
    r.max_error = std::max(r.max_error, mag);
    sum_axis += e;
    sum_sq_axis += e.cwiseProduct(e);
    r.max_axis = r.max_axis.cwiseMax(e.cwiseAbs());
  }
  r.rmse = std::sqrt(sum_sq / n);
  r.rmse_axis = (sum_sq_axis / n).cwiseSqrt();

  const double mean_mag = sum_mag / n;
  const Vec3 mean_axis = sum_axis / n;
  double var = 0.0;
  Vec3 var_axis = Vec3::Zero();
  for (const Vec3& e : errors) {
    const double d = e.norm() - mean_mag;
    var += d * d;
    const Vec3 da = e - mean_axis;
    var_axis += da.cwiseProduct(da);
  }
  r.std = std::sqrt(var / n);
  r.std_axis = (var_axis / n).cwiseSqrt();
  return r;
}

std::string format_table_row(const std::string& label, const MetricsReport& report) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), ": RMSE %.3f, Max %.3f", report.rmse,
                report.max_error);
  return label + buf;
}

std::string format_std_row(const std::string& label, const MetricsReport& report) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), ": RMSE %.3f, STD %.3f", report.rmse, report.std);
  return label + buf;
}

}  // namespace amctl

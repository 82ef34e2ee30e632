#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fundstab/model.hpp"
#include "fundstab/optimizer.hpp"

namespace fundstab {

// One sweep axis: values from, from+step, ... up to and including to (with a
// step*1e-9 endpoint slack so binary rounding cannot drop the last point).
struct AxisSpec {
  std::string name;  // one of: theta, delta, r_t, r_e
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
};

struct SweepSpec {
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  std::map<std::string, double> fixed;  // the parameters not swept
  double tol = kDefaultTolerance;
};

// One solved grid point; the solution is recomputable from the four inputs.
struct SweepRow {
  double theta;
  double delta;
  double r_t;
  double r_e;
  OptimalFunding solution;
};

// Row-major (axis1 outer, axis2 inner), deterministic ordering.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// 10-significant-digit decimal; the CSV number format.
std::string format_number(double v);

std::string to_csv(const std::vector<SweepRow>& rows);

// Strict: rejects unknown headers, malformed fields, unknown labels.
std::vector<SweepRow> parse_csv(const std::string& text);

}  // namespace fundstab

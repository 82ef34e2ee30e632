#include "fundstab/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace fundstab {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

constexpr const char* kHeader =
    "theta,delta,r_t,r_e,t_opt,e_opt,s_opt,z_opt,r_opt,regime,equity_cap_warning";

constexpr std::array<const char*, 4> kParamNames = {"theta", "delta", "r_t", "r_e"};

bool known_param(const std::string& name) {
  return std::find(kParamNames.begin(), kParamNames.end(), name) != kParamNames.end();
}

void validate_axis(const AxisSpec& a, const char* which) {
  if (!known_param(a.name))
    throw config_error(std::string(which) + ": unknown parameter '" + a.name + "'");
  if (!std::isfinite(a.from) || !std::isfinite(a.to) || !std::isfinite(a.step))
    throw config_error(std::string(which) + " ('" + a.name + "'): range must be finite");
  if (!(a.step > 0.0))
    throw config_error(std::string(which) + " ('" + a.name + "'): step must be positive");
  if (a.from > a.to)
    throw config_error(std::string(which) + " ('" + a.name + "'): from exceeds to");
}

std::vector<double> axis_values(const AxisSpec& a) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = a.from + i * a.step;
    if (v > a.to + a.step * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

Candidate candidate_from_string(const std::string& s) {
  if (s == "TrivialZero") return Candidate::TrivialZero;
  if (s == "CornerCBOnly") return Candidate::CornerCBOnly;
  if (s == "ZeroTermRoot") return Candidate::ZeroTermRoot;
  if (s == "InteriorW4") return Candidate::InteriorW4;
  throw config_error("unknown candidate label '" + s + "'");
}

double parse_field(const std::string& raw, const char* col) {
  try {
    size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw config_error(std::string("bad numeric value '") + raw + "' in column " + col);
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_axis(spec.axis1, "axis1");
  std::set<std::string> axes{spec.axis1.name};
  if (spec.axis2) {
    validate_axis(*spec.axis2, "axis2");
    if (!axes.insert(spec.axis2->name).second)
      throw config_error("axis2 repeats axis1 ('" + spec.axis2->name + "')");
  }
  for (const auto& [key, value] : spec.fixed) {
    (void)value;
    if (!known_param(key)) throw config_error("fixed: unknown parameter '" + key + "'");
    if (axes.count(key))
      throw config_error("parameter '" + key + "' is both swept and fixed");
  }
  for (const char* name : kParamNames)
    if (!axes.count(name) && !spec.fixed.count(name))
      throw config_error(std::string("missing value for parameter '") + name + "'");

  const std::vector<double> outer = axis_values(spec.axis1);
  const std::vector<double> inner =
      spec.axis2 ? axis_values(*spec.axis2) : std::vector<double>{0.0};

  std::vector<SweepRow> rows;
  rows.reserve(outer.size() * inner.size());
  std::map<std::string, double> point = spec.fixed;
  for (const double a : outer) {
    point[spec.axis1.name] = a;
    for (const double b : inner) {
      if (spec.axis2) point[spec.axis2->name] = b;
      const LiquidityParams p(point.at("theta"), point.at("delta"));
      const FundingRates r(point.at("r_t"), point.at("r_e"));
      rows.push_back({p.theta, p.delta, r.term_rate, r.equity_rate,
                      solve_analytic(p, r, spec.tol)});
    }
  }
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kHeader;
  out += '\n';
  for (const SweepRow& r : rows) {
    out += format_number(r.theta);
    out += ',';
    out += format_number(r.delta);
    out += ',';
    out += format_number(r.r_t);
    out += ',';
    out += format_number(r.r_e);
    out += ',';
    out += format_number(r.solution.term);
    out += ',';
    out += format_number(r.solution.equity);
    out += ',';
    out += format_number(r.solution.deposits);
    out += ',';
    out += format_number(r.solution.cutoff);
    out += ',';
    out += format_number(r.solution.cost);
    out += ',';
    out += to_string(r.solution.winner);
    out += ',';
    out += r.solution.equity_cap_warning ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw config_error("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw config_error("unexpected CSV header: '" + line + "'");

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11)
      throw config_error("expected 11 columns, got " + std::to_string(cells.size()));

    SweepRow row{};
    row.theta = parse_field(cells[0], "theta");
    row.delta = parse_field(cells[1], "delta");
    row.r_t = parse_field(cells[2], "r_t");
    row.r_e = parse_field(cells[3], "r_e");
    row.solution.term = parse_field(cells[4], "t_opt");
    row.solution.equity = parse_field(cells[5], "e_opt");
    row.solution.deposits = parse_field(cells[6], "s_opt");
    row.solution.cutoff = parse_field(cells[7], "z_opt");
    row.solution.cost = parse_field(cells[8], "r_opt");
    row.solution.winner = candidate_from_string(cells[9]);
    if (cells[10] == "true")
      row.solution.equity_cap_warning = true;
    else if (cells[10] == "false")
      row.solution.equity_cap_warning = false;
    else
      throw config_error("bad boolean '" + cells[10] + "' in column equity_cap_warning");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fundstab

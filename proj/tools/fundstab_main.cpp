#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fundstab/model.hpp"
#include "fundstab/optimizer.hpp"
#include "fundstab/policy.hpp"
#include "fundstab/run_game.hpp"
#include "fundstab/sweep.hpp"

namespace {

double tolerance_from_env() {
  const char* raw = std::getenv("SOLVER_TOL");
  if (raw == nullptr || *raw == '\0') return fundstab::kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || !(v > 0.0))
    throw fundstab::config_error("SOLVER_TOL must be a positive number");
  return v;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw fundstab::config_error("cannot open output file '" + out_path + "'");
  f << text;
}

std::string normalize_param(std::string name) {
  if (name == "rt") return "r_t";
  if (name == "re") return "r_e";
  return name;
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Flat key=value config file; each key is a long flag of the subcommand.
// Returned as synthetic "--key value" arguments so the regular parser does
// the validation, and explicit flags (parsed later) override them.
std::vector<std::string> load_config_args(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw fundstab::config_error("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    std::string key, value;
    if (eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    }
    if (key.empty() || value.empty())
      throw fundstab::config_error("config file '" + path + "' line " +
                                   std::to_string(lineno) + ": expected key=value");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

// Pulls "--config <file>" / "--config=<file>" out of the argument list and
// splices the file's entries in right after the subcommand name.
std::vector<std::string> args_with_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw fundstab::config_error("--config needs a file path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      if (path.empty()) throw fundstab::config_error("--config needs a file path");
      args.erase(args.begin() + i);
      break;
    }
  }
  if (!path.empty()) {
    if (args.empty())
      throw fundstab::config_error("--config requires a subcommand");
    const auto extra = load_config_args(path);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
  }
  return args;
}

}  // namespace

int cli_main(int argc, char** argv) {
  try {
    const double tol = tolerance_from_env();

    CLI::App app{"bank funding-stability toolkit"};
    app.require_subcommand(1);
    // Config-sourced values are spliced in ahead of explicit flags, so
    // "last one wins" gives flags priority over the file.
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string cfg_path_doc;

    // --- solve ---------------------------------------------------------
    auto* solve = app.add_subcommand(
        "solve", "cost-minimizing funding structure for one parameter point");
    double s_theta{}, s_delta{}, s_rt{}, s_re{};
    std::string s_out;
    solve->add_option("--theta", s_theta, "fire-sale liquidity exponent")->required();
    solve->add_option("--delta", s_delta, "collateral eligibility exponent")->required();
    solve->add_option("--rt", s_rt, "term funding rate")->required();
    solve->add_option("--re", s_re, "equity rate")->required();
    solve->add_option("--out", s_out, "write CSV to this file instead of stdout");
    solve->add_option("--config", cfg_path_doc,
                  "read key=value defaults from a file; explicit flags override");
    solve->callback([&] {
      const fundstab::SweepRow row{
          s_theta, s_delta, s_rt, s_re,
          fundstab::solve_analytic({s_theta, s_delta}, {s_rt, s_re}, tol)};
      emit(fundstab::to_csv({row}), s_out);
    });

    // --- oracle --------------------------------------------------------
    auto* oracle = app.add_subcommand(
        "oracle", "grid-search the same problem (slow cross-check of solve)");
    double o_theta{}, o_delta{}, o_rt{}, o_re{}, o_step = 0.001;
    std::string o_out;
    oracle->add_option("--theta", o_theta, "fire-sale liquidity exponent")->required();
    oracle->add_option("--delta", o_delta, "collateral eligibility exponent")->required();
    oracle->add_option("--rt", o_rt, "term funding rate")->required();
    oracle->add_option("--re", o_re, "equity rate")->required();
    oracle->add_option("--step", o_step, "grid resolution in (0, 0.01], default 0.001");
    oracle->add_option("--out", o_out, "write CSV to this file instead of stdout");
    oracle->add_option("--config", cfg_path_doc,
                  "read key=value defaults from a file; explicit flags override");
    oracle->callback([&] {
      const auto r = fundstab::solve_bruteforce({o_theta, o_delta}, {o_rt, o_re}, o_step, tol);
      std::string text = "feasible,t_opt,e_opt,s_opt,z_opt,r_opt\n";
      text += r.feasible ? "true" : "false";
      text += ',';
      text += fundstab::format_number(r.term);
      text += ',';
      text += fundstab::format_number(r.equity);
      text += ',';
      text += fundstab::format_number(1.0 - r.term - r.equity);
      text += ',';
      text += fundstab::format_number(r.cutoff);
      text += ',';
      text += fundstab::format_number(r.cost);
      text += '\n';
      emit(text, o_out);
    });

    // --- check-snnr ----------------------------------------------------
    auto* check = app.add_subcommand(
        "check-snnr", "does a given structure survive a one-sided run?");
    double c_theta{}, c_delta{}, c_e{}, c_t{}, c_eps = 1e-6;
    check->add_option("--theta", c_theta, "fire-sale liquidity exponent")->required();
    check->add_option("--delta", c_delta, "collateral eligibility exponent")->required();
    check->add_option("--equity", c_e, "equity share")->required();
    check->add_option("--term", c_t, "term-debt share")->required();
    check->add_option("--eps", c_eps, "withdrawal transaction cost (default 1e-6)");
    check->add_option("--config", cfg_path_doc,
                  "read key=value defaults from a file; explicit flags override");
    check->callback([&] {
      const fundstab::LiabilityStructure l(c_e, c_t);
      const fundstab::LiquidityParams p(c_theta, c_delta);
      const auto cls = fundstab::classify_regime(l, p, tol);
      std::cout << "regime: " << fundstab::to_string(cls.regime) << '\n'
                << "reason: " << fundstab::to_string(cls.reason) << '\n'
                << "no_run_equilibrium: "
                << (fundstab::snnr_holds(l, p, tol) ? "true" : "false") << '\n';
      if (std::fabs(c_theta) <= tol && c_eps > 0.0 && c_eps < l.deposits / 20.0) {
        const auto g = fundstab::payoff_matrix_cb_only(l, p, c_eps, tol);
        std::cout << "payoff_keep_keep: " << fundstab::format_number(g.u_kk) << '\n'
                  << "payoff_run_keep: " << fundstab::format_number(g.u_rk) << '\n'
                  << "payoff_keep_run: " << fundstab::format_number(g.u_kr) << '\n'
                  << "payoff_run_run: " << fundstab::format_number(g.u_rr) << '\n';
      }
    });

    // --- policy --------------------------------------------------------
    auto* policy = app.add_subcommand(
        "policy", "collateral-framework responses to a market liquidity shock");
    double p_tpre{}, p_tpost{}, p_delta{}, p_rt{}, p_re{}, p_grid{}, p_dmax = 5.0;
    policy->add_option("--theta-pre", p_tpre, "market liquidity before the shock")->required();
    policy->add_option("--theta-post", p_tpost, "market liquidity after the shock")->required();
    policy->add_option("--delta", p_delta, "pre-shock collateral framework")->required();
    policy->add_option("--rt", p_rt, "term funding rate")->required();
    policy->add_option("--re", p_re, "equity rate")->required();
    policy->add_option("--grid", p_grid,
                       "emulate a published table: delta grid resolution (e.g. 0.1)");
    policy->add_option("--delta-max", p_dmax, "search ceiling for delta (default 5)");
    policy->add_option("--config", cfg_path_doc,
                  "read key=value defaults from a file; explicit flags override");
    policy->callback([&] {
      const fundstab::Shock sh(p_tpre, p_tpost, p_delta, {p_rt, p_re});
      fundstab::PolicyOptions opts;
      opts.delta_max = p_dmax;
      opts.tol = tol;
      if (policy->count("--grid")) opts.delta_grid = p_grid;
      const auto rep = fundstab::policy_report(sh, opts);
      std::cout << "baseline_term: " << fundstab::format_number(rep.baseline.term) << '\n'
                << "baseline_equity: " << fundstab::format_number(rep.baseline.equity) << '\n'
                << "baseline_deposits: " << fundstab::format_number(rep.baseline.deposits)
                << '\n'
                << "baseline_cutoff: " << fundstab::format_number(rep.baseline.cutoff) << '\n'
                << "baseline_cost: " << fundstab::format_number(rep.baseline.cost) << '\n'
                << "crisis_cost_unmitigated: "
                << fundstab::format_number(rep.crisis_cost_unmitigated) << '\n'
                << "delta_restore_rate: " << fundstab::format_number(rep.delta_restore_rate)
                << '\n'
                << "delta_dominating_structure: "
                << (rep.delta_dominating_structure
                        ? fundstab::format_number(*rep.delta_dominating_structure)
                        : std::string("not_found"))
                << '\n'
                << "delta_min_feasible: " << fundstab::format_number(rep.delta_min_feasible)
                << '\n';
    });

    // --- sweep ---------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "solve across a 1D or 2D parameter grid, as CSV");
    std::string w_axis1, w_axis2, w_out;
    double w_from{}, w_to{}, w_step{}, w_from2{}, w_to2{}, w_step2{};
    double w_theta{}, w_delta{}, w_rt{}, w_re{};
    sweep->add_option("--axis1", w_axis1, "first swept parameter (theta|delta|rt|re)")
        ->required();
    sweep->add_option("--from", w_from, "axis1 start")->required();
    sweep->add_option("--to", w_to, "axis1 end (inclusive)")->required();
    sweep->add_option("--step", w_step, "axis1 increment")->required();
    sweep->add_option("--axis2", w_axis2, "optional second swept parameter");
    sweep->add_option("--from2", w_from2, "axis2 start");
    sweep->add_option("--to2", w_to2, "axis2 end (inclusive)");
    sweep->add_option("--step2", w_step2, "axis2 increment");
    sweep->add_option("--theta", w_theta, "fixed fire-sale liquidity exponent");
    sweep->add_option("--delta", w_delta, "fixed collateral eligibility exponent");
    sweep->add_option("--rt", w_rt, "fixed term funding rate");
    sweep->add_option("--re", w_re, "fixed equity rate");
    sweep->add_option("--out", w_out, "write CSV to this file instead of stdout");
    sweep->add_option("--config", cfg_path_doc,
                  "read key=value defaults from a file; explicit flags override");
    sweep->callback([&] {
      fundstab::SweepSpec spec;
      spec.tol = tol;
      spec.axis1 = {normalize_param(w_axis1), w_from, w_to, w_step};
      if (sweep->count("--axis2")) {
        if (!sweep->count("--from2") || !sweep->count("--to2") || !sweep->count("--step2"))
          throw fundstab::config_error("--axis2 requires --from2, --to2 and --step2");
        spec.axis2 = fundstab::AxisSpec{normalize_param(w_axis2), w_from2, w_to2, w_step2};
      }
      if (sweep->count("--theta")) spec.fixed["theta"] = w_theta;
      if (sweep->count("--delta")) spec.fixed["delta"] = w_delta;
      if (sweep->count("--rt")) spec.fixed["r_t"] = w_rt;
      if (sweep->count("--re")) spec.fixed["r_e"] = w_re;
      emit(fundstab::to_csv(fundstab::run_sweep(spec)), w_out);
    });

    // --- calibrate -----------------------------------------------------
    auto* cal = app.add_subcommand(
        "calibrate", "back exponents out of observable aggregates");
    double g_haircut{}, g_cost{};
    cal->add_option("--avg-haircut", g_haircut,
                    "average haircut when pledging the whole book, in (0,1)");
    cal->add_option("--default-cost", g_cost,
                    "value share destroyed by a full liquidation, in (0,1)");
    cal->add_option("--config", cfg_path_doc,
                  "read key=value defaults from a file; explicit flags override");
    cal->callback([&] {
      if (!cal->count("--avg-haircut") && !cal->count("--default-cost"))
        throw fundstab::config_error("calibrate needs --avg-haircut and/or --default-cost");
      if (cal->count("--avg-haircut"))
        std::cout << "delta: "
                  << fundstab::format_number(
                         fundstab::calibrate_delta_from_average_haircut(g_haircut))
                  << '\n';
      if (cal->count("--default-cost"))
        std::cout << "theta: "
                  << fundstab::format_number(
                         fundstab::calibrate_theta_from_default_cost(g_cost))
                  << '\n';
    });

    try {
      auto args = args_with_config(argc, argv);
      std::reverse(args.begin(), args.end());  // CLI11 takes reversed vectors
      app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;
    }
    return 0;
  } catch (const fundstab::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv) { return cli_main(argc, argv); }

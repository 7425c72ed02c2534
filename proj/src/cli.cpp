#include "cvtele/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include "cvtele/errors.hpp"
#include "cvtele/format.hpp"
#include "cvtele/localization.hpp"
#include "cvtele/optimizer.hpp"
#include "cvtele/teleportation.hpp"

namespace cvtele::cli {

namespace {

using Json = nlohmann::ordered_json;

// Empty cells are written as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, int, bool, std::string>;

struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c)
{
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return "";
        else if constexpr (std::is_same_v<T, double>)
          return format_number(v);
        else if constexpr (std::is_same_v<T, int>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return v;
      },
      c);
}

// Numbers go through the CSV text so both encodings carry the same value.
Json cell_json(const Cell& c)
{
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v))
            return format_number(v);
          return std::stod(format_number(v));
        } else
          return v;
      },
      c);
}

std::string render_csv(const Table& t)
{
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i)
    s += (i ? "," : "") + t.header[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      s += (i ? "," : "") + cell_text(row[i]);
    s += '\n';
  }
  return s;
}

std::string render_json(const Table& t, const std::string& command, Json config)
{
  Json doc;
  doc["tool"] = "cvtele";
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["config"] = std::move(config);
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      obj[t.header[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Table sweep_table(const std::vector<SweepRow>& rows)
{
  Table t;
  std::stringstream header(kSweepHeader);
  for (std::string col; std::getline(header, col, ',');)
    t.header.push_back(col);
  for (const auto& r : rows) {
    Cell tau = std::monostate{};
    if (r.e_tau)
      tau = *r.e_tau;
    t.rows.push_back({r.n, r.rbar, r.f_opt, r.f_equal, r.f_unbiased, r.f_worst, r.eta_n, r.e_t, r.e_f_loc, tau});
  }
  return t;
}

const char* base_name(LogBase base)
{
  return base == LogBase::two ? "2" : "e";
}

Json sweep_config_json(const SweepConfig& c)
{
  return Json{{"N_list", c.n_list}, {"n1", c.n1},         {"n2", c.n2},      {"rbar_min", c.rbar_min},
              {"rbar_max", c.rbar_max}, {"steps", c.steps}, {"log_base", base_name(c.base)}};
}

SweepRow sweep_row(int n, double n1, double n2, double rbar, LogBase base)
{
  const ResourceFamily family{n, n1, n2, rbar};
  const auto best = optimal_fidelity(family);
  const auto spec = family.at(best.d_opt);
  SweepRow row{};
  row.n = n;
  row.rbar = rbar;
  row.f_opt = best.fidelity_opt;
  row.f_equal = fidelity_network_closed_form(family.at(0.0)).fidelity;
  row.f_unbiased = fidelity_network_closed_form(family.at(d_unbiased(family).d)).fidelity;
  row.f_worst = worst_case(family).fidelity_worst;
  row.eta_n = eta_generalized(spec);
  row.e_t = entanglement_of_teleportation(row.eta_n);
  row.e_f_loc = eof_localizable(row.e_t, base);
  if (n == 3)
    row.e_tau = contangle_if_pure(build_resource(spec), row.e_t, base);
  return row;
}

} // namespace

std::vector<SweepRow> sweep(const SweepConfig& config)
{
  if (config.steps < 2)
    throw InvalidArgument("sweep: steps must be at least 2");
  if (!(config.rbar_min >= 0.0) || !(config.rbar_max >= config.rbar_min) || !std::isfinite(config.rbar_max))
    throw InvalidArgument("sweep: need 0 <= rbar_min <= rbar_max");
  if (config.n_list.empty())
    throw InvalidArgument("sweep: empty N list");
  for (int n : config.n_list)
    validate(ResourceFamily{n, config.n1, config.n2, config.rbar_min});

  const auto steps = static_cast<std::size_t>(config.steps);
  const std::size_t total = config.n_list.size() * steps;
  std::vector<SweepRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < total; i = next++) {
      const int n = config.n_list[i / steps];
      const auto k = static_cast<double>(i % steps);
      const double rbar =
          config.rbar_min + (config.rbar_max - config.rbar_min) * k / static_cast<double>(steps - 1);
      try {
        rows[i] = sweep_row(n, config.n1, config.n2, rbar, config.base);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const unsigned n_threads =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(total));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
  return render_csv(sweep_table(rows));
}

std::string sweep_json(const std::vector<SweepRow>& rows, const SweepConfig& config)
{
  return render_json(sweep_table(rows), "sweep", sweep_config_json(config));
}

namespace {

struct PointOptions
{
  int n = 2;
  double n1 = 1.0;
  double n2 = 1.0;
  double rbar = 0.0;
  std::optional<double> d;
  std::optional<double> gain;
  int sender = 0;
  int receiver = 1;
  bool unconstrained = false;
  bool numerical = false;

  BiasMode mode() const { return unconstrained ? BiasMode::unconstrained : BiasMode::clamped; }
  ResourceFamily family() const { return {n, n1, n2, rbar}; }

  // d defaults to the optimal bias for the selected mode
  ResourceSpec spec() const
  {
    validate(family());
    if (d)
      return family().at(*d);
    return family().at(optimal_fidelity(family(), mode()).d_opt);
  }
};

struct Output
{
  std::string format = "csv";
  std::string log_base = "2";

  LogBase base() const { return log_base == "e" ? LogBase::e : LogBase::two; }
};

void add_point_options(CLI::App* cmd, PointOptions& p, bool with_protocol)
{
  cmd->add_option("--N", p.n, "Number of users (modes)");
  cmd->add_option("--n1", p.n1, "Noise of the momentum-squeezed input");
  cmd->add_option("--n2", p.n2, "Noise of the position-squeezed inputs");
  cmd->add_option("--rbar", p.rbar, "Average squeezing");
  cmd->add_option("--d", p.d, "Squeezing bias (default: optimal)");
  cmd->add_flag("--unconstrained", p.unconstrained, "Allow |d| > rbar");
  if (with_protocol) {
    cmd->add_option("--gain", p.gain, "Feed-forward gain (default: optimal)");
    cmd->add_option("--sender", p.sender, "Sender mode index");
    cmd->add_option("--receiver", p.receiver, "Receiver mode index");
  }
}

void add_output_options(CLI::App* cmd, Output& o)
{
  cmd->add_option("--output", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--log-base", o.log_base, "Logarithm base for entropies")->check(CLI::IsMember({"2", "e"}));
}

Json point_config(const PointOptions& p, const Output& o)
{
  Json c{{"N", p.n}, {"n1", p.n1}, {"n2", p.n2}, {"rbar", p.rbar}};
  c["d"] = p.d ? Json(*p.d) : Json(nullptr);
  c["gain"] = p.gain ? Json(*p.gain) : Json(nullptr);
  c["sender"] = p.sender;
  c["receiver"] = p.receiver;
  c["unconstrained"] = p.unconstrained;
  c["log_base"] = o.log_base;
  return c;
}

Table cmd_fidelity(const PointOptions& p)
{
  const auto spec = p.spec();
  const auto r = fidelity_network(spec, {p.sender, p.receiver, p.gain}, p.mode());
  return {{"N", "n1", "n2", "rbar", "d", "gain", "var_x_rel", "var_p_tot", "fidelity"},
          {{spec.modes, spec.n1, spec.n2, spec.rbar, spec.d, r.gain_used, r.var_x_rel, r.var_p_tot, r.fidelity}}};
}

Table cmd_optimize(const PointOptions& p)
{
  const auto family = p.family();
  validate(family);
  OptimizationResult r;
  if (p.numerical) {
    const SearchBounds bounds =
        p.unconstrained ? SearchBounds{-family.rbar - 5.0, family.rbar + 5.0} : SearchBounds{-family.rbar, family.rbar};
    r = numerical_optimum(family, bounds);
  } else {
    r = optimal_fidelity(family, p.mode());
  }
  return {{"N", "n1", "n2", "rbar", "d_opt", "g_opt", "F_opt", "eta_N", "at_boundary", "method"},
          {{family.modes, family.n1, family.n2, family.rbar, r.d_opt, r.g_opt, r.fidelity_opt, r.eta_n,
            r.at_boundary, std::string(r.method == OptimizationMethod::numerical ? "numerical" : "closed_form")}}};
}

Table cmd_entanglement(const PointOptions& p, LogBase base)
{
  const auto spec = p.spec();
  const auto r = entanglement_report(spec, base, p.mode());
  Cell e_f = std::monostate{};
  if (r.e_f)
    e_f = *r.e_f;
  Cell e_tau = std::monostate{};
  if (r.e_tau)
    e_tau = *r.e_tau;
  return {{"N", "n1", "n2", "rbar", "d", "eta", "eta_N", "E_F", "E_T", "E_F_loc", "E_tau"},
          {{spec.modes, spec.n1, spec.n2, spec.rbar, spec.d, r.eta, r.eta_n, e_f, r.e_t, r.e_f_loc, e_tau}}};
}

Table cmd_localize(const PointOptions& p, LogBase base)
{
  const auto spec = p.spec();
  const double eta_loc = localizable_eta(spec, p.mode());
  return {{"N", "n1", "n2", "rbar", "d", "eta_loc", "eta_N", "E_F_loc", "epr_quarter_sum"},
          {{spec.modes, spec.n1, spec.n2, spec.rbar, spec.d, eta_loc, eta_generalized(spec),
            eof_symmetric(eta_loc, base), localized_epr_quarter_sum(spec, p.mode())}}};
}

int cmd_verify(const VerifyConfig& config, std::ostream& out)
{
  bool all = true;
  for (const auto& s : verify(config)) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << ": max deviation " << format_number(s.max_deviation)
        << " (tolerance " << format_number(s.tolerance) << ")\n";
    if (!s.passed) {
      out << "  at " << s.worst_point << "\n";
      all = false;
    }
  }
  return all ? kSuccess : kVerificationFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Noisy Gaussian resources for continuous-variable teleportation networks", "cvtele"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  PointOptions point;
  Output output;

  auto* fidelity = app.add_subcommand("fidelity", "Teleportation fidelity at one point");
  add_point_options(fidelity, point, true);
  add_output_options(fidelity, output);

  auto* optimize = app.add_subcommand("optimize", "Optimal bias and gain");
  add_point_options(optimize, point, false);
  optimize->add_flag("--numerical", point.numerical, "Use the numerical optimizer");
  add_output_options(optimize, output);

  auto* entanglement = app.add_subcommand("entanglement", "Entanglement report for one resource");
  add_point_options(entanglement, point, false);
  add_output_options(entanglement, output);

  auto* localize_cmd = app.add_subcommand("localize", "Entanglement localized on modes 0 and 1");
  add_point_options(localize_cmd, point, false);
  add_output_options(localize_cmd, output);

  SweepConfig sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity and entanglement over N and rbar");
  sweep_cmd->add_option("--N-list", sweep_config.n_list, "Network sizes")->delimiter(',');
  sweep_cmd->add_option("--n1", sweep_config.n1);
  sweep_cmd->add_option("--n2", sweep_config.n2);
  sweep_cmd->add_option("--rbar-min", sweep_config.rbar_min);
  sweep_cmd->add_option("--rbar-max", sweep_config.rbar_max);
  sweep_cmd->add_option("--steps", sweep_config.steps, "Points per N (>= 2)");
  add_output_options(sweep_cmd, output);

  VerifyConfig verify_config;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check closed forms, pipeline, optimizer and sampling");
  verify_cmd->add_option("--seed", verify_config.seed);
  verify_cmd->add_option("--samples", verify_config.samples);
  verify_cmd->add_flag("--inject-fault", verify_config.inject_fault, "Perturb one suite (harness check)");

  // CLI11 consumes arguments from the back
  std::vector<std::string> reversed;
  if (!args.empty())
    reversed.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*verify_cmd)
      return cmd_verify(verify_config, out);

    Table table;
    Json config;
    std::string command;
    if (*sweep_cmd) {
      sweep_config.base = output.base();
      const auto rows = sweep(sweep_config);
      out << (output.format == "json" ? sweep_json(rows, sweep_config) : sweep_csv(rows));
      return kSuccess;
    }
    if (*fidelity) {
      command = "fidelity";
      table = cmd_fidelity(point);
    } else if (*optimize) {
      command = "optimize";
      table = cmd_optimize(point);
    } else if (*entanglement) {
      command = "entanglement";
      table = cmd_entanglement(point, output.base());
    } else {
      command = "localize";
      table = cmd_localize(point, output.base());
    }
    out << (output.format == "json" ? render_json(table, command, point_config(point, output)) : render_csv(table));
    return kSuccess;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

} // namespace cvtele::cli

// pqb: command-line front end for the (p,q)-Bernstein operator library.
//
// Exit codes: 0 success, 1 computation or I/O failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pqb/convergence.hpp"
#include "pqb/corpus.hpp"
#include "pqb/table.hpp"
#include "pqb/version.hpp"

namespace {

using namespace pqb;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string config_path;
  int n = 0;
  std::string n_list;
  std::string p, q;
  std::string scheme = "one-minus-reciprocal";
  int r = 0;
  int m = 0;
  std::string function;
  int grid = 1024;
  std::string mode;  // effective default depends on the command
  std::string output = "csv";
  std::string out = "-";
  bool plot = false;
};

// Fields the user supplied explicitly (flag or config file).
struct Presence {
  bool n = false, n_list = false, p = false, q = false, scheme = false, r = false, m = false,
       function = false, grid = false, mode = false, output = false, out = false, plot = false;
};

void apply_config_file(Options& opts, Presence& given) {
  std::ifstream in(opts.config_path);
  if (!in) throw UsageError("cannot read config file: " + opts.config_path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  auto as_string = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw UsageError("config value must be a string or integer");
  };
  for (const auto& [key, value] : cfg.items()) {
    if (key == "n") {
      if (!given.n) opts.n = value.get<int>(), given.n = true;
    } else if (key == "n-list") {
      if (!given.n_list) {
        if (value.is_array()) {
          std::string joined;
          for (const auto& v : value) joined += (joined.empty() ? "" : ",") + std::to_string(v.get<int>());
          opts.n_list = joined;
        } else {
          opts.n_list = as_string(value);
        }
        given.n_list = true;
      }
    } else if (key == "p") {
      if (!given.p) opts.p = as_string(value), given.p = true;
    } else if (key == "q") {
      if (!given.q) opts.q = as_string(value), given.q = true;
    } else if (key == "scheme") {
      if (!given.scheme) opts.scheme = as_string(value), given.scheme = true;
    } else if (key == "r") {
      if (!given.r) opts.r = value.get<int>(), given.r = true;
    } else if (key == "m") {
      if (!given.m) opts.m = value.get<int>(), given.m = true;
    } else if (key == "function") {
      if (!given.function) opts.function = as_string(value), given.function = true;
    } else if (key == "grid") {
      if (!given.grid) opts.grid = value.get<int>(), given.grid = true;
    } else if (key == "mode") {
      if (!given.mode) opts.mode = as_string(value), given.mode = true;
    } else if (key == "output") {
      if (!given.output) opts.output = as_string(value), given.output = true;
    } else if (key == "out") {
      if (!given.out) opts.out = as_string(value), given.out = true;
    } else if (key == "plot") {
      if (!given.plot) opts.plot = value.get<bool>(), given.plot = true;
    } else {
      throw UsageError("unknown config key: " + key);
    }
  }
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (...) {
      throw UsageError("bad --n-list entry: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--n-list is empty");
  return out;
}

Rational parse_rational_or_fail(const std::string& text, const std::string& flag) {
  const auto v = parse_rational(text);
  if (!v)
    throw UsageError("flag " + flag + ": '" + text +
                     "' is not an exact rational (use num/den; decimals are not accepted in rational mode)");
  return *v;
}

double parse_scalar_or_fail(const std::string& text, const std::string& flag) {
  if (text.find('/') != std::string::npos) {
    const auto v = parse_rational(text);
    if (!v) throw UsageError("flag " + flag + ": bad rational '" + text + "'");
    return to_double(*v);
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (...) {
    throw UsageError("flag " + flag + ": bad number '" + text + "'");
  }
}

const FunctionBundle& bundle_or_fail(const std::string& name) {
  const FunctionBundle* b = find_corpus(name);
  if (b) return *b;
  std::string names;
  for (const auto& c : corpus()) names += (names.empty() ? "" : ", ") + c.name;
  throw UsageError("unknown --function '" + name + "'; corpus: " + names);
}

ParamSequence sequence_from(const Options& opts, const Presence& given) {
  if (opts.scheme == "fixed") {
    if (!given.p || !given.q) throw UsageError("--scheme fixed requires --p and --q");
    return make_fixed(parse_scalar_or_fail(opts.p, "--p"), parse_scalar_or_fail(opts.q, "--q"));
  }
  if (opts.scheme == "one-minus-reciprocal") return make_one_minus_reciprocal();
  throw UsageError("unknown --scheme '" + opts.scheme + "' (fixed | one-minus-reciprocal)");
}

void check_mode(const Options& opts, const Presence& given, const std::string& required) {
  if (given.mode && opts.mode != required)
    throw UsageError(opts.command + " runs in " + required + " mode only");
}

void push_meta(ResultTable& table, const Options& opts, const std::string& mode) {
  table.meta.emplace_back("command", opts.command);
  table.meta.emplace_back("version", kVersion);
  table.meta.emplace_back("mode", mode);
}

std::string verdict_name(ConvergenceVerdict v) {
  return v == ConvergenceVerdict::Converged ? "converged" : "not-converged";
}

ResultTable run_eval(const Options& opts, const Presence& given) {
  check_mode(opts, given, "float");
  if (!given.function || !given.n || !given.p || !given.q)
    throw UsageError("eval requires --function, --n, --p, --q");
  const FunctionBundle& bundle = bundle_or_fail(opts.function);
  const PQParamsF pq(parse_scalar_or_fail(opts.p, "--p"), parse_scalar_or_fail(opts.q, "--q"));
  ResultTable table;
  push_meta(table, opts, "float");
  table.meta.emplace_back("function", opts.function);
  table.meta.emplace_back("n", std::to_string(opts.n));
  table.meta.emplace_back("p", format_double(pq.p));
  table.meta.emplace_back("q", format_double(pq.q));
  table.meta.emplace_back("r", std::to_string(opts.r));
  table.meta.emplace_back("grid", std::to_string(opts.grid));
  table.schema = {"x", "bf", "brf", "f", "error"};
  for (int i = 0; i <= opts.grid; ++i) {
    const double x = static_cast<double>(i) / opts.grid;
    const double bf = apply_higher(bundle, 0, opts.n, pq, x);
    const double brf = apply_higher(bundle, opts.r, opts.n, pq, x);
    const double fx = bundle.f(x);
    table.rows.push_back({format_double(x), format_double(bf), format_double(brf),
                          format_double(fx), format_double(std::abs(brf - fx))});
  }
  return table;
}

ResultTable run_moments(const Options& opts, const Presence& given) {
  check_mode(opts, given, "rational");
  if (!given.n || !given.m || !given.p || !given.q)
    throw UsageError("moments requires --n, --m, --p, --q");
  if (opts.m < 1) throw UsageError("moments requires --m >= 1");
  const PQParamsR pq(parse_rational_or_fail(opts.p, "--p"), parse_rational_or_fail(opts.q, "--q"));
  ResultTable table;
  push_meta(table, opts, "rational");
  table.meta.emplace_back("n", std::to_string(opts.n));
  table.meta.emplace_back("m", std::to_string(opts.m));
  table.meta.emplace_back("p", to_fraction_string(pq.p));
  table.meta.emplace_back("q", to_fraction_string(pq.q));
  table.schema = {"n", "m", "row", "index", "value"};
  const MomentPoly moment = central_moment_pq(opts.n, opts.m, pq);
  for (int i = 0; i <= std::max(0, moment.poly.degree()); ++i)
    table.rows.push_back({std::to_string(opts.n), std::to_string(opts.m), "coeff", std::to_string(i),
                          to_fraction_string(moment.poly.coefficient(static_cast<std::size_t>(i)))});
  if (opts.m >= 2) {
    const MomentDecomposition dec = decompose_moment(opts.n, opts.m, pq);
    for (std::size_t k = 0; k < dec.b.size(); ++k)
      table.rows.push_back({std::to_string(opts.n), std::to_string(opts.m), "b", std::to_string(k),
                            to_fraction_string(dec.b[k])});
  }
  return table;
}

ResultTable run_recurrence_check(const Options& opts, const Presence& given) {
  check_mode(opts, given, "rational");
  if (!given.n || !given.m || !given.p || !given.q)
    throw UsageError("recurrence-check requires --n, --m, --p, --q (upper bounds for n and m)");
  if (opts.n < 2 || opts.m < 1) throw UsageError("recurrence-check needs --n >= 2 and --m >= 1");
  const PQParamsR pq(parse_rational_or_fail(opts.p, "--p"), parse_rational_or_fail(opts.q, "--q"));
  ResultTable table;
  push_meta(table, opts, "rational");
  table.meta.emplace_back("n_max", std::to_string(opts.n));
  table.meta.emplace_back("m_max", std::to_string(opts.m));
  table.meta.emplace_back("p", to_fraction_string(pq.p));
  table.meta.emplace_back("q", to_fraction_string(pq.q));
  table.schema = {"n", "m", "p", "q", "residual_degree", "verdict"};
  for (int n = 2; n <= opts.n; ++n)
    for (int m = 1; m <= opts.m; ++m) {
      const RatPoly residual = moment_recurrence_residual(n, m, pq);
      table.rows.push_back({std::to_string(n), std::to_string(m), to_fraction_string(pq.p),
                            to_fraction_string(pq.q), std::to_string(residual.degree()),
                            residual.is_zero() ? "zero" : "nonzero"});
    }
  return table;
}

ResultTable run_converge(const Options& opts, const Presence& given) {
  check_mode(opts, given, "float");
  if (!given.function || !given.n_list) throw UsageError("converge requires --function and --n-list");
  const FunctionBundle& bundle = bundle_or_fail(opts.function);
  const ParamSequence seq = sequence_from(opts, given);
  const std::vector<int> ns = parse_n_list(opts.n_list);
  const auto records = run_bound_experiment(bundle, opts.r, seq, ns, opts.grid);
  ResultTable table;
  push_meta(table, opts, "float");
  table.meta.emplace_back("function", opts.function);
  table.meta.emplace_back("r", std::to_string(opts.r));
  table.meta.emplace_back("scheme", opts.scheme);
  table.meta.emplace_back("n_list", opts.n_list);
  table.meta.emplace_back("grid", std::to_string(opts.grid));
  table.meta.emplace_back("convergence", verdict_name(assess_convergence(records)));
  table.schema = {"n", "p_n", "q_n", "bracket_n", "sup_error", "omega", "bound", "ratio"};
  for (const auto& rec : records)
    table.rows.push_back({std::to_string(rec.n), format_double(rec.p), format_double(rec.q),
                          format_double(rec.bracket_n), format_double(rec.sup_error),
                          format_double(rec.omega), format_double(rec.bound), format_double(rec.ratio)});
  return table;
}

ResultTable run_voronovskaja(const Options& opts, const Presence& given) {
  check_mode(opts, given, "float");
  if (!given.function || !given.n_list)
    throw UsageError("voronovskaja requires --function and --n-list");
  const FunctionBundle& bundle = bundle_or_fail(opts.function);
  const ParamSequence seq = sequence_from(opts, given);
  const std::vector<int> ns = parse_n_list(opts.n_list);
  const auto rows = voronovskaja_table(bundle, seq, ns, opts.grid);
  ResultTable table;
  push_meta(table, opts, "float");
  table.meta.emplace_back("function", opts.function);
  table.meta.emplace_back("scheme", opts.scheme);
  table.meta.emplace_back("n_list", opts.n_list);
  table.meta.emplace_back("grid", std::to_string(opts.grid));
  table.schema = {"n", "p_n", "q_n", "bracket_n", "deviation"};
  for (const auto& row : rows)
    table.rows.push_back({std::to_string(row.n), format_double(row.p), format_double(row.q),
                          format_double(row.bracket_n), format_double(row.deviation)});
  return table;
}

ResultTable run_constants(const Options& opts, const Presence& given) {
  check_mode(opts, given, "float");
  if (!given.m || !given.n_list || !given.p || !given.q)
    throw UsageError("constants requires --m, --n-list, --p, --q");
  if (opts.m < 1) throw UsageError("constants requires --m >= 1");
  const PQParamsF pq(parse_scalar_or_fail(opts.p, "--p"), parse_scalar_or_fail(opts.q, "--q"));
  const std::vector<int> ns = parse_n_list(opts.n_list);
  ResultTable table;
  push_meta(table, opts, "float");
  table.meta.emplace_back("m_max", std::to_string(opts.m));
  table.meta.emplace_back("n_list", opts.n_list);
  table.meta.emplace_back("p", format_double(pq.p));
  table.meta.emplace_back("q", format_double(pq.q));
  table.meta.emplace_back("grid", std::to_string(opts.grid));
  table.meta.emplace_back("x_grid", "i/" + std::to_string(opts.grid) + ",i=1.." + std::to_string(opts.grid - 1));
  table.schema = {"m", "c_exponent", "k_exponent", "c_hat", "k_hat"};
  const PQParamsF pqs[] = {pq};
  for (int m = 1; m <= opts.m; ++m) {
    const auto est = estimate_constants(m, ns, pqs, AbsoluteMomentKind::PQPower, opts.grid);
    table.rows.push_back({std::to_string(est.m), std::to_string(est.c_exponent),
                          format_double(est.k_exponent), format_double(est.c_hat),
                          format_double(est.k_hat)});
  }
  return table;
}

void write_plot_script(const Options& opts) {
  std::string xy, extra;
  if (opts.command == "converge") {
    xy = "using 4:5 with linespoints title 'sup error'";
    extra = "set logscale xy\nset xlabel '[n]'\nset ylabel 'sup error'\n";
  } else if (opts.command == "voronovskaja") {
    xy = "using 1:5 with linespoints title 'deviation'";
    extra = "set logscale x\nset xlabel 'n'\nset ylabel 'deviation'\n";
  } else if (opts.command == "constants") {
    xy = "using 1:4 with linespoints title 'C', '" + opts.out + "' every ::1 using 1:5 with linespoints title 'K'";
    extra = "set xlabel 'm'\n";
  } else {
    xy = "using 1:5 with lines title 'error'";
    extra = "set xlabel 'x'\nset ylabel 'error'\n";
  }
  const std::string path = opts.out + ".gp";
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write plot script: " + path);
  os << "set datafile separator ','\n" << extra << "plot '" << opts.out << "' every ::1 " << xy << "\n";
  os.flush();
  if (!os) throw std::runtime_error("failed writing plot script: " + path);
}

void emit(const ResultTable& table, const Options& opts) {
  const bool to_stdout = opts.out == "-" || opts.out.empty();
  std::ostringstream buf;
  if (opts.output == "csv")
    write_csv(table, buf);
  else if (opts.output == "json")
    write_json(table, buf);
  else
    throw UsageError("unknown --output '" + opts.output + "' (csv | json)");
  if (to_stdout) {
    std::cout << buf.str();
    return;
  }
  std::ofstream os(opts.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output path: " + opts.out);
  os << buf.str();
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + opts.out);
}

int run(const Options& opts, const Presence& given) {
  ResultTable table;
  if (opts.command == "eval")
    table = run_eval(opts, given);
  else if (opts.command == "moments")
    table = run_moments(opts, given);
  else if (opts.command == "recurrence-check")
    table = run_recurrence_check(opts, given);
  else if (opts.command == "converge")
    table = run_converge(opts, given);
  else if (opts.command == "voronovskaja")
    table = run_voronovskaja(opts, given);
  else
    table = run_constants(opts, given);
  table.meta.emplace_back("output", opts.output);
  if (opts.plot) {
    if (opts.output != "csv" || opts.out == "-" || opts.out.empty())
      throw UsageError("--plot needs --output csv and a file --out");
    write_plot_script(opts);
  }
  emit(table, opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  Presence given;
  CLI::App app{"Revised (p,q)-Bernstein operators: exact identity checks and convergence experiments"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", pqb::kVersion);

  std::vector<CLI::App*> subs;
  for (const char* name :
       {"eval", "moments", "recurrence-check", "converge", "voronovskaja", "constants"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config_path, "JSON config file; flags override file values");
    sub->add_option("--n", opts.n, "degree (upper bound for recurrence-check)");
    sub->add_option("--n-list", opts.n_list, "comma-separated degrees, e.g. 16,32,64");
    sub->add_option("--p", opts.p, "parameter p (num/den in rational mode)");
    sub->add_option("--q", opts.q, "parameter q (num/den in rational mode)");
    sub->add_option("--scheme", opts.scheme, "fixed | one-minus-reciprocal");
    sub->add_option("--r", opts.r, "operator order");
    sub->add_option("--m", opts.m, "moment order (upper bound for sweeps)");
    sub->add_option("--function", opts.function, "corpus function name");
    sub->add_option("--grid", opts.grid, "evaluation grid size (default 1024)");
    sub->add_option("--mode", opts.mode, "float | rational");
    sub->add_option("--output", opts.output, "csv | json");
    sub->add_option("--out", opts.out, "output path; '-' for stdout");
    sub->add_flag("--plot", opts.plot, "also write a gnuplot script next to the CSV");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = nullptr;
  for (CLI::App* sub : subs)
    if (sub->parsed()) active = sub;
  if (!active) {
    std::cerr << "pqb: no command given; see --help\n";
    return 2;
  }
  opts.command = active->get_name();
  given.n = active->count("--n") > 0;
  given.n_list = active->count("--n-list") > 0;
  given.p = active->count("--p") > 0;
  given.q = active->count("--q") > 0;
  given.scheme = active->count("--scheme") > 0;
  given.r = active->count("--r") > 0;
  given.m = active->count("--m") > 0;
  given.function = active->count("--function") > 0;
  given.grid = active->count("--grid") > 0;
  given.mode = active->count("--mode") > 0;
  given.output = active->count("--output") > 0;
  given.out = active->count("--out") > 0;
  given.plot = active->count("--plot") > 0;

  try {
    if (active->count("--config") > 0) apply_config_file(opts, given);
    if (given.mode && opts.mode != "float" && opts.mode != "rational")
      throw UsageError("unknown --mode '" + opts.mode + "' (float | rational)");
    if (opts.grid < 1) throw UsageError("--grid must be positive");
    return run(opts, given);
  } catch (const UsageError& e) {
    std::cerr << "pqb: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pqb: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pqb: " << e.what() << "\n";
    return 1;
  }
}

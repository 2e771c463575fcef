#include "selectboost/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "selectboost/boost.hpp"
#include "selectboost/error.hpp"
#include "selectboost/io.hpp"
#include "selectboost/parallel.hpp"
#include "selectboost/report.hpp"
#include "selectboost/simulate.hpp"

namespace selectboost {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A flag whose value wins over the config file only when given explicitly.
template <typename T>
struct Flag {
  T value{};
  CLI::Option* option = nullptr;
  bool given() const { return option != nullptr && option->count() > 0; }
};

struct RunConfig {
  std::string design;
  std::string response;
  std::string out;
  Family family = Family::Logistic;
  GroupingStrategy grouping = GroupingStrategy::Correlation;
  std::vector<double> c0_grid;
  int B = 0;
  double threshold = 1.0;
  int cv_k = 10;
  LambdaRule lambda_rule = LambdaRule::Min;
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<StudyMethod> methods;
  SimulationConfig simulation;
  int stability_B = 100;
  double stability_threshold = 0.9;
};

struct CommonFlags {
  Flag<std::string> config;
  Flag<std::string> family;
  Flag<std::string> grouping;
  Flag<std::string> c0_grid;
  Flag<int> B;
  Flag<double> threshold;
  Flag<int> cv_k;
  Flag<std::string> lambda_rule;
  Flag<std::uint64_t> seed;
  Flag<int> threads;
  Flag<std::string> out;
  Flag<std::string> design;
  Flag<std::string> response;
};

template <typename T>
void add(CLI::App* app, Flag<T>& flag, const std::string& name, const std::string& help) {
  flag.option = app->add_option(name, flag.value, help);
}

void add_run_flags(CLI::App* app, CommonFlags& f, bool with_data) {
  add(app, f.config, "--config", "JSON file with run settings; explicit flags override it");
  add(app, f.family, "--family", "linear | logistic");
  add(app, f.grouping, "--grouping", "correlation | community");
  add(app, f.c0_grid, "--c0-grid", "decreasing grid starting at 1: '1,0.9,0.8' or '1:0.7:0.05'");
  add(app, f.B, "--B", "perturbed replicates per grid point");
  add(app, f.threshold, "--threshold", "selection frequency needed to keep a variable");
  add(app, f.cv_k, "--cv-k", "cross-validation folds");
  add(app, f.lambda_rule, "--lambda-rule", "min | 1se");
  add(app, f.seed, "--seed", "random seed");
  add(app, f.threads, "--threads", "worker threads (results do not depend on it)");
  add(app, f.out, "--out", "output directory");
  if (with_data) {
    add(app, f.design, "--design", "design CSV (header row of names, one observation per row)");
    add(app, f.response, "--response", "single-column response CSV");
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, "config '" + path + "': " + e.what());
  }
}

std::vector<double> grid_from_json(const json& value) {
  if (value.is_string()) return parse_c0_grid(value.get<std::string>());
  return value.get<std::vector<double>>();
}

// Resolution order: explicit flag, then config file, then the command default.
template <typename T, typename Convert>
void resolve(const Flag<T>& flag, const json& file, const char* key, Convert convert,
             auto& target) {
  if (flag.given()) {
    target = convert(flag.value);
  } else if (file.contains(key)) {
    target = convert(file.at(key).template get<T>());
  }
}

RunConfig resolve_common(const CommonFlags& f, RunConfig cfg) {
  const json file = f.config.given() ? load_json(f.config.value) : json::object();
  const auto same = [](const auto& v) { return v; };
  resolve(f.family, file, "family", [](const std::string& s) { return parse_family(s); }, cfg.family);
  resolve(f.grouping, file, "grouping",
          [](const std::string& s) { return parse_grouping_strategy(s); }, cfg.grouping);
  if (f.c0_grid.given()) {
    cfg.c0_grid = parse_c0_grid(f.c0_grid.value);
  } else if (file.contains("c0_grid")) {
    cfg.c0_grid = grid_from_json(file.at("c0_grid"));
  }
  resolve(f.B, file, "B", same, cfg.B);
  resolve(f.threshold, file, "threshold", same, cfg.threshold);
  resolve(f.cv_k, file, "cv_k", same, cfg.cv_k);
  resolve(f.lambda_rule, file, "lambda_rule",
          [](const std::string& s) { return parse_lambda_rule(s); }, cfg.lambda_rule);
  resolve(f.seed, file, "seed", same, cfg.seed);
  resolve(f.threads, file, "threads", same, cfg.threads);
  resolve(f.out, file, "out", same, cfg.out);
  resolve(f.design, file, "design", same, cfg.design);
  resolve(f.response, file, "response", same, cfg.response);

  check_c0_grid(cfg.c0_grid);
  if (cfg.B < 1) throw Error(ErrorCode::InvalidArgument, "--B must be >= 1");
  if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "--threshold must lie in (0, 1]");
  }
  if (cfg.cv_k < 2) throw Error(ErrorCode::InvalidArgument, "--cv-k must be >= 2");
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

fs::path prepare_out(const std::string& dir) {
  if (dir.empty()) throw Error(ErrorCode::InvalidArgument, "--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

CvConfig cv_config(const RunConfig& cfg) {
  CvConfig cv;
  cv.folds = cfg.cv_k;
  cv.seed = cfg.seed;
  cv.rule = cfg.lambda_rule;
  return cv;
}

StandardizedDesign load_design(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--design is required");
  DesignTable table = read_design_csv(fs::path(path));
  return standardize(table.values, table.names);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) items.push_back(item.substr(first, last - first + 1));
  }
  return items;
}

// Support entries are variable names, or 0-based indices when no name matches.
std::vector<int> parse_support(const std::string& text, const std::vector<std::string>& names) {
  std::map<std::string, int> by_name;
  for (std::size_t j = 0; j < names.size(); ++j) by_name.emplace(names[j], static_cast<int>(j));
  std::vector<int> support;
  for (const auto& token : split_list(text)) {
    if (auto it = by_name.find(token); it != by_name.end()) {
      support.push_back(it->second);
      continue;
    }
    int index = -1;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec != std::errc() || ptr != token.data() + token.size() || index < 0 ||
        index >= static_cast<int>(names.size())) {
      throw Error(ErrorCode::InvalidArgument, "unknown support variable '" + token + "'");
    }
    support.push_back(index);
  }
  return support;
}

int cmd_simulate(const CommonFlags& f, const std::map<std::string, Flag<double>>& sim_numbers,
                 const Flag<std::string>& methods_flag, std::ostream& out, std::ostream& err) {
  RunConfig defaults;
  defaults.c0_grid = {1.0, 0.9, 0.8, 0.7};
  defaults.B = 100;
  defaults.threshold = 1.0;
  defaults.simulation.N = 50;
  defaults.simulation.P = 200;
  defaults.simulation.q = 10;
  defaults.simulation.n_clusters = 5;
  defaults.simulation.repetitions = 20;
  RunConfig cfg = resolve_common(f, defaults);

  const json file = f.config.given() ? load_json(f.config.value) : json::object();
  auto number = [&](const char* key, double fallback) {
    const auto& flag = sim_numbers.at(key);
    if (flag.given()) return flag.value;
    if (file.contains(key)) return file.at(key).get<double>();
    return fallback;
  };
  SimulationConfig& sim = cfg.simulation;
  sim.N = static_cast<int>(number("N", sim.N));
  sim.P = static_cast<int>(number("P", sim.P));
  sim.q = static_cast<int>(number("q", sim.q));
  sim.n_clusters = static_cast<int>(number("n_clusters", sim.n_clusters));
  sim.within_cluster_noise = number("within_cluster_noise", sim.within_cluster_noise);
  sim.response_noise = number("response_noise", sim.response_noise);
  sim.repetitions = static_cast<int>(number("repetitions", sim.repetitions));
  sim.seed = cfg.seed;
  cfg.stability_B = static_cast<int>(number("stability_B", cfg.stability_B));
  cfg.stability_threshold = number("stability_threshold", cfg.stability_threshold);

  StudyConfig study;
  if (methods_flag.given() || file.contains("methods")) {
    const std::vector<std::string> names =
        methods_flag.given() ? split_list(methods_flag.value)
                             : file.at("methods").get<std::vector<std::string>>();
    study.methods.clear();
    for (const auto& name : names) study.methods.push_back(parse_study_method(name));
  }
  study.simulation = sim;
  study.c0_grid = cfg.c0_grid;
  study.B = cfg.B;
  study.threshold = cfg.threshold;
  study.family = cfg.family;
  study.strategy = cfg.grouping;
  study.cv = cv_config(cfg);
  study.stability_B = cfg.stability_B;
  study.stability_threshold = cfg.stability_threshold;

  const fs::path dir = prepare_out(cfg.out);
  set_threads(cfg.threads);
  err << "simulate: " << sim.repetitions << " repetitions, N=" << sim.N << " P=" << sim.P
      << " q=" << sim.q << ", B=" << study.B << '\n';
  const StudyReport report = run_study(study);

  std::ostringstream metrics_csv;
  write_metrics_csv(metrics_csv, report.rows);
  write_file(dir / "metrics.csv", metrics_csv.str());
  std::ostringstream tradeoff_csv;
  write_tradeoff_csv(tradeoff_csv, report.summary);
  write_file(dir / "tradeoff.csv", tradeoff_csv.str());
  write_file(dir / "summary.json", study_summary_json(report, study).dump(2) + "\n");

  for (const auto& s : report.summary) {
    out << to_string(s.method);
    if (s.c0) out << " c0=" << format_double(*s.c0);
    out << " recall=" << s.mean.recall << " precision=" << s.mean.precision
        << " fscore=" << s.mean.fscore << " selection=" << s.mean.selection;
    if (s.failures) out << " failures=" << s.failures;
    out << '\n';
  }
  return 0;
}

int cmd_sweep(const CommonFlags& f, std::ostream& out, std::ostream& err) {
  RunConfig defaults;
  defaults.c0_grid = make_c0_grid(1.0, 0.7, 0.05);
  defaults.B = 200;
  defaults.threshold = 0.95;
  const RunConfig cfg = resolve_common(f, defaults);

  const StandardizedDesign design = load_design(cfg.design);
  if (cfg.response.empty()) throw Error(ErrorCode::InvalidArgument, "--response is required");
  Eigen::VectorXd y = read_response_csv(fs::path(cfg.response));
  if (y.size() != design.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "response has " + std::to_string(y.size()) + " rows, design has " +
                    std::to_string(design.rows()));
  }
  if (cfg.family == Family::Logistic) y = to_signed_labels(y);

  const fs::path dir = prepare_out(cfg.out);
  set_threads(cfg.threads);
  SweepConfig sweep_config;
  sweep_config.c0_grid = cfg.c0_grid;
  sweep_config.B = cfg.B;
  sweep_config.threshold = cfg.threshold;
  sweep_config.strategy = cfg.grouping;
  sweep_config.seed = cfg.seed;

  const SelectionMethod base = make_lasso_selector(cfg.family, cv_config(cfg));
  err << "sweep: " << cfg.c0_grid.size() << " grid points x B=" << cfg.B << '\n';
  const ConfidencePath path = sweep(design.values, y, base, sweep_config);
  const SelectionMask initial = base(design.values, y);

  write_file(dir / "confidence_path.json",
             confidence_path_json(path, design.variable_names, sweep_config.bands).dump(2) + "\n");
  std::ostringstream long_csv;
  write_confidence_long_csv(long_csv, path, design.variable_names);
  write_file(dir / "confidence_long.csv", long_csv.str());
  std::ostringstream table_csv;
  write_confidence_table_csv(table_csv, path, design.variable_names,
                             initial.coefficients.value_or(Eigen::VectorXd()),
                             design.column_scales);
  write_file(dir / "confidence_table.csv", table_csv.str());

  for (std::size_t p = 0; p < path.gamma.size(); ++p) {
    if (path.gamma[p] > 0.0 || path.band_label[p] != "none") {
      out << design.variable_names[p] << " gamma=" << format_double(path.gamma[p])
          << " contiguous=" << format_double(path.gamma_band[p]) << " band=" << path.band_label[p]
          << '\n';
    }
  }
  return 0;
}

int cmd_groups(const std::string& design_path, double c0, const std::string& strategy,
               const std::string& out_dir, std::ostream& out) {
  const StandardizedDesign design = load_design(design_path);
  const GroupingStrategy parsed = parse_grouping_strategy(strategy);
  const GroupMap groups = make_groups(correlation_matrix(design.values), c0, parsed);
  const std::string text = group_map_json(groups, design.variable_names, parsed).dump(2) + "\n";
  if (out_dir.empty()) {
    out << text;
  } else {
    write_file(prepare_out(out_dir) / "groups.json", text);
  }
  return 0;
}

int cmd_diagnose(const std::string& design_path, const std::string& support_text,
                 const std::string& signs_text, const std::string& out_dir, std::ostream& out) {
  const StandardizedDesign design = load_design(design_path);
  const std::vector<int> support = parse_support(support_text, design.variable_names);
  std::vector<int> signs(support.size(), 1);
  if (!signs_text.empty()) {
    const auto tokens = split_list(signs_text);
    if (tokens.size() != support.size()) {
      throw Error(ErrorCode::InvalidArgument, "--signs needs one entry per support variable");
    }
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (tokens[k] == "+1" || tokens[k] == "1" || tokens[k] == "+") signs[k] = 1;
      else if (tokens[k] == "-1" || tokens[k] == "-") signs[k] = -1;
      else throw Error(ErrorCode::InvalidArgument, "sign '" + tokens[k] + "' is not +1 or -1");
    }
  }
  const IrrepresentableResult result = irrepresentable_check(design.values, support, signs);
  const std::string text = irrepresentable_json(result, design.variable_names).dump(2) + "\n";
  if (out_dir.empty()) {
    out << text;
  } else {
    write_file(prepare_out(out_dir) / "diagnose.json", text);
  }
  return 0;
}

}  // namespace

std::vector<double> parse_c0_grid(const std::string& text) {
  auto number = [&](const std::string& token) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::InvalidArgument, "c0 grid: '" + token + "' is not a number");
    }
    return value;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "c0 grid range must be start:stop:step");
    return make_c0_grid(number(parts[0]), number(parts[1]), number(parts[2]));
  }
  std::vector<double> grid;
  for (const auto& token : split_list(text)) grid.push_back(number(token));
  return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"selectboost: correlation-aware resampling to sharpen variable selection"};
  app.require_subcommand(1);

  CommonFlags simulate_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "run the cluster-simulation benchmark");
  add_run_flags(simulate, simulate_flags, false);
  std::map<std::string, Flag<double>> sim_numbers;
  for (const char* key : {"N", "P", "q", "n_clusters", "within_cluster_noise", "response_noise",
                          "repetitions", "stability_B", "stability_threshold"}) {
    sim_numbers[key];
  }
  add(simulate, sim_numbers["N"], "--N", "observations");
  add(simulate, sim_numbers["P"], "--P", "variables");
  add(simulate, sim_numbers["q"], "--q", "active variables");
  add(simulate, sim_numbers["n_clusters"], "--clusters", "latent factors among the active variables");
  add(simulate, sim_numbers["within_cluster_noise"], "--within-noise", "noise added to each active variable");
  add(simulate, sim_numbers["response_noise"], "--response-noise", "noise added to the response");
  add(simulate, sim_numbers["repetitions"], "--repetitions", "simulated data sets");
  add(simulate, sim_numbers["stability_B"], "--stability-B", "stability selection subsamples");
  add(simulate, sim_numbers["stability_threshold"], "--stability-threshold", "stability selection cutoff");
  Flag<std::string> methods_flag;
  add(simulate, methods_flag, "--methods", "comma list of lasso,selectboost,naive_selectboost,stability");

  CommonFlags sweep_flags;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "confidence indices over a c0 grid for a data set");
  add_run_flags(sweep_cmd, sweep_flags, true);

  std::string groups_design;
  double groups_c0 = 0.0;
  std::string groups_strategy = "correlation";
  std::string groups_out;
  CLI::App* groups = app.add_subcommand("groups", "print the correlation groups at one c0");
  groups->add_option("--design", groups_design, "design CSV")->required();
  groups->add_option("--c0", groups_c0, "grouping level in [0, 1]")->required();
  groups->add_option("--grouping", groups_strategy, "correlation | community");
  groups->add_option("--out", groups_out, "output directory (default: standard output)");

  std::string diag_design;
  std::string diag_support;
  std::string diag_signs;
  std::string diag_out;
  CLI::App* diagnose = app.add_subcommand("diagnose", "check the irrepresentable condition");
  diagnose->add_option("--design", diag_design, "design CSV")->required();
  diagnose->add_option("--support", diag_support, "comma list of support variables (names or 0-based indices)")
      ->required();
  diagnose->add_option("--signs", diag_signs, "comma list of +1/-1, default all +1");
  diagnose->add_option("--out", diag_out, "output directory (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_flags, sim_numbers, methods_flag, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags, out, err);
    if (groups->parsed()) return cmd_groups(groups_design, groups_c0, groups_strategy, groups_out, out);
    if (diagnose->parsed()) return cmd_diagnose(diag_design, diag_support, diag_signs, diag_out, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace selectboost

#include "uqtb/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"

namespace uqtb::cli {

using nlohmann::json;

namespace {

enum class ValueType { text, number, integer, number_list, integer_list, boolean };

struct KeySpec {
  const char* key;
  const char* flag;
  ValueType type;
  const char* help;
};

constexpr KeySpec key_specs[] = {
  {"source", "--source", ValueType::text, "plane, square, gaussian or line"},
  {"x0", "--x0", ValueType::number, "square-source half-width"},
  {"t0", "--t0", ValueType::number, "source duration"},
  {"sigma", "--sigma", ValueType::number, "Gaussian-source width"},
  {"cbar", "--cbar", ValueType::number, "mean scattering ratio"},
  {"omega1", "--omega1", ValueType::number, "half-width of c"},
  {"omega_fraction", "--omega-fraction", ValueType::number,
   "half-width of c as a fraction of cbar"},
  {"t", "--t", ValueType::number_list, "times, comma separated"},
  {"x", "--x", ValueType::number, "position (radius for the line source)"},
  {"c", "--c", ValueType::number, "scattering ratio"},
  {"order", "--order", ValueType::integer, "expansion order N"},
  {"samples", "--samples", ValueType::integer, "Sobol samples"},
  {"sample_sweep", "--sample-sweep", ValueType::integer_list,
   "sample counts, comma separated"},
  {"percentiles", "--percentiles", ValueType::number_list,
   "percentiles in (0, 1), comma separated"},
  {"points", "--points", ValueType::integer, "uniform grid points per time"},
  {"grid", "--grid", ValueType::number_list, "explicit positions"},
  {"cbar_grid", "--cbar-grid", ValueType::number_list, "mean c values"},
  {"check_aliasing", "--check-aliasing", ValueType::boolean,
   "re-project at doubled order and flag moved coefficients"},
};

const KeySpec& spec_for(const std::string& key)
{
  for (const auto& s : key_specs)
    if (key == s.key)
      return s;
  throw UsageError("unknown setting '" + key + "'");
}

const std::vector<std::string>& allowed_keys(const std::string& sub)
{
  static const std::map<std::string, std::vector<std::string>> keys = {
    {"profile",
     {"source", "x0", "t0", "sigma", "cbar", "omega1", "omega_fraction", "t",
      "order", "samples", "percentiles", "points", "grid", "check_aliasing"}},
    {"converge-variance",
     {"source", "x0", "t0", "sigma", "cbar", "omega1", "omega_fraction", "t",
      "order", "points", "grid", "check_aliasing"}},
    {"converge-quantile",
     {"source", "x0", "t0", "sigma", "cbar", "omega1", "omega_fraction", "t",
      "x", "order", "sample_sweep", "percentiles", "check_aliasing"}},
    {"mass",
     {"source", "x0", "t0", "sigma", "omega_fraction", "t", "order", "samples",
      "cbar_grid", "check_aliasing"}},
    {"eval", {"source", "x0", "t0", "sigma", "x", "t", "c"}},
  };
  const auto it = keys.find(sub);
  if (it == keys.end())
    throw UsageError("unknown subcommand '" + sub + "'");
  return it->second;
}

const char* describe(const std::string& sub)
{
  if (sub == "profile")
    return "moment and percentile profiles over space at each time";
  if (sub == "converge-variance")
    return "RMSE of the expansion variance against quadrature, N = 1..order";
  if (sub == "converge-quantile")
    return "RMSE of sampled percentiles against the exact percentiles";
  if (sub == "mass")
    return "total mass statistics over a grid of mean c";
  return "flux at a single point";
}

json default_settings(const std::string& sub)
{
  if (sub == "profile")
    return {{"source", "plane"},
            {"cbar", 1.0},
            {"omega_fraction", 0.1},
            {"t", {1.0, 5.0}},
            {"order", 6},
            {"samples", 1000000},
            {"percentiles", {0.05, 0.25, 0.5, 0.75, 0.95}},
            {"points", 201},
            {"check_aliasing", true}};
  if (sub == "converge-variance")
    return {{"source", "plane"}, {"cbar", 1.0},  {"omega1", 0.5},
            {"t", {5.0}},        {"order", 8},   {"points", 201},
            {"check_aliasing", true}};
  if (sub == "converge-quantile") {
    json p = json::array();
    for (int k = 1; k <= 99; ++k)
      p.push_back(k / 100.0);
    return {{"source", "plane"},
            {"cbar", 1.1},
            {"omega_fraction", 0.25},
            {"t", {5.0}},
            {"x", 0.0},
            {"order", 8},
            {"sample_sweep", {100, 1000, 10000, 100000, 1000000}},
            {"percentiles", p},
            {"check_aliasing", true}};
  }
  if (sub == "mass") {
    json grid = json::array();
    for (int k = 0; k <= 20; ++k)
      grid.push_back(0.4 + 0.05 * k);
    return {{"source", "plane"}, {"omega_fraction", 0.25}, {"t", {3.0}},
            {"order", 6},        {"samples", 1000000},     {"cbar_grid", grid},
            {"check_aliasing", true}};
  }
  return {{"source", "plane"}};
}

double parse_number(const std::string& key, const std::string& raw)
{
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("--{}: '{}' is not a number", key, raw));
  }
  if (used != raw.size() || !std::isfinite(v))
    throw UsageError(fmt::format("--{}: '{}' is not a number", key, raw));
  return v;
}

long long parse_integer(const std::string& key, const std::string& raw)
{
  const double v = parse_number(key, raw);
  if (v != std::floor(v) || v < 0 || v > 9.0e15)
    throw UsageError(
      fmt::format("--{}: '{}' is not a non-negative integer", key, raw));
  return static_cast<long long>(v);
}

std::vector<std::string> split_list(const std::string& raw)
{
  std::vector<std::string> items;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    items.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return items;
}

json parse_raw(const std::string& key, const std::string& raw)
{
  switch (spec_for(key).type) {
  case ValueType::text:
    return raw;
  case ValueType::number:
    return parse_number(key, raw);
  case ValueType::integer:
    return parse_integer(key, raw);
  case ValueType::boolean:
    if (raw == "true" || raw == "1" || raw == "yes")
      return true;
    if (raw == "false" || raw == "0" || raw == "no")
      return false;
    throw UsageError(fmt::format("--{}: '{}' is not a boolean", key, raw));
  case ValueType::number_list: {
    json out = json::array();
    for (const auto& item : split_list(raw))
      out.push_back(parse_number(key, item));
    return out;
  }
  case ValueType::integer_list: {
    json out = json::array();
    for (const auto& item : split_list(raw))
      out.push_back(parse_integer(key, item));
    return out;
  }
  }
  return raw;
}

// Type-checks a value read from a config file.
json coerce(const std::string& key, const json& value)
{
  const auto fail = [&] {
    throw UsageError(fmt::format("config key '{}' has the wrong type", key));
  };
  const auto integral = [](const json& v) {
    return v.is_number_integer() ||
           (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()));
  };
  switch (spec_for(key).type) {
  case ValueType::text:
    if (!value.is_string())
      fail();
    return value;
  case ValueType::number:
    if (!value.is_number())
      fail();
    return value.get<double>();
  case ValueType::integer:
    if (!value.is_number() || !integral(value) || value.get<double>() < 0)
      fail();
    return value.get<long long>();
  case ValueType::boolean:
    if (!value.is_boolean())
      fail();
    return value;
  case ValueType::number_list:
  case ValueType::integer_list: {
    const bool ints = spec_for(key).type == ValueType::integer_list;
    json list = value.is_array() ? value : json::array({value});
    json out = json::array();
    for (const auto& v : list) {
      if (!v.is_number() || (ints && (!integral(v) || v.get<double>() < 0)))
        fail();
      out.push_back(ints ? json(v.get<long long>()) : json(v.get<double>()));
    }
    return out;
  }
  }
  return value;
}

// Settings in `layer` replace those in `base`. Keys that describe the same
// quantity in another way are dropped from the base.
void apply_layer(json& base, const json& layer, const std::string& sub)
{
  const auto& allowed = allowed_keys(sub);
  if (layer.contains("omega1") && layer.contains("omega_fraction"))
    throw UsageError("give either omega1 or omega_fraction, not both");
  if (layer.contains("grid") && layer.contains("points"))
    throw UsageError("give either grid or points, not both");
  for (const auto& [key, value] : layer.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw UsageError(fmt::format("'{}' does not apply to {}", key, sub));
    if (key == "omega1")
      base.erase("omega_fraction");
    if (key == "omega_fraction" && sub != "mass")
      base.erase("omega1");
    if (key == "grid")
      base.erase("points");
    if (key == "points")
      base.erase("grid");
    base[key] = value;
  }
}

json read_config(const std::filesystem::path& path, const std::string& sub)
{
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object())
    throw UsageError("config file must hold a JSON object");
  // A manifest written by a previous run is accepted as a config.
  if (doc.contains("config")) {
    if (doc.contains("subcommand") && doc["subcommand"] != sub)
      throw UsageError("config was written for " +
                       doc["subcommand"].get<std::string>());
    doc = doc["config"];
  }
  json out = json::object();
  for (const auto& [key, value] : doc.items())
    out[key] = coerce(key, value);
  return out;
}

double get_number(const json& s, const char* key)
{
  if (!s.contains(key))
    throw UsageError(fmt::format("--{} is required", key));
  return s[key].get<double>();
}

SourceConfig source_from(const json& s)
{
  const auto name = s.at("source").get<std::string>();
  const auto kind = parse_source_kind(name);
  if (!kind)
    throw UsageError("unknown source '" + name + "'");
  SourceConfig src;
  src.kind = *kind;
  src.x0 = s.value("x0", 0.0);
  src.t0 = s.value("t0", 0.0);
  src.sigma = s.value("sigma", 0.0);
  try {
    src.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return src;
}

void fill_source_defaults(json& s)
{
  const auto kind = parse_source_kind(s.at("source").get<std::string>());
  if (!kind)
    throw UsageError("unknown source '" + s.at("source").get<std::string>() +
                     "'");
  if (*kind == SourceKind::square) {
    if (!s.contains("x0"))
      s["x0"] = 0.5;
    if (!s.contains("t0"))
      s["t0"] = 5.0;
  } else if (*kind == SourceKind::gaussian) {
    if (!s.contains("sigma"))
      s["sigma"] = 0.5;
    if (!s.contains("t0"))
      s["t0"] = 5.0;
  }
}

std::string output_stem(const std::string& sub, const json& s)
{
  return sub + "_" + s.at("source").get<std::string>();
}

} // namespace

CliInvocation parse_args(const std::vector<std::string>& argv)
{
  CLI::App app{"Uncertainty-quantified time-dependent transport benchmarks",
               "uqtb"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string output_dir;
  app.add_option("--config", config_path, "JSON settings or a run manifest");
  app.add_option("--output-dir", output_dir,
                 "output directory (default $UQTB_OUTPUT_DIR, then .)");

  const std::vector<std::string> subs = {"profile", "converge-variance",
                                         "converge-quantile", "mass", "eval"};
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(sub, describe(sub));
    for (const auto& key : allowed_keys(sub)) {
      const auto& spec = spec_for(key);
      options[sub][key] = cmd->add_option(spec.flag, raw[sub][key], spec.help);
    }
  }

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty())
    args.pop_back(); // program name
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CliInvocation inv;
  inv.subcommand = app.get_subcommands().front()->get_name();
  for (const auto& [key, opt] : options[inv.subcommand])
    if (opt->count() > 0)
      inv.overrides[key] = raw[inv.subcommand][key];
  if (!config_path.empty())
    inv.config_path = config_path;
  if (!output_dir.empty())
    inv.output_dir = output_dir;
  else if (const char* env = std::getenv("UQTB_OUTPUT_DIR"); env && *env)
    inv.output_dir = env;
  else
    inv.output_dir = ".";
  // Values are type-checked now so that bad input is a usage error up front.
  for (const auto& [key, value] : inv.overrides)
    parse_raw(key, value);
  return inv;
}

CliInvocation parse_args(int argc, const char* const* argv)
{
  return parse_args(std::vector<std::string>(argv, argv + argc));
}

json resolve_settings(const CliInvocation& inv)
{
  const std::string& sub = inv.subcommand;
  json settings = default_settings(sub);
  if (inv.config_path)
    apply_layer(settings, read_config(*inv.config_path, sub), sub);
  json flags = json::object();
  for (const auto& [key, value] : inv.overrides)
    flags[key] = parse_raw(key, value);
  apply_layer(settings, flags, sub);

  fill_source_defaults(settings);
  if (settings.contains("cbar") && !settings.contains("omega1")) {
    settings["omega1"] = settings.at("omega_fraction").get<double>() *
                         settings.at("cbar").get<double>();
    settings.erase("omega_fraction");
  }

  const bool line = settings.at("source") == "line";
  if (line && settings.contains("x") && settings["x"].get<double>() < 0.0)
    throw UsageError("line-source radius --x must be non-negative");
  if (line && settings.contains("grid"))
    for (const auto& r : settings["grid"])
      if (r.get<double>() < 0.0)
        throw UsageError("line-source radii in --grid must be non-negative");
  if (sub == "eval") {
    get_number(settings, "x");
    get_number(settings, "c");
    if (!settings.contains("t"))
      throw UsageError("--t is required");
    if (settings["t"].size() != 1)
      throw UsageError("eval takes a single --t");
    if (!(settings["t"][0].get<double>() > 0.0))
      throw UsageError("--t must be positive");
    if (settings["c"].get<double>() < 0.0)
      throw UsageError("--c must be non-negative");
  }
  return settings;
}

StudyConfig study_config(const std::string& sub, const json& s)
{
  StudyConfig cfg;
  try {
    if (sub == "profile")
      cfg.kind = StudyKind::profiles;
    else if (sub == "converge-variance")
      cfg.kind = StudyKind::variance_convergence;
    else if (sub == "converge-quantile")
      cfg.kind = StudyKind::quantile_convergence;
    else if (sub == "mass")
      cfg.kind = StudyKind::mass_vs_cbar;
    else
      throw UsageError(sub + " does not run a study");

    cfg.source = source_from(s);
    cfg.times = s.at("t").get<std::vector<double>>();
    cfg.order = s.at("order").get<int>();
    cfg.check_aliasing = s.value("check_aliasing", true);
    if (s.contains("cbar"))
      cfg.uncertainty = UncertainScatteringRatio(s.at("cbar").get<double>(),
                                                 s.at("omega1").get<double>());
    if (s.contains("omega_fraction"))
      cfg.omega_fraction = s["omega_fraction"].get<double>();
    if (s.contains("grid"))
      cfg.spatial_grid = s["grid"].get<std::vector<double>>();
    if (s.contains("points"))
      cfg.grid_points = s["points"].get<int>();
    if (s.contains("samples"))
      cfg.n_samples = s["samples"].get<std::size_t>();
    cfg.percentile_grid = s.value("percentiles", std::vector<double>{});
    if (s.contains("sample_sweep"))
      cfg.sample_sweep = s["sample_sweep"].get<std::vector<std::size_t>>();
    if (s.contains("cbar_grid"))
      cfg.cbar_grid = s["cbar_grid"].get<std::vector<double>>();
    if (s.contains("x"))
      cfg.probe = s["x"].get<double>();
    if (cfg.kind == StudyKind::mass_vs_cbar)
      cfg.percentile_grid = {0.5};
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

namespace {

json manifest(const std::string& sub, const json& settings,
              const StudyConfig& cfg, const std::string& csv_name)
{
  json notes = json::array();
  notes.push_back("numbers are written with 17 significant digits");
  if (cfg.kind == StudyKind::mass_vs_cbar)
    notes.push_back("sigma is the standard deviation of the mass expansion; "
                    "median from Sobol samples of the same expansion");
  if (cfg.source.kind == SourceKind::gaussian)
    notes.push_back("Gaussian profile exp(-x^2/sigma^2), peak 1, cut off at "
                    "8.5 sigma");
  return {{"subcommand", sub},
          {"study", std::string(to_string(cfg.kind))},
          {"config", settings},
          {"outputs", {{"csv", csv_name}}},
          {"notes", notes}};
}

int run_eval(const json& s, std::ostream& out)
{
  const SourceConfig src = source_from(s);
  const double x = get_number(s, "x");
  const double t = s.at("t").at(0).get<double>();
  const double c = get_number(s, "c");
  const FluxValue f = source_flux(src, x, t, c);
  out << "uncollided,collided,total\n"
      << format_number(f.uncollided) << ',' << format_number(f.collided) << ','
      << format_number(f.total()) << '\n';
  return ok;
}

} // namespace

int run(const CliInvocation& inv, std::ostream& out, std::ostream& err)
{
  json settings;
  StudyConfig cfg;
  try {
    settings = resolve_settings(inv);
    if (inv.subcommand != "eval")
      cfg = study_config(inv.subcommand, settings);
  } catch (const UsageError& e) {
    err << "uqtb: " << e.what() << '\n';
    return usage;
  }

  Table table;
  try {
    if (inv.subcommand == "eval")
      return run_eval(settings, out);
    table = run_study(cfg);
  } catch (const UsageError& e) {
    err << "uqtb: " << e.what() << '\n';
    return usage;
  } catch (const DomainError& e) {
    err << "uqtb: domain error: " << e.what() << '\n';
    return numerical;
  } catch (const ConvergenceError& e) {
    err << "uqtb: no convergence: " << e.what() << '\n';
    return numerical;
  } catch (const MonotonicityError& e) {
    err << "uqtb: " << e.what() << '\n';
    return numerical;
  }

  const std::string stem = output_stem(inv.subcommand, settings);
  const auto csv_path = inv.output_dir / (stem + ".csv");
  const auto json_path = inv.output_dir / (stem + ".json");
  try {
    std::filesystem::create_directories(inv.output_dir);
    std::ostringstream csv;
    table.write_csv(csv);
    write_file_atomic(csv_path, csv.str());
    try {
      write_file_atomic(
        json_path,
        manifest(inv.subcommand, settings, cfg, csv_path.filename().string())
            .dump(2) +
          "\n");
    } catch (...) {
      std::error_code ec;
      std::filesystem::remove(csv_path, ec);
      throw;
    }
  } catch (const std::exception& e) {
    err << "uqtb: I/O failure: " << e.what() << '\n';
    return io;
  }
  out << csv_path.string() << '\n';
  return ok;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err)
{
  CliInvocation inv;
  try {
    inv = parse_args(argc, argv);
  } catch (const UsageError& e) {
    std::string msg = e.what();
    // --help lands here with the full help text
    if (msg.find("Usage:") != std::string::npos) {
      out << msg;
      return ok;
    }
    err << "uqtb: " << msg << '\n';
    return usage;
  }
  return run(inv, out, err);
}

} // namespace uqtb::cli

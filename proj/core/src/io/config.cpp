#include "torusctl/io/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "torusctl/errors.hpp"

namespace torusctl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  return x;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(no) + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError("line " + std::to_string(no) + ": repeated key '" + key + "'");
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in list '" + s + "'");
    out.push_back(to_double("list", item));
  }
  return out;
}

ExperimentConfig ExperimentConfig::from_key_values(const std::map<std::string, std::string>& kv) {
  ExperimentConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto dbl = [](double& x) -> Setter { return [&x](const auto& k, const auto& v) { x = to_double(k, v); }; };
  auto int_ = [](int& x) -> Setter { return [&x](const auto& k, const auto& v) { x = int(to_integer(k, v)); }; };
  auto str = [](std::string& x) -> Setter { return [&x](const auto&, const auto& v) { x = v; }; };
  const std::map<std::string, Setter> setters{
      {"modes", str(c.modes)},
      {"M", int_(c.M)},
      {"nu", dbl(c.nu)},
      {"T", dbl(c.T)},
      {"k", int_(c.k)},
      {"dt_max", dbl(c.dt_max)},
      {"cfl", dbl(c.cfl)},
      {"seed", [&c](const auto& k, const auto& v) { c.seed = std::uint64_t(to_integer(k, v)); }},
      {"out", str(c.out)},
      {"max_level", int_(c.max_level)},
      {"patience", int_(c.patience)},
      {"exact_box", int_(c.exact_box)},
      {"oracle_pairs", int_(c.oracle_pairs)},
      {"oracle_box", int_(c.oracle_box)},
      {"radius", dbl(c.radius)},
      {"snapshots", int_(c.snapshots)},
      {"family", str(c.family)},
      {"amplitude", dbl(c.amplitude)},
      {"segments", int_(c.segments)},
      {"lambda", dbl(c.lambda)},
      {"cond_limit", dbl(c.cond_limit)},
      {"max_refinements", int_(c.max_refinements)},
      {"stall", dbl(c.stall)},
      {"deltas", [&c](const auto&, const auto& v) { c.deltas = parse_double_list(v); }},
      {"instances", int_(c.instances)},
      {"fixed_T", dbl(c.fixed_T)},
      {"fixed_epsilon", dbl(c.fixed_epsilon)},
      {"fixed_delta", dbl(c.fixed_delta)},
      {"r_fraction", dbl(c.r_fraction)},
      {"trigger_fraction", dbl(c.trigger_fraction)},
      {"resteer_budget", int_(c.resteer_budget)},
  };
  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'");
    it->second(key, value);
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig c = from_key_values(parse_key_values(in));
  c.base_dir = std::filesystem::path(path).parent_path().string();
  if (c.base_dir.empty()) c.base_dir = ".";
  return c;
}

void ExperimentConfig::validate() const {
  sim().validate();
  if (M > 16) throw ConfigError("truncation M above 16 is not supported");
  if (max_level < 0 || patience < 1) throw ConfigError("max_level must be >= 0 and patience >= 1");
  if (exact_box < 0 || oracle_box < 1 || oracle_pairs < 0) throw ConfigError("identity ranges must be non-negative");
  if (!(radius >= 0.0)) throw ConfigError("radius must be non-negative");
  if (snapshots < 2) throw ConfigError("snapshots must be at least 2");
  if (family != "square" && family != "constant") throw ConfigError("family must be 'square' or 'constant'");
  if (segments < 1) throw ConfigError("segments must be positive");
  if (max_refinements < 0 || !(stall > 0.0)) throw ConfigError("max_refinements must be >= 0 and stall > 0");
  if (!(amplitude > 0.0)) throw ConfigError("amplitude must be positive");
  if (!(lambda >= 0.0) || !(cond_limit > 1.0)) throw ConfigError("lambda must be >= 0 and cond_limit > 1");
  for (double d : deltas)
    if (!(d > 0.0)) throw ConfigError("every delta must be positive");
  if (!(fixed_T > 0.0) || !(fixed_epsilon > 0.0) || !(fixed_delta > 0.0))
    throw ConfigError("fixed_T, fixed_epsilon and fixed_delta must be positive");
  if (!(r_fraction > 0.0 && r_fraction < trigger_fraction && trigger_fraction < 1.0))
    throw ConfigError("need 0 < r_fraction < trigger_fraction < 1");
  if (resteer_budget < 0) throw ConfigError("resteer_budget must be non-negative");
  if (instances < 1) throw ConfigError("instances must be at least 1");
}

SimConfig ExperimentConfig::sim() const {
  SimConfig s;
  s.nu = nu;
  s.T = T;
  s.M = M;
  s.k = k;
  s.dt_max = dt_max;
  s.cfl = cfl;
  return s;
}

std::string ExperimentConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::resolved() const {
  std::string list;
  for (std::size_t i = 0; i < deltas.size(); ++i) list += (i ? "," : "") + format_double(deltas[i]);
  const std::string modes_value = modes == "axes" ? modes : resolve(modes);
  return {
      {"modes", modes_value},
      {"M", std::to_string(M)},
      {"nu", format_double(nu)},
      {"T", format_double(T)},
      {"k", std::to_string(k)},
      {"dt_max", format_double(dt_max)},
      {"cfl", format_double(cfl)},
      {"seed", std::to_string(seed)},
      {"out", out},
      {"max_level", std::to_string(max_level)},
      {"patience", std::to_string(patience)},
      {"exact_box", std::to_string(exact_box)},
      {"oracle_pairs", std::to_string(oracle_pairs)},
      {"oracle_box", std::to_string(oracle_box)},
      {"radius", format_double(radius)},
      {"snapshots", std::to_string(snapshots)},
      {"family", family},
      {"amplitude", format_double(amplitude)},
      {"segments", std::to_string(segments)},
      {"lambda", format_double(lambda)},
      {"cond_limit", format_double(cond_limit)},
      {"max_refinements", std::to_string(max_refinements)},
      {"stall", format_double(stall)},
      {"deltas", list},
      {"instances", std::to_string(instances)},
      {"fixed_T", format_double(fixed_T)},
      {"fixed_epsilon", format_double(fixed_epsilon)},
      {"fixed_delta", format_double(fixed_delta)},
      {"r_fraction", format_double(r_fraction)},
      {"trigger_fraction", format_double(trigger_fraction)},
      {"resteer_budget", std::to_string(resteer_budget)},
  };
}

}  // namespace torusctl

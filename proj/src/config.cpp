#include "sonine/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include "sonine/errors.hpp"

namespace sonine {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config: bad value '" + text + "' for " + key);
  }
  return v;
}

}  // namespace

void RunConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"seed", [&](const std::string& v) { seed = parse_number<std::uint64_t>(key, v); }},
      {"jobs", [&](const std::string& v) { jobs = parse_number<int>(key, v); }},
      {"n_moebius", [&](const std::string& v) { n_moebius = parse_number<long>(key, v); }},
      {"zero_height", [&](const std::string& v) { zero_height = parse_number<double>(key, v); }},
      {"ramanujan_zeros", [&](const std::string& v) { ramanujan_zeros = parse_number<int>(key, v); }},
      {"t_cut", [&](const std::string& v) { t_cut = parse_number<double>(key, v); }},
      {"grid_step", [&](const std::string& v) { grid_step = parse_number<double>(key, v); }},
      {"contour_nodes", [&](const std::string& v) { contour_nodes = parse_number<int>(key, v); }},
      {"tol_functional", [&](const std::string& v) { tol_functional = parse_number<double>(key, v); }},
      {"tol_theta", [&](const std::string& v) { tol_theta = parse_number<double>(key, v); }},
      {"tol_poisson_bump", [&](const std::string& v) { tol_poisson_bump = parse_number<double>(key, v); }},
      {"tol_muntz", [&](const std::string& v) { tol_muntz = parse_number<double>(key, v); }},
      {"tol_copoisson", [&](const std::string& v) { tol_copoisson = parse_number<double>(key, v); }},
      {"tol_plateau", [&](const std::string& v) { tol_plateau = parse_number<double>(key, v); }},
      {"tol_vanish", [&](const std::string& v) { tol_vanish = parse_number<double>(key, v); }},
      {"tol_hermite", [&](const std::string& v) { tol_hermite = parse_number<double>(key, v); }},
      {"tol_biorth", [&](const std::string& v) { tol_biorth = parse_number<double>(key, v); }},
      {"zero_table", [&](const std::string& v) { zero_table = v; }},
      {"cache_dir", [&](const std::string& v) { cache_dir = v; }},
      {"output_dir", [&](const std::string& v) { output_dir = v; }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second(value);
  if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
  if (n_moebius < 2) throw ConfigError("config: n_moebius must be >= 2");
  if (contour_nodes < 1) throw ConfigError("config: contour_nodes must be >= 1");
}

void RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(number) + ": expected key=value");
    }
    try {
      set(t.substr(0, eq), t.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config: line " + std::to_string(number) + ": " + e.what());
    }
  }
}

nlohmann::json RunConfig::to_json() const {
  return {{"seed", seed},
          {"jobs", jobs},
          {"n_moebius", n_moebius},
          {"zero_height", zero_height},
          {"ramanujan_zeros", ramanujan_zeros},
          {"t_cut", t_cut},
          {"grid_step", grid_step},
          {"contour_nodes", contour_nodes},
          {"tol_functional", tol_functional},
          {"tol_theta", tol_theta},
          {"tol_poisson_bump", tol_poisson_bump},
          {"tol_muntz", tol_muntz},
          {"tol_copoisson", tol_copoisson},
          {"tol_plateau", tol_plateau},
          {"tol_vanish", tol_vanish},
          {"tol_hermite", tol_hermite},
          {"tol_biorth", tol_biorth},
          {"zero_table", zero_table},
          {"cache_dir", cache_dir},
          {"output_dir", output_dir}};
}

}  // namespace sonine

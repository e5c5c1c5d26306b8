#include "scimap/config.hpp"

#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

namespace {

[[noreturn]] void bad(std::string_view key, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, fmt::format("config '{}': {}", key, why));
}

double to_double(std::string_view key, const std::string& v) {
  auto d = parse_double(v);
  if (!d) bad(key, fmt::format("'{}' is not a number", v));
  return *d;
}

std::int64_t to_int(std::string_view key, const std::string& v) {
  auto i = parse_int(v);
  if (!i) bad(key, fmt::format("'{}' is not an integer", v));
  return *i;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(tau >= 0.0 && tau < 1.0)) bad("tau", fmt::format("{} outside [0, 1)", tau));
  if (layout_algorithm != "mds" && layout_algorithm != "fr") bad("algo", "must be mds or fr");
  if (max_iter < 0) bad("max-iter", "must be non-negative");
  if (!(tol >= 0.0)) bad("tol", "must be non-negative");
  if (fr_iterations < 0) bad("iterations", "must be non-negative");
  if (!(d_max > 0.0)) bad("d-max", "must be positive");
  if (gammas.empty()) bad("gamma", "at least one resolution is required");
  std::set<std::string> keys;
  for (double g : gammas) {
    if (!(g > 0.0)) bad("gamma", fmt::format("{} must be positive", g));
    if (!keys.insert(gamma_key(g)).second) bad("gamma", fmt::format("{} given twice", gamma_key(g)));
  }
}

std::map<std::string, std::string> PipelineConfig::to_map() const {
  std::string gamma_list;
  for (double g : gammas) gamma_list += (gamma_list.empty() ? "" : ",") + format_exact(g);
  return {
      {"direction", std::string(to_string(direction))},
      {"tau", format_exact(tau)},
      {"algo", layout_algorithm},
      {"weights", std::string(to_string(weights))},
      {"seed", std::to_string(layout_seed)},
      {"max-iter", std::to_string(max_iter)},
      {"tol", format_exact(tol)},
      {"iterations", std::to_string(fr_iterations)},
      {"d-max", format_exact(d_max)},
      {"gamma", gamma_list},
      {"cluster-seed", std::to_string(cluster_seed)},
      {"journals", journals.string()},
      {"triplets", triplets.string()},
      {"data", data.string()},
      {"out-dir", out_dir.string()},
  };
}

PipelineConfig PipelineConfig::from_map(const std::map<std::string, std::string>& kv) {
  PipelineConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "direction") {
      auto d = parse_direction(value);
      if (!d) bad(key, "must be cited or citing");
      c.direction = *d;
    } else if (key == "tau") {
      c.tau = to_double(key, value);
    } else if (key == "algo") {
      c.layout_algorithm = value;
    } else if (key == "weights") {
      auto w = parse_stress_weights(value);
      if (!w) bad(key, "must be uniform or inverse-square");
      c.weights = *w;
    } else if (key == "seed") {
      c.layout_seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "max-iter") {
      c.max_iter = static_cast<int>(to_int(key, value));
    } else if (key == "tol") {
      c.tol = to_double(key, value);
    } else if (key == "iterations") {
      c.fr_iterations = static_cast<int>(to_int(key, value));
    } else if (key == "d-max") {
      c.d_max = to_double(key, value);
    } else if (key == "gamma") {
      c.gammas.clear();
      std::string_view rest(value);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        c.gammas.push_back(to_double(key, std::string(trim(rest.substr(0, comma)))));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    } else if (key == "cluster-seed") {
      c.cluster_seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "journals") {
      c.journals = value;
    } else if (key == "triplets") {
      c.triplets = value;
    } else if (key == "data") {
      c.data = value;
    } else if (key == "out-dir") {
      c.out_dir = value;
    } else {
      bad(key, "unknown key");
    }
  }
  c.validate();
  return c;
}

std::multimap<std::string, std::string> read_key_values(std::istream& in) {
  std::multimap<std::string, std::string> kv;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    auto body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("config line {}: expected key = value", reader.line_number()));
    }
    std::string key(trim(body.substr(0, eq)));
    if (key.starts_with("--")) key.erase(0, 2);
    std::string_view value = trim(body.substr(eq + 1));
    // gamma = 1, 1.5 expands to two entries
    while (true) {
      const auto comma = value.find(',');
      kv.emplace(key, std::string(trim(value.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      value.remove_prefix(comma + 1);
    }
  }
  return kv;
}

std::multimap<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_key_values(in);
}

void write_config(std::ostream& out, const PipelineConfig& config) {
  for (const auto& [k, v] : config.to_map()) out << k << " = " << v << '\n';
}

PipelineConfig read_config(std::istream& in) {
  std::map<std::string, std::string> flat;
  for (const auto& [k, v] : read_key_values(in)) {
    auto [it, inserted] = flat.emplace(k, v);
    if (!inserted) it->second += "," + v;
  }
  return PipelineConfig::from_map(flat);
}

}  // namespace scimap

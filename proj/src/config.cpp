#include "rhpdhg/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

namespace {
double to_double(const std::string& key, const std::string& value) {
  if (value == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': bad number '" + value + "'");
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': bad integer '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw UsageError("config key '" + key + "': bad boolean '" + value + "'");
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace

void SolverConfig::validate() const {
  if (ruiz_iterations < 0) throw UsageError("scaling.ruiz_iters must be >= 0");
  if (!(stepsize_multiplier > 0.0 && stepsize_multiplier <= 0.99))
    throw UsageError("stepsize.multiplier must lie in (0, 0.99]");
  if (!(power_tol > 0.0)) throw UsageError("power.tol must be positive");
  if (power_max_iters < 1) throw UsageError("power.max_iters must be >= 1");
  if (!(beta_sufficient > 0.0 && beta_sufficient < beta_necessary && beta_necessary < 1.0))
    throw UsageError("restart thresholds must satisfy 0 < beta_sufficient < beta_necessary < 1");
  if (!(beta_artificial > 0.0 && beta_artificial < 1.0))
    throw UsageError("restart.beta_artificial must lie in (0, 1)");
  if (!(reflection_gamma >= 0.0 && reflection_gamma <= 1.0))
    throw UsageError("reflection.gamma must lie in [0, 1]");
  if (!(initial_weight > 0.0) || !std::isfinite(initial_weight))
    throw UsageError("weight.initial must be positive and finite");
  if (!(epsilon > 0.0)) throw UsageError("tol.epsilon must be positive");
  if (check_interval < 1) throw UsageError("tol.check_interval must be >= 1");
  if (time_limit_seconds < 0.0 || std::isnan(time_limit_seconds))
    throw UsageError("limits.time_seconds must be nonnegative");
  if (iteration_limit < 0) throw UsageError("limits.iterations must be nonnegative");
}

void SolverConfig::set(const std::string& key, const std::string& value) {
  if (key == "scaling.enabled") scaling_enabled = to_bool(key, value);
  else if (key == "scaling.ruiz_iters") ruiz_iterations = static_cast<int>(to_long(key, value));
  else if (key == "scaling.pock_chambolle") pock_chambolle = to_bool(key, value);
  else if (key == "stepsize.multiplier") stepsize_multiplier = to_double(key, value);
  else if (key == "power.tol") power_tol = to_double(key, value);
  else if (key == "power.max_iters") power_max_iters = to_long(key, value);
  else if (key == "power.seed") power_seed = static_cast<std::uint64_t>(to_long(key, value));
  else if (key == "restart.enabled") restarts_enabled = to_bool(key, value);
  else if (key == "restart.beta_sufficient") beta_sufficient = to_double(key, value);
  else if (key == "restart.beta_necessary") beta_necessary = to_double(key, value);
  else if (key == "restart.beta_artificial") beta_artificial = to_double(key, value);
  else if (key == "reflection.gamma") reflection_gamma = to_double(key, value);
  else if (key == "pid.kp") pid_kp = to_double(key, value);
  else if (key == "pid.ki") pid_ki = to_double(key, value);
  else if (key == "pid.kd") pid_kd = to_double(key, value);
  else if (key == "weight.initial") initial_weight = to_double(key, value);
  else if (key == "tol.epsilon") epsilon = to_double(key, value);
  else if (key == "tol.check_interval") check_interval = to_long(key, value);
  else if (key == "limits.time_seconds") time_limit_seconds = to_double(key, value);
  else if (key == "limits.iterations")
    iteration_limit = value == "unbounded" ? std::numeric_limits<long>::max()
                                           : to_long(key, value);
  else throw UsageError("unknown config key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> SolverConfig::key_values() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("scaling.enabled", scaling_enabled ? "1" : "0");
  kv.emplace_back("scaling.ruiz_iters", std::to_string(ruiz_iterations));
  kv.emplace_back("scaling.pock_chambolle", pock_chambolle ? "1" : "0");
  kv.emplace_back("stepsize.multiplier", fmt(stepsize_multiplier));
  kv.emplace_back("power.tol", fmt(power_tol));
  kv.emplace_back("power.max_iters", std::to_string(power_max_iters));
  kv.emplace_back("power.seed", std::to_string(power_seed));
  kv.emplace_back("restart.enabled", restarts_enabled ? "1" : "0");
  kv.emplace_back("restart.beta_sufficient", fmt(beta_sufficient));
  kv.emplace_back("restart.beta_necessary", fmt(beta_necessary));
  kv.emplace_back("restart.beta_artificial", fmt(beta_artificial));
  kv.emplace_back("reflection.gamma", fmt(reflection_gamma));
  kv.emplace_back("pid.kp", fmt(pid_kp));
  kv.emplace_back("pid.ki", fmt(pid_ki));
  kv.emplace_back("pid.kd", fmt(pid_kd));
  kv.emplace_back("weight.initial", fmt(initial_weight));
  kv.emplace_back("tol.epsilon", fmt(epsilon));
  kv.emplace_back("tol.check_interval", std::to_string(check_interval));
  kv.emplace_back("limits.time_seconds", fmt(time_limit_seconds));
  kv.emplace_back("limits.iterations", iteration_limit == std::numeric_limits<long>::max()
                                           ? "unbounded"
                                           : std::to_string(iteration_limit));
  return kv;
}

SolverConfig SolverConfig::from_file(const std::string& path) {
  return from_file(path, SolverConfig{});
}

SolverConfig SolverConfig::from_file(const std::string& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, value, extra;
    if (!(ls >> key)) continue;
    if (!(ls >> value)) throw UsageError("config file line " + std::to_string(lineno) +
                                         ": key '" + key + "' has no value");
    if (value == "=" && !(ls >> value))
      throw UsageError("config file line " + std::to_string(lineno) + ": key '" + key +
                       "' has no value");
    if (ls >> extra)
      throw UsageError("config file line " + std::to_string(lineno) + ": trailing tokens");
    base.set(key, value);
  }
  return base;
}

}  // namespace rhpdhg

#include "evsim/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "evsim/envs/registry.hpp"
#include "evsim/harness/logs.hpp"

namespace evsim::harness {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
  throw ConfigError(source + ": field '" + field + "': " + what);
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void check_keys(const json& j, const std::set<std::string, std::less<>>& known, const std::string& source,
                const std::string& prefix) {
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) field_error(source, prefix + key, "unknown field");
}

double get_number(const json& j, const std::string& key, double fallback, const std::string& source,
                  const std::string& prefix) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) field_error(source, prefix + key, "must be a number");
  return j[key].get<double>();
}

BinSpec parse_bin(const json& b, const std::string& source, const std::string& field) {
  BinSpec spec;
  if (b.is_array() && b.size() == 3 && b[0].is_number() && b[1].is_number() && b[2].is_number_integer()) {
    spec = {b[0].get<double>(), b[1].get<double>(), b[2].get<int>()};
  } else if (b.is_object() && b.contains("lo") && b.contains("hi") && b.contains("bins") &&
             b["lo"].is_number() && b["hi"].is_number() && b["bins"].is_number_integer()) {
    spec = {b["lo"].get<double>(), b["hi"].get<double>(), b["bins"].get<int>()};
  } else {
    field_error(source, field, "expected [lo, hi, bins] or {\"lo\":..., \"hi\":..., \"bins\":...}");
  }
  return spec;
}

PolicySpec parse_policy(const json& p, const std::string& source) {
  if (!p.is_object()) field_error(source, "policy", "must be an object");
  check_keys(p,
             {"type", "action", "bins", "alpha_start", "alpha_end", "epsilon_start", "epsilon_end",
              "epsilon_decay_fraction", "gamma"},
             source, "policy.");
  if (!p.contains("type") || !p["type"].is_string())
    field_error(source, "policy.type", "must be \"random\", \"fixed\" or \"q-learning\"");

  PolicySpec spec;
  const auto type = p["type"].get<std::string>();
  if (type == "random") {
    spec.kind = PolicyKind::Random;
  } else if (type == "fixed") {
    spec.kind = PolicyKind::Fixed;
    if (!p.contains("action") || !p["action"].is_number_integer())
      field_error(source, "policy.action", "fixed policy needs an integer action");
    spec.action = p["action"].get<int>();
    if (spec.action < 0 || spec.action > 2) field_error(source, "policy.action", "must be 0, 1 or 2");
  } else if (type == "q-learning") {
    spec.kind = PolicyKind::QLearning;
  } else {
    field_error(source, "policy.type", "unknown policy type \"" + type + "\"");
  }

  auto& q = spec.q;
  const std::string pre = "policy.";
  q.alpha_start = get_number(p, "alpha_start", q.alpha_start, source, pre);
  q.alpha_end = get_number(p, "alpha_end", q.alpha_end, source, pre);
  q.epsilon_start = get_number(p, "epsilon_start", q.epsilon_start, source, pre);
  q.epsilon_end = get_number(p, "epsilon_end", q.epsilon_end, source, pre);
  q.epsilon_decay_fraction = get_number(p, "epsilon_decay_fraction", q.epsilon_decay_fraction, source, pre);
  q.gamma = get_number(p, "gamma", q.gamma, source, pre);
  if (p.contains("bins")) {
    if (!p["bins"].is_array()) field_error(source, "policy.bins", "must be an array");
    for (std::size_t i = 0; i < p["bins"].size(); ++i)
      q.bins.push_back(parse_bin(p["bins"][i], source, "policy.bins[" + std::to_string(i) + "]"));
  }
  return spec;
}

const char* policy_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::Random: return "random";
    case PolicyKind::Fixed: return "fixed";
    case PolicyKind::QLearning: return "q-learning";
  }
  return "random";
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": malformed JSON at " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError(source + ": top level must be a JSON object");
  check_keys(j, {"env", "env_config", "population", "seeds", "episodes", "policy", "output_dir"}, source, "");

  RunConfig c;
  if (!j.contains("env") || !j["env"].is_string()) field_error(source, "env", "must name an environment");
  c.env = j["env"].get<std::string>();

  if (j.contains("env_config")) c.env_config = j["env_config"];
  if (j.contains("population")) c.population = j["population"];
  try {
    (void)envs::make_env(c.env, c.env_config, c.population);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    const std::string field = what.rfind("unknown environment", 0) == 0 ? "env"
                              : what.find("population") != std::string::npos ? "population"
                                                                             : "env_config";
    field_error(source, field, what);
  }

  if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty())
    field_error(source, "seeds", "must be a non-empty array of non-negative integers");
  for (const auto& s : j["seeds"]) {
    if (!s.is_number_unsigned()) field_error(source, "seeds", "must be a non-empty array of non-negative integers");
    c.seeds.push_back(s.get<std::uint64_t>());
  }

  if (j.contains("episodes")) {
    if (!j["episodes"].is_number_integer() || j["episodes"].get<std::int64_t>() < 1)
      field_error(source, "episodes", "must be an integer >= 1");
    c.episodes = j["episodes"].get<int>();
  }
  if (j.contains("policy")) c.policy = parse_policy(j["policy"], source);
  if (c.policy.kind == PolicyKind::QLearning) {
    try {
      if (c.policy.q.bins.empty()) c.policy.q.bins = default_bins(c.env);
      const auto env = envs::make_env(c.env, c.env_config, c.population);
      if (c.policy.q.bins.size() != env->state_size())
        field_error(source, "policy.bins",
                    "needs one entry per state component (" + std::to_string(env->state_size()) + ")");
      TabularQLearner probe(c.policy.q, env->action_count());
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      if (what.rfind(source, 0) == 0) throw;
      field_error(source, "policy", what);
    }
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) field_error(source, "output_dir", "must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.string());
}

json to_json(const RunConfig& c) {
  json policy = {{"type", policy_name(c.policy.kind)}};
  if (c.policy.kind == PolicyKind::Fixed) policy["action"] = c.policy.action;
  if (c.policy.kind == PolicyKind::QLearning) {
    const auto& q = c.policy.q;
    json bins = json::array();
    for (const auto& b : q.bins) bins.push_back({b.lo, b.hi, b.bins});
    policy["bins"] = bins;
    policy["alpha_start"] = q.alpha_start;
    policy["alpha_end"] = q.alpha_end;
    policy["epsilon_start"] = q.epsilon_start;
    policy["epsilon_end"] = q.epsilon_end;
    policy["epsilon_decay_fraction"] = q.epsilon_decay_fraction;
    policy["gamma"] = q.gamma;
  }
  return json{{"env", c.env},           {"env_config", c.env_config}, {"population", c.population},
              {"seeds", c.seeds},       {"episodes", c.episodes},     {"policy", policy},
              {"output_dir", c.output_dir}};
}

std::uint64_t config_hash(const RunConfig& config) {
  json j = to_json(config);
  j.erase("output_dir");
  return fnv1a(j.dump());
}

}  // namespace evsim::harness

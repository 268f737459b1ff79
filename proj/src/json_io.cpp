#include "contexture/json_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace contexture {

using nlohmann::json;

double round_sig(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json scenario_to_json(const Scenario& sc) {
  json sites = json::array();
  for (const auto& site : sc.sites()) {
    json axis = json::array();
    for (const auto& m : site) {
      axis.push_back({{"theta", round_sig(m.theta)}, {"phi", round_sig(m.phi)}});
    }
    sites.push_back(std::move(axis));
  }
  return json{{"sites", std::move(sites)}};
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sites") || !j["sites"].is_array()) {
    throw std::invalid_argument("scenario: expected an object with \"sites\"");
  }
  std::vector<std::vector<LocalMeasurement>> sites;
  for (const auto& site : j["sites"]) {
    if (!site.is_array()) {
      throw std::invalid_argument("scenario: each site must be an array");
    }
    std::vector<LocalMeasurement> axis;
    for (const auto& m : site) {
      if (!m.is_object() || !m.contains("theta") || !m.contains("phi")) {
        throw std::invalid_argument(
            "scenario: measurements need \"theta\" and \"phi\"");
      }
      axis.emplace_back(m["theta"].get<double>(), m["phi"].get<double>());
    }
    sites.push_back(std::move(axis));
  }
  return Scenario(std::move(sites));
}

namespace {

double field(const json& params, const char* name) {
  if (!params.contains(name)) {
    throw std::invalid_argument(std::string("state: missing param \"") + name +
                                "\"");
  }
  return params[name].get<double>();
}

std::vector<double> vector_field(const json& params, const char* name) {
  if (!params.contains(name) || !params[name].is_array()) {
    throw std::invalid_argument(std::string("state: missing list param \"") +
                                name + "\"");
  }
  std::vector<double> out;
  for (const auto& v : params[name]) out.push_back(v.get<double>());
  return out;
}

}  // namespace

StateVector state_from_json(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("state: expected an object");
  }
  if (j.contains("amplitudes")) {
    const auto& amps = j["amplitudes"];
    if (!amps.is_array() || amps.empty()) {
      throw std::invalid_argument("state: \"amplitudes\" must be a list");
    }
    std::vector<Complex> v;
    for (const auto& a : amps) {
      if (!a.is_array() || a.size() != 2) {
        throw std::invalid_argument("state: amplitudes are [re, im] pairs");
      }
      v.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    int n = 0;
    while ((std::size_t{1} << n) < v.size()) ++n;
    if ((std::size_t{1} << n) != v.size()) {
      throw std::invalid_argument("state: amplitude count must be 2^n");
    }
    return StateVector(n, std::move(v)).normalized();
  }

  if (!j.contains("family")) {
    throw std::invalid_argument("state: need \"family\" or \"amplitudes\"");
  }
  std::string family = j["family"].get<std::string>();
  json params = j.value("params", json::object());
  if (family == "ghz") {
    return ghz_state(static_cast<int>(field(params, "n")));
  }
  if (family == "w") {
    return w_state();
  }
  if (family == "bipartite") {
    return bipartite(field(params, "delta"));
  }
  if (family == "ghz_canonical") {
    return ghz_canonical(field(params, "delta"), field(params, "alpha"),
                         field(params, "beta"), field(params, "gamma"),
                         field(params, "phi_phase"));
  }
  if (family == "w_class") {
    return w_class(field(params, "a"), field(params, "b"), field(params, "c"),
                   field(params, "d"));
  }
  if (family == "ghz_slocc") {
    return ghz_slocc(field(params, "delta"), vector_field(params, "lambdas"),
                     field(params, "phi_phase"));
  }
  if (family == "balanced") {
    return balanced(vector_field(params, "lambdas"),
                    field(params, "phi_phase"));
  }
  throw std::invalid_argument("state: unknown family \"" + family + "\"");
}

namespace {

std::string outcome_string(const Scenario& sc, std::size_t idx) {
  JointOutcome o = sc.outcome_from_index(idx);
  std::string s;
  s.reserve(o.size());
  for (Outcome v : o) s.push_back(v == +1 ? '+' : '-');
  return s;
}

std::size_t outcome_index_of_string(const Scenario& sc, const std::string& s) {
  if (static_cast<int>(s.size()) != sc.n_sites()) {
    throw std::invalid_argument("model: outcome string has wrong length");
  }
  JointOutcome o;
  o.reserve(s.size());
  for (char ch : s) {
    if (ch != '+' && ch != '-') {
      throw std::invalid_argument("model: outcome strings use '+'/'-'");
    }
    o.push_back(ch == '+' ? +1 : -1);
  }
  return sc.outcome_index(o);
}

}  // namespace

json model_to_json(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario;
  json table = json::array();
  std::vector<Context> ctxs = sc.contexts();
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    json probs = json::object();
    for (std::size_t o = 0; o < sc.n_outcomes(); ++o) {
      double p = model.table[c][o];
      // Entries below the support threshold are numerical noise from exact
      // cancellations; omitting them keeps the files legible.
      if (p > kSupportEps) probs[outcome_string(sc, o)] = round_sig(p);
    }
    table.push_back({{"context", ctxs[c]}, {"probs", std::move(probs)}});
  }
  return json{{"scenario", scenario_to_json(sc)}, {"table", std::move(table)}};
}

EmpiricalModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("scenario") || !j.contains("table")) {
    throw std::invalid_argument("model: need \"scenario\" and \"table\"");
  }
  EmpiricalModel model{scenario_from_json(j["scenario"]), {}};
  const Scenario& sc = model.scenario;
  std::vector<Context> ctxs = sc.contexts();
  if (!j["table"].is_array() || j["table"].size() != ctxs.size()) {
    throw std::invalid_argument("model: table must list every context once");
  }
  model.table.assign(ctxs.size(), std::vector<double>(sc.n_outcomes(), 0.0));
  for (const auto& entry : j["table"]) {
    if (!entry.is_object() || !entry.contains("context") ||
        !entry.contains("probs")) {
      throw std::invalid_argument(
          "model: table entries need \"context\" and \"probs\"");
    }
    Context ctx = entry["context"].get<Context>();
    // Locate the context (tables are written in lexicographic order, but
    // accept any order).
    std::size_t c = 0;
    while (c < ctxs.size() && ctxs[c] != ctx) ++c;
    if (c == ctxs.size()) {
      throw std::invalid_argument("model: unknown context in table");
    }
    for (const auto& [key, value] : entry["probs"].items()) {
      model.table[c][outcome_index_of_string(sc, key)] = value.get<double>();
    }
  }
  return model;
}

json report_to_json(const CheckReport& report, const Scenario& sc) {
  json j;
  j["strongly_contextual"] = report.strongly_contextual;
  if (report.witness.has_value()) {
    json sites = json::array();
    for (int s = 0; s < sc.n_sites(); ++s) {
      sites.push_back((*report.witness)[s]);
    }
    j["witness"] = {{"outcomes", std::move(sites)}};
  } else {
    j["witness"] = nullptr;
  }
  if (report.cf.has_value()) {
    j["cf"] = round_sig(*report.cf);
    j["ncf"] = round_sig(*report.ncf);
  } else {
    j["cf"] = nullptr;
    j["ncf"] = nullptr;
  }
  if (report.gf2_unsat.has_value()) {
    j["gf2"] = {{"c_m0_unsat", report.gf2_unsat->first},
                {"c_m1_unsat", report.gf2_unsat->second}};
  }
  return j;
}

Scenario scenario_from_shorthand(const std::string& text) {
  std::vector<std::vector<LocalMeasurement>> sites;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t sem = text.find(';', pos);
    std::string site_text =
        text.substr(pos, sem == std::string::npos ? std::string::npos
                                                  : sem - pos);
    std::vector<LocalMeasurement> axis;
    // Split on commas outside parentheses.
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char ch : site_text) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        tokens.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    tokens.push_back(cur);
    for (std::string tok : tokens) {
      // Trim whitespace.
      while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) {
        tok.erase(tok.begin());
      }
      while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) {
        tok.pop_back();
      }
      if (tok.empty()) {
        throw std::invalid_argument("scenario shorthand: empty measurement");
      }
      constexpr double kHalfPi = 1.5707963267948966;
      if (tok == "X") {
        axis.emplace_back(kHalfPi, 0.0);
      } else if (tok == "Y") {
        axis.emplace_back(kHalfPi, kHalfPi);
      } else if (tok == "Z") {
        axis.emplace_back(0.0, 0.0);
      } else if (tok.front() == '(' && tok.back() == ')') {
        std::string body = tok.substr(1, tok.size() - 2);
        std::size_t comma = body.find(',');
        if (comma == std::string::npos) {
          throw std::invalid_argument(
              "scenario shorthand: expected \"(theta,phi)\"");
        }
        std::size_t used = 0;
        double theta = std::stod(body.substr(0, comma), &used);
        double phi = std::stod(body.substr(comma + 1), &used);
        axis.emplace_back(theta, phi);
      } else {
        throw std::invalid_argument("scenario shorthand: bad token \"" + tok +
                                    "\"");
      }
    }
    sites.push_back(std::move(axis));
    if (sem == std::string::npos) break;
    pos = sem + 1;
  }
  return Scenario(std::move(sites));
}

}  // namespace contexture

#include "hardy/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

using nlohmann::json;

Direction parse_direction(const json& j) {
  if (j.is_array()) {
    if (j.size() != 3) {
      throw PreconditionError("direction must be a 3-element array");
    }
    Direction d{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    const double n = d.norm();
    if (n < 1e-9) throw PreconditionError("direction has near-zero norm");
    if (std::abs(n - 1.0) > 1e-12) {  // keep already-unit input bit-exact
      d.x /= n;
      d.y /= n;
      d.z /= n;
    }
    return d;
  }
  if (j.is_object()) {
    if (!j.contains("theta") || !j.contains("phi")) {
      throw PreconditionError("direction object needs theta and phi");
    }
    return Direction::from_angles(j["theta"].get<double>(),
                                  j["phi"].get<double>());
  }
  throw PreconditionError("direction must be [x,y,z] or {theta, phi}");
}

std::string direction_json(const Direction& d) {
  return "[" + format_real(d.x) + ", " + format_real(d.y) + ", " +
         format_real(d.z) + "]";
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

Scenario generic_scenario(int n, int two_s, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Scenario sc;
  sc.n = n;
  sc.two_s = two_s;
  for (int k = 0; k < n; ++k) {
    PartySettings p;
    p.unprimed = random_direction(gen);
    p.primed = random_direction(gen);
    p.zero_label = SpinLabel{two_s};
    p.target_label = SpinLabel{-two_s};
    sc.parties.push_back(p);
  }
  sc.validate();
  return sc;
}

Scenario scenario_from_json(const std::string& text, std::uint64_t seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("scenario JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("two_s")) {
    throw PreconditionError("scenario JSON: need top-level n and two_s");
  }

  Scenario sc;
  sc.n = j["n"].get<int>();
  sc.two_s = j["two_s"].get<int>();
  if (sc.n < 2 || sc.two_s < 1) {
    throw PreconditionError("scenario JSON: need n >= 2 and two_s >= 1");
  }

  std::mt19937_64 gen(seed);
  const json parties = j.value("parties", json::array());
  if (!parties.empty() &&
      parties.size() != static_cast<std::size_t>(sc.n)) {
    throw PreconditionError("scenario JSON: parties count must equal n");
  }
  for (int k = 0; k < sc.n; ++k) {
    const json pj = parties.empty() ? json::object()
                                    : parties[static_cast<std::size_t>(k)];
    PartySettings p;
    p.unprimed = pj.contains("a") ? parse_direction(pj["a"])
                                  : random_direction(gen);
    p.primed = pj.contains("a_prime") ? parse_direction(pj["a_prime"])
                                      : random_direction(gen);
    p.zero_label = SpinLabel{pj.value("s_i", sc.two_s)};
    p.target_label = SpinLabel{pj.value("s_j", -sc.two_s)};
    sc.parties.push_back(p);
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str(), seed);
}

std::string scenario_to_json(const Scenario& sc) {
  std::string out = "{\"n\": " + std::to_string(sc.n) +
                    ", \"two_s\": " + std::to_string(sc.two_s) +
                    ", \"parties\": [";
  for (std::size_t k = 0; k < sc.parties.size(); ++k) {
    const auto& p = sc.parties[k];
    if (k > 0) out += ", ";
    out += "{\"a\": " + direction_json(p.unprimed) +
           ", \"a_prime\": " + direction_json(p.primed) +
           ", \"s_i\": " + std::to_string(p.zero_label.two_m) +
           ", \"s_j\": " + std::to_string(p.target_label.two_m) + "}";
  }
  out += "]}";
  return out;
}

std::string report_to_json(const RunReport& report) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"scenario\": " << scenario_to_json(report.scenario) << ",\n";
  out << "  \"mode\": \"" << to_string(report.mode) << "\",\n";
  out << "  \"dims\": {\"M\": " << report.dims.dim_m
      << ", \"M_bar\": " << report.dims.dim_m_bar
      << ", \"M_bar_prime\": " << report.dims.dim_m_bar_prime << "},\n";
  if (report.has_solution) {
    out << "  \"solution\": {\"p\": " << format_real(report.solution.p)
        << ", \"q\": " << format_real(report.solution.q) << ", \"residual\": "
        << format_real(report.solution.max_zero_residual)
        << ", \"nondegenerate\": "
        << (report.solution.nondegenerate ? "true" : "false") << "},\n";
  } else {
    out << "  \"solution\": null,\n";
  }
  if (report.has_certificate) {
    const auto& c = report.certificate;
    out << "  \"certificate\": {\"quantum\": " << format_real(c.quantum_value)
        << ", \"lhv_bound\": " << format_real(c.lhv_bound)
        << ", \"gap\": " << format_real(c.gap) << ", \"certified\": "
        << (c.certified ? "true" : "false")
        << ", \"strategies_total\": " << c.strategies_total
        << ", \"strategies_surviving\": " << c.strategies_surviving << "},\n";
  } else {
    out << "  \"certificate\": null,\n";
  }
  out << "  \"version\": \"" << kToolVersion << "\"\n";
  out << "}\n";
  return out.str();
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("report JSON: ") + e.what());
  }

  RunReport rep;
  const json& sj = j.at("scenario");
  rep.scenario.n = sj.at("n").get<int>();
  rep.scenario.two_s = sj.at("two_s").get<int>();
  for (const auto& pj : sj.at("parties")) {
    PartySettings p;
    p.unprimed = parse_direction(pj.at("a"));
    p.primed = parse_direction(pj.at("a_prime"));
    p.zero_label = SpinLabel{pj.at("s_i").get<int>()};
    p.target_label = SpinLabel{pj.at("s_j").get<int>()};
    rep.scenario.parties.push_back(p);
  }
  rep.mode = parse_mode(j.at("mode").get<std::string>());
  rep.dims.dim_m = j.at("dims").at("M").get<Eigen::Index>();
  rep.dims.dim_m_bar = j.at("dims").at("M_bar").get<Eigen::Index>();
  rep.dims.dim_m_bar_prime = j.at("dims").at("M_bar_prime").get<Eigen::Index>();
  if (!j.at("solution").is_null()) {
    rep.has_solution = true;
    const json& s = j["solution"];
    rep.solution.p = s.at("p").get<double>();
    rep.solution.q = s.at("q").get<double>();
    rep.solution.max_zero_residual = s.at("residual").get<double>();
    rep.solution.nondegenerate = s.at("nondegenerate").get<bool>();
  }
  if (!j.at("certificate").is_null()) {
    rep.has_certificate = true;
    const json& c = j["certificate"];
    rep.certificate.mode = rep.mode;
    rep.certificate.quantum_value = c.at("quantum").get<double>();
    rep.certificate.lhv_bound = c.at("lhv_bound").get<double>();
    rep.certificate.gap = c.at("gap").get<double>();
    rep.certificate.certified = c.at("certified").get<bool>();
    rep.certificate.strategies_total =
        c.at("strategies_total").get<std::uint64_t>();
    rep.certificate.strategies_surviving =
        c.at("strategies_surviving").get<std::uint64_t>();
    rep.certificate.dim_m = rep.dims.dim_m;
    rep.certificate.dim_m_bar = rep.dims.dim_m_bar;
    rep.certificate.dim_m_bar_prime = rep.dims.dim_m_bar_prime;
  }
  return rep;
}

}  // namespace hardy

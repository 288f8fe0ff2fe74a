#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/io.hpp"
#include "hardy/lhv.hpp"
#include "hardy/solver.hpp"

namespace {

using namespace hardy;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDimMismatch = 3;
constexpr int kExitNoSolution = 4;
constexpr int kExitResource = 5;

struct GlobalOpts {
  std::uint64_t seed = 42;
  double tol = kDefaultRankTol;
  std::string mode = "hardy";
  std::string out;
};

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw PreconditionError("cannot open output file: " + g.out);
  f << text;
}

struct ExpectedDims {
  Eigen::Index m, m_bar, m_bar_prime;
  std::string m_formula, m_bar_formula, m_bar_prime_formula;
};

ExpectedDims expected_dims(const Scenario& sc, ArgumentMode mode) {
  const Eigen::Index two_s = sc.two_s;
  const Eigen::Index dim = sc.ambient_dim();
  switch (mode) {
    case ArgumentMode::Relaxed: {
      const Eigen::Index m = sc.n * two_s + 1;
      if (sc.n == 2) {
        return {m, two_s * two_s, two_s * two_s - 1,
                "4s+1", "4s^2", "4s^2 - 1"};
      }
      return {m, dim - m, dim - m - 1,
              "2ns+1", "(2s+1)^n - (2ns+1)", "(2s+1)^n - (2ns+2)"};
    }
    case ArgumentMode::Legacy:
      return {1 + two_s * (two_s + 1), two_s, two_s - 1,
              "1 + 2s(2s+1)", "2s", "2s - 1"};
    case ArgumentMode::Cabello:
      return {2 * two_s, two_s * two_s + 1, two_s * two_s,
              "4s", "4s^2 + 1", "4s^2"};
  }
  throw PreconditionError("unknown mode");
}

int cmd_dims(const GlobalOpts& g, const std::string& file) {
  const Scenario sc = load_scenario(file, g.seed);
  const ArgumentMode mode = parse_mode(g.mode);
  const auto sys = mode_system(sc, mode);
  const auto rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target,
                                  g.tol);
  const auto exp = expected_dims(sc, mode);

  std::cout << "dim_M = " << rep.dim_m << " (expected " << exp.m_formula
            << " = " << exp.m << ")\n";
  std::cout << "dim_M_bar = " << rep.dim_m_bar << " (expected "
            << exp.m_bar_formula << " = " << exp.m_bar << ")\n";
  std::cout << "dim_M_bar_prime = " << rep.dim_m_bar_prime << " (expected "
            << exp.m_bar_prime_formula << " = " << exp.m_bar_prime << ")\n";

  if (!g.out.empty()) {
    RunReport report;
    report.scenario = sc;
    report.mode = mode;
    report.dims = rep;
    write_output(g, report_to_json(report));
  }
  const bool match = rep.dim_m == exp.m && rep.dim_m_bar == exp.m_bar &&
                     rep.dim_m_bar_prime == exp.m_bar_prime;
  if (!match) {
    std::cout << "dimension mismatch (degenerate directions?)\n";
    return kExitDimMismatch;
  }
  return kExitOk;
}

HardySolution solve_mode(ArgumentMode mode, const ModeSystem& sys,
                         const SubspaceReport& rep) {
  if (mode == ArgumentMode::Cabello) {
    return max_cabello_state(rep, sys.anchor, sys.target, sys.zeros);
  }
  return max_hardy_state(rep, sys.target, sys.zeros);
}

int cmd_certify(const GlobalOpts& g, const std::string& file) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario sc = load_scenario(file, g.seed);
  const ArgumentMode mode = parse_mode(g.mode);
  if (lhv_strategy_count(sc.n, sc.two_s) > kLhvStrategyGuard) {
    throw ResourceLimit("certify: LHV strategy space exceeds 10^7");
  }
  const auto sys = mode_system(sc, mode);
  const auto rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target,
                                  g.tol);
  const HardySolution sol = solve_mode(mode, sys, rep);
  const Certificate cert = certify(sc, mode, sol, g.tol);

  RunReport report;
  report.scenario = sc;
  report.mode = mode;
  report.dims = rep;
  report.has_solution = true;
  report.solution = sol;
  report.has_certificate = true;
  report.certificate = cert;
  report.timing_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();

  write_output(g, report_to_json(report));
  std::cerr << (cert.certified ? "certified" : "NOT certified")
            << ": quantum=" << format_real(cert.quantum_value)
            << " lhv_bound=" << format_real(cert.lhv_bound)
            << " gap=" << format_real(cert.gap) << " ("
            << format_real(report.timing_ms) << " ms)\n";
  return cert.certified ? kExitOk : kExitNoSolution;
}

struct ScanAxis {
  std::string name;
  // each target is (party, primed?, is_theta?)
  std::vector<std::tuple<int, bool, bool>> targets;
  double min = 0, max = 0;
  int steps = 0;

  double value(int i) const {
    return steps == 0 ? min : min + (max - min) * i / steps;
  }
};

ScanAxis parse_axis(const std::string& spec, int n_parties) {
  // [name=]target1[,target2,...]:min:max:steps
  ScanAxis axis;
  std::string body = spec;
  if (const auto eq = body.find('='); eq != std::string::npos) {
    axis.name = body.substr(0, eq);
    body = body.substr(eq + 1);
  }
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) {
    throw PreconditionError("axis spec must be [name=]targets:min:max:steps");
  }
  std::stringstream ts(parts[0]);
  while (std::getline(ts, item, ',')) {
    // p<k>.(a|a_prime).(theta|phi)
    if (item.size() < 2 || item[0] != 'p') {
      throw PreconditionError("axis target must look like p0.a_prime.theta");
    }
    const auto dot1 = item.find('.');
    const auto dot2 = item.rfind('.');
    if (dot1 == std::string::npos || dot2 == dot1) {
      throw PreconditionError("axis target must look like p0.a_prime.theta");
    }
    const int party = std::stoi(item.substr(1, dot1 - 1));
    if (party < 0 || party >= n_parties) {
      throw PreconditionError("axis target party out of range");
    }
    const std::string dir = item.substr(dot1 + 1, dot2 - dot1 - 1);
    const std::string angle = item.substr(dot2 + 1);
    if (dir != "a" && dir != "a_prime") {
      throw PreconditionError("axis target direction must be a or a_prime");
    }
    if (angle != "theta" && angle != "phi") {
      throw PreconditionError("axis target angle must be theta or phi");
    }
    axis.targets.emplace_back(party, dir == "a_prime", angle == "theta");
  }
  if (axis.targets.empty()) throw PreconditionError("axis has no targets");
  if (axis.name.empty()) axis.name = parts[0];
  axis.min = std::stod(parts[1]);
  axis.max = std::stod(parts[2]);
  axis.steps = std::stoi(parts[3]);
  if (axis.steps < 1 || !(axis.max > axis.min)) {
    throw PreconditionError("axis needs max > min and steps >= 1");
  }
  return axis;
}

Scenario apply_axes(Scenario sc, const std::vector<ScanAxis>& axes,
                    const std::vector<double>& values) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (const auto& [party, primed, is_theta] : axes[i].targets) {
      auto& p = sc.parties[static_cast<std::size_t>(party)];
      Direction& d = primed ? p.primed : p.unprimed;
      const double theta = is_theta ? values[i] : d.theta();
      const double phi = is_theta ? d.phi() : values[i];
      d = Direction::from_angles(theta, phi);
    }
  }
  return sc;
}

struct ScanPoint {
  SubspaceReport rep;
  double p = 0, q = 0;
  bool certified = false;
};

ScanPoint evaluate_point(const Scenario& sc, ArgumentMode mode, double tol) {
  ScanPoint pt;
  const auto sys = mode_system(sc, mode);
  pt.rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target, tol);
  try {
    const HardySolution sol = solve_mode(mode, sys, pt.rep);
    pt.p = sol.p;
    pt.q = sol.q;
    pt.certified = certify(sc, mode, sol, tol).certified;
  } catch (const NoHardyState&) {
  } catch (const NoCabelloGap&) {
  }
  return pt;
}

int cmd_scan(const GlobalOpts& g, const std::string& file,
             const std::vector<std::string>& axis_specs, bool refine) {
  const Scenario base = load_scenario(file, g.seed);
  const ArgumentMode mode = parse_mode(g.mode);
  if (axis_specs.empty()) throw PreconditionError("scan needs at least one --axis");
  std::vector<ScanAxis> axes;
  for (const auto& spec : axis_specs) axes.push_back(parse_axis(spec, base.n));
  if (refine && axes.size() != 1) {
    throw PreconditionError("--refine requires exactly one axis");
  }

  std::ostringstream csv;
  for (const auto& a : axes) csv << a.name << ",";
  csv << "dim_M,dim_M_bar,dim_M_bar_prime,p,q,certified,refined\n";

  const auto emit_row = [&](const std::vector<double>& values,
                            const ScanPoint& pt, bool refined) {
    for (double v : values) csv << format_real(v) << ",";
    csv << pt.rep.dim_m << "," << pt.rep.dim_m_bar << ","
        << pt.rep.dim_m_bar_prime << "," << format_real(pt.p) << ","
        << format_real(pt.q) << "," << (pt.certified ? 1 : 0) << ","
        << (refined ? 1 : 0) << "\n";
  };
  const auto objective = [&](const ScanPoint& pt) {
    return mode == ArgumentMode::Cabello ? pt.p - pt.q : pt.p;
  };

  // row-major over the grid, last axis fastest
  std::vector<int> idx(axes.size(), 0);
  std::vector<double> best_values;
  double best = -1;
  bool done = false;
  while (!done) {
    std::vector<double> values;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      values.push_back(axes[i].value(idx[i]));
    }
    const ScanPoint pt = evaluate_point(apply_axes(base, axes, values), mode,
                                        g.tol);
    emit_row(values, pt, false);
    if (objective(pt) > best) {
      best = objective(pt);
      best_values = values;
    }
    std::size_t i = axes.size();
    while (i-- > 0) {
      if (++idx[i] <= axes[i].steps) break;
      idx[i] = 0;
      if (i == 0) done = true;
    }
  }

  if (refine) {
    const ScanAxis& ax = axes[0];
    const double step = (ax.max - ax.min) / ax.steps;
    double lo = std::max(ax.min, best_values[0] - step);
    double hi = std::min(ax.max, best_values[0] + step);
    const auto f = [&](double x) {
      return objective(
          evaluate_point(apply_axes(base, axes, {x}), mode, g.tol));
    };
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = f(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = f(d);
      }
    }
    const double x = (lo + hi) / 2;
    emit_row({x}, evaluate_point(apply_axes(base, axes, {x}), mode, g.tol),
             true);
  }

  write_output(g, csv.str());
  return kExitOk;
}

int cmd_minimal_set(const GlobalOpts& g, const std::string& file) {
  const Scenario sc = load_scenario(file, g.seed);
  const ArgumentMode mode = parse_mode(g.mode);
  if (mode == ArgumentMode::Cabello) {
    throw PreconditionError("minimal-set supports legacy and hardy modes only");
  }
  if (lhv_strategy_count(sc.n, sc.two_s) > kLhvStrategyGuard) {
    throw ResourceLimit("minimal-set: LHV strategy space exceeds 10^7");
  }
  const auto events = expand_events(sc, mode);
  std::vector<Event> zeros;
  std::vector<ConstraintTag> tags;
  const Event* target = nullptr;
  for (const auto& se : events) {
    if (se.requirement == Requirement::Zero) {
      zeros.push_back(se.event);
      tags.push_back(se.tag);
    } else if (se.requirement == Requirement::TargetP) {
      target = &se.event;
    }
  }
  const auto sub = minimal_zero_subset(sc.n, sc.two_s, zeros, *target);

  std::cout << "minimal zero-event subset (" << sub.indices.size() << " of "
            << zeros.size() << (sub.exact ? ", exact" : ", greedy") << "): ";
  std::string tag_list;
  for (std::size_t i = 0; i < sub.indices.size(); ++i) {
    if (i > 0) tag_list += ", ";
    tag_list += tags[sub.indices[i]].label();
  }
  std::cout << tag_list << "\n";

  if (!g.out.empty()) {
    std::string json = "{\"subset\": [";
    for (std::size_t i = 0; i < sub.indices.size(); ++i) {
      if (i > 0) json += ", ";
      json += "\"" + tags[sub.indices[i]].label() + "\"";
    }
    json += "], \"indices\": [";
    for (std::size_t i = 0; i < sub.indices.size(); ++i) {
      if (i > 0) json += ", ";
      json += std::to_string(sub.indices[i]);
    }
    json += std::string("], \"exact\": ") + (sub.exact ? "true" : "false") +
            "}\n";
    write_output(g, json);
  }
  return kExitOk;
}

int cmd_sample(const GlobalOpts& g, const std::string& file,
               std::int64_t shots) {
  const Scenario sc = load_scenario(file, g.seed);
  const ArgumentMode mode = parse_mode(g.mode);
  const auto sys = mode_system(sc, mode);
  const auto rep = hardy_subspace(sys.zeros, sc.ambient_dim(), sys.target,
                                  g.tol);
  const HardySolution sol = solve_mode(mode, sys, rep);
  const auto bases = make_bases(sc);

  std::ostringstream out;
  out << "{\n";
  out << "  \"scenario\": " << scenario_to_json(sc) << ",\n";
  out << "  \"mode\": \"" << to_string(mode) << "\",\n";
  out << "  \"shots\": " << shots << ",\n";
  out << "  \"seed\": " << g.seed << ",\n";
  out << "  \"p\": " << format_real(sol.p) << ",\n";
  out << "  \"tables\": [\n";
  const int combos = 1 << sc.n;
  for (int c = 0; c < combos; ++c) {
    std::vector<MeasurementBasis> chosen;
    out << "    {\"settings\": [";
    for (int k = 0; k < sc.n; ++k) {
      const bool primed = (c >> (sc.n - 1 - k)) & 1;
      chosen.push_back(bases.at(static_cast<std::size_t>(k),
                                primed ? Setting::Primed : Setting::Unprimed));
      out << (k > 0 ? ", " : "") << (primed ? "\"a_prime\"" : "\"a\"");
    }
    // distinct sub-seed per table so tables are independent draws
    const auto counts = sample_outcomes(sol.state, chosen, shots,
                                        g.seed + static_cast<std::uint64_t>(c));
    out << "], \"counts\": [";
    for (std::size_t i = 0; i < counts.counts.size(); ++i) {
      const auto tuple = outcomes_from_index(
          sc.n, sc.two_s, static_cast<Eigen::Index>(i));
      if (i > 0) out << ", ";
      out << "{\"outcomes\": [";
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        out << (k > 0 ? ", " : "") << "\"" << tuple[k].str() << "\"";
      }
      out << "], \"count\": " << counts.counts[i] << "}";
    }
    out << "]}" << (c + 1 < combos ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  write_output(g, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy and Cabello nonlocality arguments for spin-s systems"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for generated directions / sampling")
      ->capture_default_str();
  app.add_option("--tol", g.tol, "rank tolerance")->capture_default_str();
  app.add_option("--mode", g.mode, "hardy | cabello | legacy")
      ->capture_default_str();
  app.add_option("--out", g.out, "write machine-readable output here");

  std::string file;
  std::vector<std::string> axis_specs;
  bool refine = false;
  std::int64_t shots = 100000;

  auto* dims = app.add_subcommand("dims", "subspace dimensions vs closed form");
  dims->add_option("scenario", file, "scenario JSON file")->required();
  dims->fallthrough();

  auto* certify = app.add_subcommand("certify", "solve and certify nonlocality");
  certify->add_option("scenario", file, "scenario JSON file")->required();
  certify->fallthrough();

  auto* scan = app.add_subcommand("scan", "grid scan over direction angles");
  scan->add_option("scenario", file, "scenario JSON file")->required();
  scan->add_option("--axis", axis_specs,
                   "[name=]p<k>.(a|a_prime).(theta|phi)[,...]:min:max:steps");
  scan->add_flag("--refine", refine, "golden-section refine around best point");
  scan->fallthrough();

  auto* minimal = app.add_subcommand("minimal-set",
                                     "smallest zero-event subset that forces "
                                     "the contradiction");
  minimal->add_option("scenario", file, "scenario JSON file")->required();
  minimal->fallthrough();

  auto* sample = app.add_subcommand("sample", "sample outcomes of the extremal state");
  sample->add_option("scenario", file, "scenario JSON file")->required();
  sample->add_option("--shots", shots, "number of draws per settings table")
      ->capture_default_str();
  sample->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (dims->parsed()) return cmd_dims(g, file);
    if (certify->parsed()) return cmd_certify(g, file);
    if (scan->parsed()) return cmd_scan(g, file, axis_specs, refine);
    if (minimal->parsed()) return cmd_minimal_set(g, file);
    if (sample->parsed()) return cmd_sample(g, file, shots);
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NoHardyState& e) {
    std::cerr << "NoHardyState: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const NoCabelloGap& e) {
    std::cerr << "NoCabelloGap: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const NoContradiction& e) {
    std::cerr << "NoContradiction: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInput;
}

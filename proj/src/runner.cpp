#include "vpe/runner.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "vpe/applications.hpp"
#include "vpe/axiom_report.hpp"
#include "vpe/error.hpp"
#include "vpe/sequential.hpp"

namespace vpe {

using nlohmann::json;

namespace {

constexpr std::size_t kWitnessesShown = 20;

RunVerdict verdict_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::HypothesisViolation:
    case ErrorKind::EstimateViolation:
    case ErrorKind::EmptyGraph:
      return RunVerdict::hypothesis_violation;
    case ErrorKind::TraceMismatch:
    case ErrorKind::NonSingleton:
    case ErrorKind::NoConvergence:
    case ErrorKind::IterationLimit:
      return RunVerdict::verification_failure;
    default:
      return RunVerdict::input_error;
  }
}

double read_real(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorKind::ParseError, "expected a number, got \"" + s + "\"");
  }
  if (!v.is_number()) throw Error(ErrorKind::ParseError, "expected a number");
  return v.get<double>();
}

json ids(const PointSet& set, const PointSpace& space) {
  json out = json::array();
  for (PointIndex x : set) out.push_back(space.id(x));
  return out;
}

json flags_to_json(const RunFlags& f) {
  json out = {{"tol", f.tol},
              {"seed", f.seed},
              {"picker", f.picker == Picker::Kind::exact ? "exact" : "quasi"},
              {"max_iter", f.max_iter}};
  if (f.schedule) out["schedule"] = *f.schedule;
  if (f.samples) out["samples"] = *f.samples;
  return out;
}

RunFlags flags_from_json(const json& j) {
  RunFlags f;
  f.tol = j.at("tol").get<double>();
  f.seed = j.at("seed").get<std::uint64_t>();
  f.picker = j.at("picker").get<std::string>() == "quasi" ? Picker::Kind::quasi : Picker::Kind::exact;
  f.max_iter = j.at("max_iter").get<std::size_t>();
  if (j.contains("schedule")) f.schedule = j.at("schedule").get<std::array<double, 3>>();
  if (j.contains("samples")) f.samples = j.at("samples").get<std::size_t>();
  return f;
}

PerturbationSchedule schedule_for(const ProblemFile& p, const RunFlags& flags) {
  if (flags.schedule) {
    const auto& s = *flags.schedule;
    return PerturbationSchedule::geometric(s[0], s[1], s[2]);
  }
  if (!p.schedule) throw Error(ErrorKind::ValidationError, "schedule: section is required by bp");
  return p.schedule->build();
}

double epsilon_for(const ProblemFile& p, const RunFlags& flags) {
  if (flags.schedule) return (*flags.schedule)[0];
  if (!p.epsilon) throw Error(ErrorKind::ValidationError, "epsilon: required by ekeland");
  return *p.epsilon;
}

PointIndex z0_for(const ProblemFile& p, const PointSpace& space) {
  if (!p.z0) throw Error(ErrorKind::ValidationError, "z0: required by this command");
  return space.index_of(*p.z0);
}

EngineOptions options_for(const RunFlags& flags) {
  EngineOptions o;
  o.picker = {flags.picker, flags.seed};
  o.max_iter = flags.max_iter;
  return o;
}

std::string margin_text(double m) {
  std::ostringstream os;
  os.precision(6);
  os << m;
  return os.str();
}

void describe_certificate(std::ostringstream& out, const Certificate& cert, const PointSpace& space) {
  for (const Claim& c : cert.claims) {
    out << "  claim (" << c.label << "): " << (c.satisfied ? "satisfied" : "FAILED")
        << "  margin " << margin_text(c.margin);
    if (c.witness) out << "  at " << space.id(*c.witness);
    out << "\n";
  }
  for (const auto& note : cert.notes) out << "  note: " << note << "\n";
}

/// bp / ekeland share everything but the construction and its verifier.
void run_principle(std::string_view command, const ProblemFile& p, const Instance& inst,
                   const RunFlags& flags, RunReport& report) {
  const ExtendedObjective f = build_objective(p);
  const PointIndex z0 = z0_for(p, *inst.space);
  const bool bp = command == "bp";
  RunResult run{0, {}};
  Certificate cert{};
  if (bp) {
    const PerturbationSchedule schedule = schedule_for(p, flags);
    run = borwein_preiss(inst.distance, f, schedule, z0, options_for(flags));
    cert = verify_bp(inst.distance, f, schedule, z0, run.zbar, run.trace, flags.tol);
  } else {
    const double eps = epsilon_for(p, flags);
    run = ekeland(inst.distance, f, eps, z0, options_for(flags));
    cert = verify_ekeland(inst.distance, f, eps, z0, run.zbar, flags.tol, &run.trace);
  }
  const NestedFamily family = run.trace.nested_family(0.5 * min_positive_distance(inst.distance));
  const CantorResult cantor = cantor_intersect(inst.distance, family, Containment::non_strict);

  json sets = json::array();
  for (const auto& s : family.sets) sets.push_back(ids(s, *inst.space));
  json centers = json::array();
  for (PointIndex c : family.centers) centers.push_back(inst.space->id(c));

  report.document["result"] = {
      {"zbar", inst.space->id(run.zbar)},
      {"iterations", run.trace.iterates.size()},
      {"stabilized_at", *run.trace.stabilized_at},
      {"cantor", {{"limit", inst.space->id(cantor.limit)}, {"singleton_check", cantor.singleton_check}}},
      {"nested_family", {{"sets", sets}, {"centers", centers}, {"radii", family.radii}}},
  };
  report.document["trace"] = trace_to_json(run.trace, *inst.space);
  report.document["certificate"] = certificate_to_json(cert, *inst.space);
  const bool ok = cert.verified() && cantor.limit == run.zbar;
  report.verdict = ok ? RunVerdict::verified : RunVerdict::verification_failure;

  std::ostringstream out;
  out << (bp ? "Borwein-Preiss" : "Ekeland") << " construction from z0 = " << inst.space->id(z0)
      << ": zbar = " << inst.space->id(run.zbar) << " after " << run.trace.iterates.size()
      << " iteration(s)\n";
  describe_certificate(out, cert, *inst.space);
  out << "  nested-set limit: " << inst.space->id(cantor.limit) << "\n";
  report.human += out.str();
}

void run_caristi(const ProblemFile& p, const Instance& inst, const RunFlags& flags, RunReport& report) {
  const PotentialFn phi = build_potential(p);
  const SetValuedMap map = build_map(p, *inst.space);
  const double eps = p.caristi_eps.value_or(0.25);
  const CaristiResult r = caristi_fixed_point(inst.distance, phi, map, eps, flags.tol);
  const FixedPointSets brute = brute_fixed_points(map);
  const bool fix_eq_end = brute.fixed == brute.endpoints;

  report.document["result"] = {
      {"point", inst.space->id(r.point)},
      {"xbar", inst.space->id(r.xbar)},
      {"ybar", inst.space->id(r.ybar)},
      {"endpoint_ok", r.endpoint_ok},
      {"evp_min_margin", real_to_json(r.evp_min_margin)},
      {"rearranged_lower_margin", real_to_json(r.rearranged_lower_margin)},
      {"rearranged_upper_margin", real_to_json(r.rearranged_upper_margin)},
      {"brute_fixed", ids(brute.fixed, *inst.space)},
      {"brute_endpoints", ids(brute.endpoints, *inst.space)},
      {"fix_equals_endpoints", fix_eq_end},
  };
  report.document["certificate"] = certificate_to_json(r.certificate, *make_pair_space(*inst.space));
  const bool ok = r.certificate.verified() && brute.fixed.contains(r.point) && r.endpoint_ok &&
                  r.evp_min_margin >= -flags.tol && r.rearranged_lower_margin >= -flags.tol &&
                  r.rearranged_upper_margin >= -flags.tol;
  report.verdict = ok ? RunVerdict::verified : RunVerdict::verification_failure;

  std::ostringstream out;
  out << "Caristi fixed point: " << inst.space->id(r.point) << " (pair minimizer ("
      << inst.space->id(r.xbar) << "," << inst.space->id(r.ybar) << "))\n"
      << "  endpoint: " << (r.endpoint_ok ? "yes" : "no") << "\n"
      << "  brute-force fixed points: " << brute.fixed.size() << ", endpoints: " << brute.endpoints.size()
      << (fix_eq_end ? "" : "  (fixed points that are not endpoints exist)") << "\n";
  report.human += out.str();
}

void run_equilibrium(const ProblemFile& p, const Instance& inst, const RunFlags& flags,
                     RunReport& report) {
  const Bifunction F = build_bifunction(p);
  const PotentialFn phi = build_potential(p);
  const auto schedule = p.epsilons.value_or(default_eps_schedule());
  const EquilibriumResult r = equilibrium_solve(inst.distance, F, phi, schedule, flags.tol);
  const PointSet brute = brute_equilibria(F, flags.tol);

  json stages = json::array();
  bool bounds_ok = true;
  for (const auto& s : r.stages) {
    stages.push_back({{"epsilon", s.epsilon},
                      {"point", inst.space->id(s.point)},
                      {"residual", s.residual},
                      {"bound", s.bound}});
    bounds_ok = bounds_ok && s.bound >= -flags.tol;
  }
  report.document["result"] = {{"xbar", inst.space->id(r.xbar)},
                               {"final_residual", r.final_residual},
                               {"stages", stages},
                               {"brute_equilibria", ids(brute, *inst.space)}};
  const bool ok = r.final_residual >= -flags.tol && brute.contains(r.xbar) && bounds_ok;
  report.verdict = ok ? RunVerdict::verified : RunVerdict::verification_failure;

  std::ostringstream out;
  out << "Equilibrium point: " << inst.space->id(r.xbar) << " after " << r.stages.size()
      << " stage(s); min_y F(xbar, y) = " << margin_text(r.final_residual) << "\n"
      << "  brute-force equilibria: " << brute.size() << "\n";
  report.human += out.str();
}

void run_check_distance(const Instance& inst, const RunFlags& flags, RunReport& report) {
  AxiomScanOptions options;
  options.tol = flags.tol;
  options.sample_triples = flags.samples;
  options.seed = flags.seed;
  const AxiomReport ar = axiom_report(inst.distance, options);
  const PointSpace& sp = *inst.space;

  json sym = json::array();
  for (std::size_t i = 0; i < ar.symmetry_witnesses.size() && i < kWitnessesShown; ++i) {
    const auto& w = ar.symmetry_witnesses[i];
    sym.push_back({sp.id(w.x), sp.id(w.y), w.forward, w.backward});
  }
  json tri = json::array();
  for (std::size_t i = 0; i < ar.triangle_witnesses.size() && i < kWitnessesShown; ++i) {
    const auto& w = ar.triangle_witnesses[i];
    tri.push_back({sp.id(w.x), sp.id(w.y), sp.id(w.z), w.direct, w.detour});
  }
  report.document["result"] = {
      {"mode", ar.mode == ScanMode::full ? "full" : "sampled"},
      {"identity_ok", ar.identity_ok},
      {"triples_examined", ar.triples_examined},
      {"symmetry_witness_count", ar.symmetry_witnesses.size()},
      {"triangle_witness_count", ar.triangle_witnesses.size()},
      {"symmetry_witnesses", sym},
      {"triangle_witnesses", tri},
  };
  report.verdict = ar.identity_ok ? RunVerdict::verified : RunVerdict::verification_failure;

  std::ostringstream out;
  out << "Distance family " << to_string(inst.distance.family()) << " on " << sp.size()
      << " points (" << (ar.mode == ScanMode::full ? "full" : "sampled") << " scan)\n"
      << "  identity axiom: " << (ar.identity_ok ? "holds" : "FAILS") << "\n"
      << "  symmetry violations: " << ar.symmetry_witnesses.size() << "\n"
      << "  triangle violations: " << ar.triangle_witnesses.size() << "\n";
  if (!ar.triangle_witnesses.empty()) {
    const auto& w = ar.triangle_witnesses.front();
    out << "  e.g. d(" << sp.id(w.x) << "," << sp.id(w.z) << ") = " << w.direct << " > d("
        << sp.id(w.x) << "," << sp.id(w.y) << ") + d(" << sp.id(w.y) << "," << sp.id(w.z)
        << ") = " << w.detour << "\n";
  }
  report.human += out.str();
}

RunReport start_report(std::string_view command, const ProblemFile& problem, const RunFlags& flags) {
  RunReport report;
  report.command = std::string(command);
  report.document = {{"command", report.command},
                     {"digest", digest(problem)},
                     {"problem", to_json(problem)},
                     {"flags", flags_to_json(flags)}};
  return report;
}

void finish(RunReport& report, std::chrono::steady_clock::time_point t0) {
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report.document["verdict"] = std::string(to_string(report.verdict));
  std::ostringstream out;
  out << "verdict: " << to_string(report.verdict) << "  (" << margin_text(report.wall_ms) << " ms)\n";
  report.human += out.str();
}

}  // namespace

std::string_view to_string(RunVerdict verdict) {
  switch (verdict) {
    case RunVerdict::verified: return "verified";
    case RunVerdict::hypothesis_violation: return "hypothesis-violation";
    case RunVerdict::verification_failure: return "verification-failure";
    case RunVerdict::input_error: return "input-error";
  }
  return "unknown";
}

int exit_code(RunVerdict verdict) {
  switch (verdict) {
    case RunVerdict::verified: return 0;
    case RunVerdict::hypothesis_violation: return 1;
    case RunVerdict::verification_failure: return 2;
    case RunVerdict::input_error: return 3;
  }
  return 3;
}

json certificate_to_json(const Certificate& cert, const PointSpace& space) {
  json claims = json::array();
  for (const Claim& c : cert.claims) {
    json j = {{"label", std::string(1, c.label)},
              {"satisfied", c.satisfied},
              {"margin", real_to_json(c.margin)},
              {"detail", c.detail}};
    if (c.witness) j["witness"] = space.id(*c.witness);
    claims.push_back(j);
  }
  return {{"kind", std::string(to_string(cert.kind))},
          {"zbar", space.id(cert.zbar)},
          {"tolerance", cert.tolerance},
          {"verified", cert.verified()},
          {"claims", claims},
          {"notes", cert.notes}};
}

json trace_to_json(const ConstructionTrace& trace, const PointSpace& space) {
  json iterates = json::array();
  json sequence = json::array();
  for (const Iterate& it : trace.iterates) {
    iterates.push_back({{"z", space.id(it.z)},
                        {"set", ids(it.set, space)},
                        {"slack", real_to_json(it.slack)},
                        {"radius", real_to_json(it.radius)},
                        {"value", real_to_json(it.value)}});
    sequence.push_back(space.id(it.z));
  }
  json out = {{"kind", std::string(to_string(trace.kind))}, {"iterates", iterates}};
  out["stabilized_at"] = trace.stabilized_at ? json(*trace.stabilized_at) : json(nullptr);
  // The z_i as a sequence prefix whose tail is constant from stabilization on.
  out["sequence"] = {{"terms", sequence}, {"constant_from", out["stabilized_at"]}};
  return out;
}

ConstructionTrace trace_from_json(const json& doc, const PointSpace& space) {
  ConstructionTrace trace;
  const auto kind = doc.at("kind").get<std::string>();
  trace.kind = kind == "ekeland" ? PrincipleKind::ekeland : PrincipleKind::borwein_preiss;
  for (const json& it : doc.at("iterates")) {
    std::vector<PointIndex> members;
    for (const json& id : it.at("set")) members.push_back(space.index_of(id.get<std::string>()));
    trace.iterates.push_back({space.index_of(it.at("z").get<std::string>()), PointSet(std::move(members)),
                              read_real(it.at("slack")), read_real(it.at("radius")),
                              read_real(it.at("value"))});
  }
  if (!doc.at("stabilized_at").is_null()) trace.stabilized_at = doc.at("stabilized_at").get<std::size_t>();
  return trace;
}

RunReport run(std::string_view command, const ProblemFile& problem, const RunFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report = start_report(command, problem, flags);
  try {
    const Instance inst = build_instance(problem);
    if (command == "bp" || command == "ekeland") {
      run_principle(command, problem, inst, flags, report);
    } else if (command == "caristi") {
      run_caristi(problem, inst, flags, report);
    } else if (command == "ep") {
      run_equilibrium(problem, inst, flags, report);
    } else if (command == "check-distance") {
      run_check_distance(inst, flags, report);
    } else {
      throw Error(ErrorKind::BadParameter, "unknown command '" + std::string(command) + "'");
    }
  } catch (const Error& e) {
    report.verdict = verdict_for(e.kind());
    report.document["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    report.human += std::string("error: ") + e.what() + "\n";
  }
  finish(report, t0);
  return report;
}

RunReport verify_stored(const json& stored) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.command = "verify";
  try {
    const ProblemFile problem = problem_from_json(stored.at("problem"));
    const std::string command = stored.at("command").get<std::string>();
    const RunFlags flags = flags_from_json(stored.at("flags"));
    report.document = {{"command", "verify"},
                       {"verified_command", command},
                       {"digest", digest(problem)}};
    if (digest(problem) != stored.at("digest").get<std::string>()) {
      throw Error(ErrorKind::ValidationError, "digest does not match the embedded problem");
    }
    if (stored.contains("error")) {
      throw Error(ErrorKind::ValidationError, "stored report carries no result to verify");
    }
    const Instance inst = build_instance(problem);
    const PointSpace& sp = *inst.space;
    const json& result = stored.at("result");
    std::ostringstream out;
    bool ok = false;

    if (command == "bp" || command == "ekeland") {
      const ExtendedObjective f = build_objective(problem);
      const PointIndex z0 = z0_for(problem, sp);
      const PointIndex zbar = sp.index_of(result.at("zbar").get<std::string>());
      const ConstructionTrace trace = trace_from_json(stored.at("trace"), sp);
      const Certificate cert =
          command == "bp"
              ? verify_bp(inst.distance, f, schedule_for(problem, flags), z0, zbar, trace, flags.tol)
              : verify_ekeland(inst.distance, f, epsilon_for(problem, flags), z0, zbar, flags.tol, &trace);
      report.document["certificate"] = certificate_to_json(cert, sp);
      ok = cert.verified();
      out << "rechecked " << command << " certificate for zbar = " << sp.id(zbar) << "\n";
      describe_certificate(out, cert, sp);
    } else if (command == "caristi") {
      const PotentialFn phi = build_potential(problem);
      const SetValuedMap map = build_map(problem, sp);
      const double eps = problem.caristi_eps.value_or(0.25);
      const CaristiScan scan = check_caristi_hypothesis(inst.distance, phi, map, flags.tol);
      const CaristiResult r = assess_caristi_pair(
          inst.distance, phi, map, eps, sp.index_of(result.at("xbar").get<std::string>()),
          sp.index_of(result.at("ybar").get<std::string>()), flags.tol);
      const FixedPointSets brute = brute_fixed_points(map);
      ok = scan.ok && r.certificate.verified() && r.endpoint_ok && brute.fixed.contains(r.point) &&
           r.evp_min_margin >= -flags.tol && r.rearranged_lower_margin >= -flags.tol &&
           r.rearranged_upper_margin >= -flags.tol;
      out << "rechecked caristi point " << sp.id(r.point) << "\n";
    } else if (command == "ep") {
      const Bifunction F = build_bifunction(problem);
      const PotentialFn phi = build_potential(problem);
      const PointIndex xbar = sp.index_of(result.at("xbar").get<std::string>());
      double residual = std::numeric_limits<double>::infinity();
      for (PointIndex y = 0; y < sp.size(); ++y) residual = std::min(residual, F(xbar, y));
      ok = !find_estimate_violation(F, phi, flags.tol) && residual >= -flags.tol &&
           brute_equilibria(F, flags.tol).contains(xbar);
      out << "rechecked equilibrium point " << sp.id(xbar) << "\n";
    } else if (command == "check-distance") {
      AxiomScanOptions options;
      options.tol = flags.tol;
      options.sample_triples = flags.samples;
      options.seed = flags.seed;
      const AxiomReport ar = axiom_report(inst.distance, options);
      ok = ar.identity_ok == result.at("identity_ok").get<bool>() &&
           ar.symmetry_witnesses.size() == result.at("symmetry_witness_count").get<std::size_t>() &&
           ar.triangle_witnesses.size() == result.at("triangle_witness_count").get<std::size_t>();
      out << "rechecked axiom report\n";
    } else {
      throw Error(ErrorKind::ValidationError, "unknown command '" + command + "' in report");
    }
    report.verdict = ok ? RunVerdict::verified : RunVerdict::verification_failure;
    report.human += out.str();
  } catch (const Error& e) {
    report.verdict = verdict_for(e.kind());
    report.document["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    report.human += std::string("error: ") + e.what() + "\n";
  } catch (const json::exception& e) {
    report.verdict = RunVerdict::input_error;
    report.document["error"] = {{"kind", "ParseError"}, {"message", e.what()}};
    report.human += std::string("error: malformed report: ") + e.what() + "\n";
  }
  finish(report, t0);
  return report;
}

}  // namespace vpe

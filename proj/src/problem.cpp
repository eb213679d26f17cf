#include "vpe/problem.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vpe/error.hpp"

namespace vpe {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + why);
}

[[noreturn]] void invalid(const std::string& section, const std::string& why) {
  throw Error(ErrorKind::ValidationError, section + ": " + why);
}

double read_real(const json& v, const std::string& field, bool allow_inf = false) {
  if (v.is_number()) return v.get<double>();
  if (allow_inf && v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
  }
  parse_fail(field, allow_inf ? "expected a number or \"+inf\"" : "expected a number");
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::vector<double> read_reals(const json& v, const std::string& field) {
  if (!v.is_array()) parse_fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_real(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> read_matrix(const json& v, const std::string& field) {
  if (!v.is_array()) parse_fail(field, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_reals(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

/// Object keyed by point id -> values in space order; every point must appear.
std::vector<double> read_point_table(const json& v, const std::string& field,
                                     const std::vector<std::string>& points) {
  if (!v.is_object()) parse_fail(field, "expected an object keyed by point id");
  std::unordered_set<std::string> known(points.begin(), points.end());
  for (const auto& [key, _] : v.items()) {
    if (!known.contains(key)) invalid(field, "unknown point '" + key + "'");
  }
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& id : points) {
    auto it = v.find(id);
    if (it == v.end()) invalid(field, "no value for point '" + id + "'");
    out.push_back(read_real(*it, field + "." + id, true));
  }
  return out;
}

json point_table_to_json(const std::vector<double>& values, const std::vector<std::string>& points) {
  json out = json::object();
  for (std::size_t i = 0; i < points.size(); ++i) out[points[i]] = real_to_json(values[i]);
  return out;
}

DistanceDescriptor read_distance(const json& v, const std::string& field) {
  DistanceDescriptor d;
  const json& fam = require(v, "family", field);
  if (!fam.is_string()) parse_fail(field + ".family", "expected a string");
  const auto family = family_from_string(fam.get<std::string>());
  if (!family) invalid(field, "unknown family '" + fam.get<std::string>() + "'");
  d.family = *family;
  const json params = v.contains("params") ? v.at("params") : json::object();
  const std::string pf = field + ".params";
  switch (d.family) {
    case Family::table:
      d.matrix = read_matrix(require(params, "matrix", pf), pf + ".matrix");
      break;
    case Family::lp_frac:
      d.p = read_real(require(params, "p", pf), pf + ".p");
      break;
    case Family::symmetrized: {
      d.inner = std::make_shared<const DistanceDescriptor>(read_distance(require(params, "inner", pf), pf + ".inner"));
      const auto w = read_reals(require(params, "weights", pf), pf + ".weights");
      if (w.size() != 2) parse_fail(pf + ".weights", "expected [w_right, w_left]");
      d.w_right = w[0];
      d.w_left = w[1];
      break;
    }
    case Family::product:
      invalid(field, "product distances are derived internally and cannot be given in a problem file");
    default:
      break;
  }
  return d;
}

json distance_to_json(const DistanceDescriptor& d) {
  json params = json::object();
  switch (d.family) {
    case Family::table: params["matrix"] = d.matrix; break;
    case Family::lp_frac: params["p"] = *d.p; break;
    case Family::symmetrized:
      params["inner"] = distance_to_json(*d.inner);
      params["weights"] = {d.w_right, d.w_left};
      break;
    default: break;
  }
  return {{"family", std::string(to_string(d.family))}, {"params", params}};
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace

bool operator==(const DistanceDescriptor& a, const DistanceDescriptor& b) {
  if (a.family != b.family || a.p != b.p || a.matrix != b.matrix) return false;
  if (a.family != Family::symmetrized) return true;
  return a.w_right == b.w_right && a.w_left == b.w_left && a.inner && b.inner && *a.inner == *b.inner;
}

bool operator==(const ProblemFile& a, const ProblemFile& b) {
  return a.name == b.name && a.seed == b.seed && a.points == b.points && a.coords == b.coords &&
         a.distance == b.distance && a.objective == b.objective && a.schedule == b.schedule &&
         a.z0 == b.z0 && a.epsilon == b.epsilon && a.map == b.map && a.bifunction == b.bifunction &&
         a.potential == b.potential && a.epsilons == b.epsilons && a.caristi_eps == b.caristi_eps;
}

DistanceSpec DistanceDescriptor::build(SpacePtr space) const {
  if (family == Family::symmetrized) {
    if (!inner) throw Error(ErrorKind::BadParameter, "symmetrized distance needs an inner distance");
    return symmetrize(inner->build(std::move(space)), w_right, w_left);
  }
  BuiltinParams params;
  params.p = p;
  params.matrix = matrix;
  return make_builtin(family, params, std::move(space));
}

PerturbationSchedule ScheduleDescriptor::build() const {
  if (gamma) return PerturbationSchedule::geometric(epsilon, delta0, *gamma);
  return PerturbationSchedule::explicit_list(epsilon, deltas);
}

Instance build_instance(const ProblemFile& problem) {
  SpacePtr space = problem.coords ? make_space(problem.points, *problem.coords)
                                  : make_space(problem.points);
  DistanceSpec distance = problem.distance.build(space);
  return {std::move(space), std::move(distance)};
}

ExtendedObjective build_objective(const ProblemFile& problem) {
  if (!problem.objective) invalid("objective", "section is required by this command");
  return ExtendedObjective(*problem.objective);
}

PotentialFn build_potential(const ProblemFile& problem) {
  if (!problem.potential) invalid("potential", "section is required by this command");
  return PotentialFn(*problem.potential);
}

SetValuedMap build_map(const ProblemFile& problem, const PointSpace& space) {
  if (!problem.map) invalid("map", "section is required by this command");
  std::vector<std::pair<PointIndex, PointIndex>> graph;
  for (const auto& [x, y] : *problem.map) graph.emplace_back(space.index_of(x), space.index_of(y));
  return SetValuedMap(space.size(), std::move(graph));
}

Bifunction build_bifunction(const ProblemFile& problem) {
  if (!problem.bifunction) invalid("bifunction", "section is required by this command");
  const std::size_t n = problem.points.size();
  std::vector<double> flat;
  if (problem.bifunction->size() != n) invalid("bifunction", "expected " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = (*problem.bifunction)[i];
    if (row.size() != n) invalid("bifunction", "row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Bifunction(n, std::move(flat));
}

json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json to_json(const ProblemFile& p) {
  json doc;
  doc["meta"] = {{"name", p.name}, {"seed", p.seed}};
  json space = {{"points", p.points}};
  if (p.coords) {
    json coords = json::object();
    for (std::size_t i = 0; i < p.points.size(); ++i) coords[p.points[i]] = (*p.coords)[i];
    space["coords"] = coords;
  }
  doc["space"] = space;
  doc["distance"] = distance_to_json(p.distance);
  if (p.objective) doc["objective"] = point_table_to_json(*p.objective, p.points);
  if (p.schedule) {
    json s = {{"epsilon", p.schedule->epsilon}};
    if (p.schedule->gamma) {
      s["delta0"] = p.schedule->delta0;
      s["gamma"] = *p.schedule->gamma;
    } else {
      s["deltas"] = p.schedule->deltas;
    }
    doc["schedule"] = s;
  }
  if (p.z0) doc["z0"] = *p.z0;
  if (p.epsilon) doc["epsilon"] = *p.epsilon;
  if (p.map) {
    json pairs = json::array();
    for (const auto& [x, y] : *p.map) pairs.push_back({x, y});
    doc["map"] = pairs;
  }
  if (p.bifunction) doc["bifunction"] = *p.bifunction;
  if (p.potential) doc["potential"] = point_table_to_json(*p.potential, p.points);
  if (p.epsilons) doc["epsilons"] = *p.epsilons;
  if (p.caristi_eps) doc["caristi_eps"] = *p.caristi_eps;
  return doc;
}

ProblemFile problem_from_json(const json& doc) {
  if (!doc.is_object()) parse_fail("", "top level must be an object");
  ProblemFile p;
  if (auto it = doc.find("meta"); it != doc.end()) {
    if (auto n = it->find("name"); n != it->end()) {
      if (!n->is_string()) parse_fail("meta.name", "expected a string");
      p.name = n->get<std::string>();
    }
    if (auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_unsigned()) parse_fail("meta.seed", "expected a nonnegative integer");
      p.seed = s->get<std::uint64_t>();
    }
  }

  const json& space = require(doc, "space", "");
  const json& points = require(space, "points", "space");
  if (!points.is_array()) parse_fail("space.points", "expected an array of ids");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_string()) parse_fail("space.points[" + std::to_string(i) + "]", "expected a string");
    p.points.push_back(points[i].get<std::string>());
  }
  if (auto c = space.find("coords"); c != space.end()) {
    if (!c->is_object()) parse_fail("space.coords", "expected an object keyed by point id");
    std::vector<std::vector<double>> coords;
    for (const auto& id : p.points) {
      auto it = c->find(id);
      if (it == c->end()) invalid("space.coords", "no coordinates for point '" + id + "'");
      coords.push_back(read_reals(*it, "space.coords." + id));
    }
    if (c->size() != p.points.size()) invalid("space.coords", "coordinates given for unknown points");
    p.coords = std::move(coords);
  }
  p.distance = read_distance(require(doc, "distance", ""), "distance");

  if (auto it = doc.find("objective"); it != doc.end()) p.objective = read_point_table(*it, "objective", p.points);
  if (auto it = doc.find("schedule"); it != doc.end()) {
    ScheduleDescriptor s;
    s.epsilon = read_real(require(*it, "epsilon", "schedule"), "schedule.epsilon");
    if (it->contains("gamma")) {
      s.delta0 = read_real(require(*it, "delta0", "schedule"), "schedule.delta0");
      s.gamma = read_real(it->at("gamma"), "schedule.gamma");
    } else {
      s.deltas = read_reals(require(*it, "deltas", "schedule"), "schedule.deltas");
      if (!s.deltas.empty()) s.delta0 = s.deltas.front();
    }
    p.schedule = s;
  }
  if (auto it = doc.find("z0"); it != doc.end()) {
    if (!it->is_string()) parse_fail("z0", "expected a point id");
    p.z0 = it->get<std::string>();
  }
  if (auto it = doc.find("epsilon"); it != doc.end()) p.epsilon = read_real(*it, "epsilon");
  if (auto it = doc.find("map"); it != doc.end()) {
    if (!it->is_array()) parse_fail("map", "expected an array of [x, y] pairs");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        parse_fail("map[" + std::to_string(i) + "]", "expected a pair of point ids");
      }
      pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    p.map = std::move(pairs);
  }
  if (auto it = doc.find("bifunction"); it != doc.end()) p.bifunction = read_matrix(*it, "bifunction");
  if (auto it = doc.find("potential"); it != doc.end()) p.potential = read_point_table(*it, "potential", p.points);
  if (auto it = doc.find("epsilons"); it != doc.end()) p.epsilons = read_reals(*it, "epsilons");
  if (auto it = doc.find("caristi_eps"); it != doc.end()) p.caristi_eps = read_real(*it, "caristi_eps");

  // Module-level invariants, checked once at parse time.
  const auto check = [](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ValidationError || e.kind() == ErrorKind::ParseError) throw;
      invalid(section, e.what());
    }
  };
  Instance inst{nullptr, make_table(make_space({"_"}), {{0.0}})};
  check("space/distance", [&] { inst = build_instance(p); });
  if (p.objective) check("objective", [&] { build_objective(p); });
  if (p.schedule) check("schedule", [&] { p.schedule->build(); });
  if (p.z0) check("z0", [&] { inst.space->index_of(*p.z0); });
  if (p.epsilon && !(*p.epsilon > 0.0)) invalid("epsilon", "must be positive");
  if (p.map) check("map", [&] { build_map(p, *inst.space); });
  if (p.bifunction) check("bifunction", [&] { build_bifunction(p); });
  if (p.potential) check("potential", [&] { build_potential(p); });
  if (p.epsilons) {
    for (double e : *p.epsilons) {
      if (!(e > 0.0)) invalid("epsilons", "every entry must be positive");
    }
  }
  return p;
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  return problem_from_json(doc);
}

ProblemFile parse_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str());
}

std::string canonical_text(const ProblemFile& problem) { return to_json(problem).dump(); }

std::string digest(const ProblemFile& problem) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(problem)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vpe

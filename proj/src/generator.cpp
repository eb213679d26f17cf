#include "vpe/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "vpe/error.hpp"

namespace vpe {
namespace {

/// Portable uniform draws: the standard distributions are not specified
/// bit-for-bit across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// (0, hi]
  double positive(double hi) { return hi * (1.0 - unit()); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::vector<double>> random_coords(Rng& rng, std::size_t n, Family family) {
  std::vector<std::vector<double>> coords(n);
  for (auto& c : coords) {
    switch (family) {
      case Family::kl: {
        c = {rng.positive(1.0), rng.positive(1.0), rng.positive(1.0)};
        const double total = c[0] + c[1] + c[2];
        for (double& v : c) v /= total;
        break;
      }
      case Family::itakura_saito:
        c = {rng.positive(10.0), rng.positive(10.0)};
        break;
      default:
        c = {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
        break;
    }
  }
  return coords;
}

}  // namespace

std::string_view to_string(GenerateMode mode) {
  switch (mode) {
    case GenerateMode::bp: return "bp";
    case GenerateMode::ekeland: return "ekeland";
    case GenerateMode::caristi: return "caristi";
    case GenerateMode::ep: return "ep";
  }
  return "unknown";
}

std::optional<GenerateMode> mode_from_string(std::string_view name) {
  for (auto m : {GenerateMode::bp, GenerateMode::ekeland, GenerateMode::caristi, GenerateMode::ep}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

ProblemFile generate_instance(std::uint64_t seed, std::size_t size, Family family, GenerateMode mode) {
  if (size < 2) throw Error(ErrorKind::BadParameter, "instance size must be at least 2");
  if (family == Family::symmetrized || family == Family::product) {
    throw Error(ErrorKind::BadParameter, "cannot generate a derived distance family");
  }
  Rng rng(seed);
  ProblemFile p;
  p.seed = seed;
  p.name = std::string(to_string(mode)) + "-" + std::string(to_string(family)) + "-" +
           std::to_string(size) + "-" + std::to_string(seed);
  for (std::size_t i = 0; i < size; ++i) p.points.push_back("p" + std::to_string(i));

  p.distance.family = family;
  if (family == Family::table) {
    p.distance.matrix.assign(size, std::vector<double>(size, 0.0));
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        if (x != y) p.distance.matrix[x][y] = rng.positive(10.0);
      }
    }
  } else {
    p.coords = random_coords(rng, size, family);
    if (family == Family::lp_frac) p.distance.p = 0.5;
  }
  const Instance inst = build_instance(p);
  const DistanceSpec& d = inst.distance;

  std::vector<double> values(size);
  for (double& v : values) v = rng.uniform(0.0, 100.0);

  switch (mode) {
    case GenerateMode::bp:
    case GenerateMode::ekeland: {
      const double inf = *std::min_element(values.begin(), values.end());
      const std::size_t z0 = rng.index(size);
      const double epsilon = (values[z0] - inf) + rng.positive(10.0);
      p.objective = values;
      p.z0 = p.points[z0];
      if (mode == GenerateMode::bp) {
        p.schedule = ScheduleDescriptor{epsilon, rng.uniform(0.05, 2.0), 0.5, {}};
      } else {
        p.epsilon = epsilon;
      }
      break;
    }
    case GenerateMode::caristi: {
      std::vector<std::pair<std::string, std::string>> graph;
      for (std::size_t x = 0; x < size; ++x) {
        std::vector<std::size_t> descent;
        for (std::size_t y = 0; y < size; ++y) {
          if (values[y] <= values[x] - d(x, y)) descent.push_back(y);
        }
        std::vector<std::size_t> image;
        for (std::size_t y : descent) {
          if (rng.coin()) image.push_back(y);
        }
        if (image.empty()) image.push_back(descent[rng.index(descent.size())]);
        for (std::size_t y : image) graph.emplace_back(p.points[x], p.points[y]);
      }
      p.potential = values;
      p.map = std::move(graph);
      break;
    }
    case GenerateMode::ep: {
      std::vector<std::vector<double>> f(size, std::vector<double>(size));
      for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
          f[x][y] = (values[y] - values[x]) + (rng.coin() ? rng.uniform(0.0, 5.0) : 0.0);
        }
      }
      p.potential = values;
      p.bifunction = std::move(f);
      break;
    }
  }
  return p;
}

}  // namespace vpe

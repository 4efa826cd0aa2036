#include <random>

#include "epr/errors.hpp"
#include "epr/instance.hpp"

namespace epr {

Family parse_family(const std::string& name) {
  if (name == "random_gnp" || name == "gnp") return Family::random_gnp;
  if (name == "cycle") return Family::cycle;
  if (name == "complete") return Family::complete;
  if (name == "bipartite_random" || name == "bipartite") return Family::bipartite_random;
  if (name == "star") return Family::star;
  throw InputError("unknown family '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::random_gnp: return "random_gnp";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::bipartite_random: return "bipartite_random";
    case Family::star: return "star";
  }
  return "unknown";
}

WeightSpec WeightSpec::parse(const std::string& text) {
  WeightSpec spec;
  if (text == "unit") return spec;
  auto fields = std::vector<std::string>{};
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    fields.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  try {
    if (fields[0] == "uniform" && fields.size() == 3) {
      spec.kind = Kind::uniform;
      spec.low = std::stod(fields[1]);
      spec.high = std::stod(fields[2]);
      if (!(spec.low > 0 && spec.low <= spec.high)) throw InputError("uniform weights need 0 < lo <= hi");
      return spec;
    }
    if (fields[0] == "int" && fields.size() == 2) {
      spec.kind = Kind::integer;
      spec.max_integer = std::stoi(fields[1]);
      if (spec.max_integer < 1) throw InputError("integer weights need W >= 1");
      return spec;
    }
  } catch (const std::logic_error&) {
  }
  throw InputError("invalid weight spec '" + text + "' (expected unit, uniform:lo:hi or int:W)");
}

namespace {

class EdgeSink {
 public:
  EdgeSink(const WeightSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  void add(int u, int v) {
    Edge e{u, v, 1.0, Rational(1)};
    switch (spec_.kind) {
      case WeightSpec::Kind::unit:
        break;
      case WeightSpec::Kind::uniform:
        e.weight = std::uniform_real_distribution<double>(spec_.low, spec_.high)(rng_);
        e.exact_weight = from_double(e.weight);
        break;
      case WeightSpec::Kind::integer: {
        int w = std::uniform_int_distribution<int>(1, spec_.max_integer)(rng_);
        e.weight = w;
        e.exact_weight = Rational(w);
        break;
      }
    }
    edges_.push_back(std::move(e));
  }

  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

  std::vector<Edge> take() { return std::move(edges_); }

 private:
  WeightSpec spec_;
  std::mt19937_64 rng_;
  std::vector<Edge> edges_;
};

}  // namespace

WeightedGraph generate(Family family, const GeneratorParams& params) {
  if (params.size < 1) throw InputError("generator size must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  EdgeSink sink(params.weights, params.seed);
  int n = params.size;
  switch (family) {
    case Family::random_gnp:
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (sink.coin(params.p)) sink.add(u, v);
      break;
    case Family::cycle:
      if (n < 3) throw InputError("cycle length must be >= 3");
      for (int u = 0; u < n; ++u) sink.add(std::min(u, (u + 1) % n), std::max(u, (u + 1) % n));
      break;
    case Family::complete:
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) sink.add(u, v);
      break;
    case Family::star:
      for (int leaf = 1; leaf <= params.size; ++leaf) sink.add(0, leaf);
      n = params.size + 1;
      break;
    case Family::bipartite_random: {
      if (params.size_b < 1) throw InputError("bipartite_random needs both side sizes >= 1");
      n = params.size + params.size_b;
      for (int u = 0; u < params.size; ++u)
        for (int v = params.size; v < n; ++v)
          if (sink.coin(params.p)) sink.add(u, v);
      break;
    }
  }
  return WeightedGraph(n, sink.take());
}

}  // namespace epr

#include "epr/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epr/errors.hpp"

namespace epr {

WeightedGraph::WeightedGraph(int num_vertices, std::vector<Edge> edges) : n_(num_vertices) {
  if (num_vertices < 0) throw InputError("vertex count must be nonnegative");
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has a vertex outside [0, " + std::to_string(n_) + ")");
    }
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (e.exact_weight < 0 || e.weight < 0) {
      throw InputError("negative weight on edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw InputError("duplicate edge (" + std::to_string(edges[i].u) + ", " +
                       std::to_string(edges[i].v) + ")");
    }
  }
  std::erase_if(edges, [](const Edge& e) { return e.exact_weight == 0; });
  edges_ = std::move(edges);
}

WeightedGraph WeightedGraph::from_weights(int num_vertices,
                                          const std::vector<std::tuple<int, int, double>>& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v, w] : edges) {
    if (!(w >= 0)) throw InputError("negative weight on edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    list.push_back({u, v, w, from_double(w)});
  }
  return WeightedGraph(num_vertices, std::move(list));
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const Edge& e : edges_) total += e.weight;
  return total;
}

Rational WeightedGraph::exact_total_weight() const {
  Rational total = 0;
  for (const Edge& e : edges_) total += e.exact_weight;
  return total;
}

const Edge* WeightedGraph::find_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                             [](const Edge& e, const std::pair<int, int>& key) {
                               return std::tie(e.u, e.v) < std::tie(key.first, key.second);
                             });
  if (it == edges_.end() || it->u != u || it->v != v) return nullptr;
  return &*it;
}

std::optional<double> WeightedGraph::weight(int u, int v) const {
  if (const Edge* e = find_edge(u, v)) return e->weight;
  return std::nullopt;
}

std::vector<std::vector<int>> WeightedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
  }
  return true;
}

bool QubitFrame::contains(int qubit) const {
  return std::binary_search(y_conjugated.begin(), y_conjugated.end(), qubit);
}

std::optional<Bipartition> detect_bipartition(const WeightedGraph& g) {
  const int n = g.num_vertices();
  const auto adj = g.adjacency();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    std::queue<int> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      int u = frontier.front();
      frontier.pop();
      for (int v : adj[u]) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          frontier.push(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  for (int v = 0; v < n; ++v) (color[v] == 0 ? b.side_a : b.side_b).push_back(v);
  return b;
}

bool is_valid_bipartition(const WeightedGraph& g, const Bipartition& b) {
  const int n = g.num_vertices();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (int v : b.side_a) {
    if (v < 0 || v >= n || side[v] != -1) return false;
    side[v] = 0;
  }
  for (int v : b.side_b) {
    if (v < 0 || v >= n || side[v] != -1) return false;
    side[v] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) != 0) return false;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return side[e.u] != side[e.v]; });
}

QmcReduction qmc_to_epr(const WeightedGraph& g, const Bipartition& b) {
  if (!is_valid_bipartition(g, b)) throw InputError("qmc_to_epr requires a valid bipartition of the instance");
  QubitFrame frame{b.side_a};
  std::sort(frame.y_conjugated.begin(), frame.y_conjugated.end());
  return {g, std::move(frame)};
}

// ---------------------------------------------------------------------------

InstanceFormat parse_instance_format(const std::string& name) {
  if (name == "edgelist") return InstanceFormat::edgelist;
  if (name == "json") return InstanceFormat::json;
  throw InputError("unknown instance format '" + name + "' (expected edgelist|json)");
}

namespace {

std::vector<std::string> split_whitespace(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string token; in >> token;) tokens.push_back(token);
  return tokens;
}

int parse_index(const std::string& token, int line, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

std::string format_weight(const Edge& e) {
  if (denominator(e.exact_weight) <= 1000000) return to_string(e.exact_weight);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", e.weight);
  return buffer;
}

}  // namespace

WeightedGraph parse_edgelist(std::istream& in) {
  std::optional<int> n;
  std::vector<Edge> edges;
  std::vector<int> edge_lines;
  int line_number = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tokens = split_whitespace(line);
    if (!n) {
      if (tokens.size() != 1) throw ParseError(line_number, "expected vertex count");
      n = parse_index(tokens[0], line_number, "vertex count");
      if (*n < 0) throw ParseError(line_number, "vertex count must be nonnegative");
      continue;
    }
    if (tokens.size() != 3) throw ParseError(line_number, "expected 'i j w'");
    Edge e;
    e.u = parse_index(tokens[0], line_number, "vertex");
    e.v = parse_index(tokens[1], line_number, "vertex");
    try {
      e.exact_weight = parse_rational(tokens[2]);
    } catch (const std::invalid_argument& err) {
      throw ParseError(line_number, err.what());
    }
    e.weight = to_double(e.exact_weight);
    if (e.u == e.v) throw ParseError(line_number, "self-loop at vertex " + std::to_string(e.u));
    if (e.exact_weight < 0) throw ParseError(line_number, "negative weight " + tokens[2]);
    if (e.u < 0 || e.v < 0 || e.u >= *n || e.v >= *n) {
      throw ParseError(line_number, "vertex index out of range [0, " + std::to_string(*n) + ")");
    }
    edges.push_back(std::move(e));
    edge_lines.push_back(line_number);
  }
  if (!n) throw ParseError(line_number, "missing vertex count");
  try {
    return WeightedGraph(*n, std::move(edges));
  } catch (const InputError& err) {
    throw ParseError(line_number, err.what());
  }
}

WeightedGraph parse_instance_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw InputError(std::string("invalid JSON instance: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw InputError("JSON instance needs keys 'n' and 'edges'");
  }
  std::vector<Edge> edges;
  for (const auto& item : doc.at("edges")) {
    if (!item.is_array() || item.size() != 3) throw InputError("each JSON edge must be [i, j, w]");
    Edge e;
    e.u = item[0].get<int>();
    e.v = item[1].get<int>();
    if (item[2].is_string()) {
      e.exact_weight = parse_rational(item[2].get<std::string>());
      e.weight = to_double(e.exact_weight);
    } else {
      e.weight = item[2].get<double>();
      if (item[2].is_number_integer()) {
        e.exact_weight = Rational(item[2].get<long long>());
      } else {
        e.exact_weight = parse_rational(item[2].dump());
      }
    }
    edges.push_back(std::move(e));
  }
  return WeightedGraph(doc.at("n").get<int>(), std::move(edges));
}

WeightedGraph load_instance(const std::filesystem::path& path, std::optional<InstanceFormat> format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path.string());
  if (!format) format = path.extension() == ".json" ? InstanceFormat::json : InstanceFormat::edgelist;
  return *format == InstanceFormat::json ? parse_instance_json(in) : parse_edgelist(in);
}

void write_edgelist(std::ostream& out, const WeightedGraph& g) {
  out << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_weight(e) << '\n';
}

void write_instance_json(std::ostream& out, const WeightedGraph& g) {
  nlohmann::json doc;
  doc["n"] = g.num_vertices();
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    if (denominator(e.exact_weight) == 1 || denominator(e.exact_weight) > 1000000) {
      doc["edges"].push_back({e.u, e.v, e.weight});
    } else {
      doc["edges"].push_back({e.u, e.v, to_string(e.exact_weight)});
    }
  }
  out << doc.dump() << '\n';
}

void save_instance(const std::filesystem::path& path, const WeightedGraph& g, InstanceFormat format) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file " + path.string());
  if (format == InstanceFormat::json) {
    write_instance_json(out, g);
  } else {
    write_edgelist(out, g);
  }
}

}  // namespace epr

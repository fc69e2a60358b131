#include "bogrape/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "bogrape/error.hpp"

namespace bogrape {

using nlohmann::json;

json graph_to_json(const AttributedGraph& g) {
  json edges = json::array();
  for (auto [u, v] : adjacency_slots(g.num_nodes(), g.directed()))
    if (g.has_edge(u, v)) edges.push_back({u, v});
  json features = json::array();
  for (int v = 0; v < g.num_nodes(); ++v) {
    json row = json::array();
    for (int m = 0; m < g.num_features(); ++m) row.push_back(g.features()(v, m) ? 1 : 0);
    features.push_back(row);
  }
  return json{{"directed", g.directed()},
              {"n", g.num_nodes()},
              {"edges", edges},
              {"features", features},
              {"num_labels", g.num_labels()}};
}

AttributedGraph graph_from_json(const json& j) {
  try {
    const bool directed = j.at("directed").get<bool>();
    const int n = j.at("n").get<int>();
    const int num_labels = j.at("num_labels").get<int>();
    if (n < 1) throw Error(ErrorCode::ParseError, "graph object needs n >= 1");
    std::vector<std::vector<int>> adjacency(n, std::vector<int>(n, 0));
    for (const auto& e : j.at("edges")) {
      const int u = e.at(0).get<int>(), v = e.at(1).get<int>();
      if (u < 0 || u >= n || v < 0 || v >= n) throw Error(ErrorCode::ParseError, "edge endpoint out of range");
      adjacency[u][v] = 1;
      if (!directed) adjacency[v][u] = 1;
    }
    auto features = j.at("features").get<std::vector<std::vector<int>>>();
    return build_graph(adjacency, features, directed, num_labels);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed graph object: ") + e.what());
  }
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<AttributedGraph> read_graph_file(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  std::vector<AttributedGraph> graphs;
  json whole = json::parse(text, nullptr, false);
  if (!whole.is_discarded()) {
    if (whole.is_array()) {
      for (const auto& g : whole) graphs.push_back(graph_from_json(g));
    } else {
      graphs.push_back(graph_from_json(whole));
    }
    return graphs;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, path.string() + ": bad graph line");
    graphs.push_back(graph_from_json(j));
  }
  return graphs;
}

void write_graph_file(const std::filesystem::path& path, const std::vector<AttributedGraph>& graphs) {
  std::string text;
  for (const auto& g : graphs) text += graph_to_json(g).dump() + "\n";
  write_text_file(path, text);
}

void append_graph_record(const std::filesystem::path& path, const AttributedGraph& g, int proposal_id) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::IoError, "cannot append to " + path.string());
  json j = graph_to_json(g);
  j["proposal_id"] = proposal_id;
  out << j.dump() << "\n";
}

std::vector<LabeledGraph> read_dataset(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  if (!j.is_array()) throw Error(ErrorCode::ParseError, path.string() + ": dataset must be a JSON array");
  std::vector<LabeledGraph> data;
  for (const auto& rec : j) {
    try {
      data.push_back({graph_from_json(rec.at("graph")), rec.at("y").get<double>()});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
  }
  return data;
}

void write_dataset(const std::filesystem::path& path, const std::vector<LabeledGraph>& data) {
  json j = json::array();
  for (const auto& rec : data) j.push_back({{"graph", graph_to_json(rec.graph)}, {"y", rec.y}});
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace bogrape

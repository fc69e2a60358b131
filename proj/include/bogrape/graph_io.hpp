#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bogrape/graph.hpp"

namespace bogrape {

// Graph objects: {"directed", "n", "edges": [[u,v],...], "features": [[0/1,...],...],
// "num_labels"}. Undirected edges are listed once. Extra keys are ignored
// on read so records such as {"proposal_id", ...graph fields} stay readable.

nlohmann::json graph_to_json(const AttributedGraph& g);
AttributedGraph graph_from_json(const nlohmann::json& j);

/// Accepts a single graph object, a JSON array of graph objects, or one
/// graph object per line.
std::vector<AttributedGraph> read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const std::vector<AttributedGraph>& graphs);
void append_graph_record(const std::filesystem::path& path, const AttributedGraph& g, int proposal_id);

struct LabeledGraph {
  AttributedGraph graph;
  double y = 0.0;
};

/// Dataset file: JSON array of {"graph": {...}, "y": real}.
std::vector<LabeledGraph> read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const std::vector<LabeledGraph>& data);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bogrape

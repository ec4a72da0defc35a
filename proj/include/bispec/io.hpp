#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bispec/error.hpp"
#include "bispec/graph.hpp"

namespace bispec {

using json = nlohmann::json;

inline json graph_to_json(const BiregularGraph& g) {
  json e = json::array();
  for (auto [i, j] : g.edges()) e.push_back({i, j});
  return {{"n", g.n()}, {"m", g.m()}, {"d1", g.d1()}, {"d2", g.d2()}, {"edges", e}};
}

inline BiregularGraph graph_from_json(const json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return new_biregular(j.at("n").get<int>(), j.at("m").get<int>(), j.at("d1").get<int>(),
                         j.at("d2").get<int>(), std::move(edges));
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::Io, std::string("malformed graph document: ") + ex.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::Io, path + ": " + ex.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

// The optional seed is provenance only; loading ignores it.
inline void save_graph(const BiregularGraph& g, const std::string& path,
                       std::optional<std::uint64_t> seed = std::nullopt) {
  json j = graph_to_json(g);
  if (seed) j["seed"] = *seed;
  write_text_file(path, j.dump() + "\n");
}

inline BiregularGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

}  // namespace bispec

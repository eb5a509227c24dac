#include "causaltree/tree_io.hpp"

#include <json.hpp>

#include "causaltree/numfmt.hpp"

namespace causaltree {

namespace {

using nlohmann::json;

json node_to_json(const PTree& tree, int id) {
  const PNode& nd = tree.node(id);
  json j;
  j["id"] = id;
  if (nd.is_root()) {
    j["variable"] = "O";
    j["value"] = 1;
  } else {
    j["variable"] = tree.space().names[nd.statement.variable];
    j["value"] = nd.statement.value;
  }
  json theta = json::array();
  for (double t : nd.theta) theta.push_back(double_to_string(t));
  j["theta"] = std::move(theta);
  json children = json::array();
  for (int c : nd.children) children.push_back(node_to_json(tree, c));
  j["children"] = std::move(children);
  return j;
}

void node_from_json(const json& j, const VariableSpace& space, std::vector<PNode>& nodes,
                    bool root) {
  if (!j.is_object() || !j.contains("id") || !j.contains("variable") || !j.contains("theta") ||
      !j.contains("children"))
    throw ParseError("tree document node is missing a required field");
  const int id = j.at("id").get<int>();
  if (id < 0) throw ParseError("negative node id in tree document");
  if (id >= static_cast<int>(nodes.size())) nodes.resize(id + 1);

  PNode nd;
  const std::string var = j.at("variable").get<std::string>();
  if (var == "O") {
    if (!root) throw ParseError("dummy root variable on a non-root node");
  } else {
    int index = -1;
    for (int v = 0; v < space.size(); ++v)
      if (space.names[v] == var) index = v;
    if (index < 0) throw ParseError("unknown variable name '" + var + "' in tree document");
    nd.statement = Statement{index, j.at("value").get<int>()};
  }
  for (const json& t : j.at("theta")) nd.theta.push_back(string_to_double(t.get<std::string>()));
  for (const json& c : j.at("children")) {
    nd.children.push_back(c.at("id").get<int>());
    node_from_json(c, space, nodes, false);
  }
  nodes[id] = std::move(nd);
}

}  // namespace

std::string tree_to_document(const PTree& tree) {
  json doc;
  doc["space"] = {{"names", tree.space().names},
                  {"cardinalities", tree.space().cardinalities}};
  doc["root"] = node_to_json(tree, 0);
  return doc.dump(2) + "\n";
}

PTree tree_from_document(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("space") || !doc.contains("root"))
    throw ParseError("malformed tree document");
  VariableSpace space;
  space.names = doc.at("space").at("names").get<std::vector<std::string>>();
  space.cardinalities = doc.at("space").at("cardinalities").get<std::vector<int>>();

  std::vector<PNode> nodes;
  node_from_json(doc.at("root"), space, nodes, true);
  if (doc.at("root").at("id").get<int>() != 0) throw ParseError("root id must be 0");
  return PTree(std::move(space), std::move(nodes));
}

}  // namespace causaltree

#include "chebtree/serialize.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace chebtree {

namespace {

using json = nlohmann::json;

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::uint8_t* bytes, std::size_t len) {
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= len; i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out.push_back(kB64Alphabet[v & 63]);
  }
  if (i < len) {
    std::uint32_t v = bytes[i] << 16;
    const bool two = i + 1 < len;
    if (two) v |= bytes[i + 1] << 8;
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(two ? kB64Alphabet[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  std::array<int, 256> rev;
  rev.fill(-1);
  for (int i = 0; i < 64; ++i) rev[static_cast<unsigned char>(kB64Alphabet[i])] = i;
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  std::uint32_t acc = 0;
  int bits = 0;
  for (char ch : text) {
    if (ch == '=') break;
    const int v = rev[static_cast<unsigned char>(ch)];
    if (v < 0) throw InvalidArgumentError("base64: invalid character");
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

std::string encode_values(const NdArray& values) {
  std::vector<std::uint8_t> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto u = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<std::uint8_t>(u >> (8 * b));
  }
  return base64_encode(bytes.data(), bytes.size());
}

std::vector<double> decode_values(const std::string& text, std::size_t expected) {
  const std::vector<std::uint8_t> bytes = base64_decode(text);
  if (bytes.size() != expected * 8)
    throw InvalidArgumentError("from_json: payload length mismatch");
  std::vector<double> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    std::uint64_t u = 0;
    for (int b = 7; b >= 0; --b) u = (u << 8) | bytes[i * 8 + b];
    out[i] = std::bit_cast<double>(u);
  }
  return out;
}

json box_to_json(const Box& box) {
  json out = json::array();
  for (std::size_t j = 0; j < box.dim(); ++j) out.push_back({box[j].lo, box[j].hi});
  return out;
}

Box box_from_json(const json& j) {
  std::vector<Interval> ivs;
  for (const auto& e : j) ivs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return Box(std::move(ivs));
}

void flatten(const TreeNode& node, std::vector<const TreeNode*>& order) {
  order.push_back(&node);
  if (!node.is_leaf()) {
    flatten(*node.child[0], order);
    flatten(*node.child[1], order);
  }
}

}  // namespace

std::string to_json(const PUFun& fun) {
  if (fun.domain())
    throw InvalidArgumentError("to_json: nonrectangular approximants are not serializable");
  json doc;
  doc["omega"] = box_to_json(fun.omega());
  const BuildParams& p = fun.params();
  doc["params"] = {{"samples_per_dim", p.samples_per_dim},
                   {"overlap", p.overlap},
                   {"tol", p.tol},
                   {"max_depth", p.max_depth},
                   {"max_leaves", p.max_leaves}};

  std::vector<const TreeNode*> order;
  flatten(fun.root(), order);
  std::unordered_map<const TreeNode*, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;

  json nodes = json::array();
  for (const TreeNode* node : order) {
    json jn;
    jn["zone"] = box_to_json(node->zone);
    jn["domain"] = box_to_json(node->domain);
    jn["isdone"] = node->isdone;
    if (node->is_leaf()) {
      jn["splitdim"] = nullptr;
      jn["children"] = nullptr;
      if (const TensorLeaf* t = node->tensor()) {
        json payload;
        payload["degrees"] = t->interp.coeffs.degrees();
        payload["values"] = encode_values(t->values);
        jn["payload"] = std::move(payload);
      } else {
        jn["payload"] = nullptr;
      }
    } else {
      jn["splitdim"] = node->splitdim;
      jn["children"] = {index.at(node->child[0].get()), index.at(node->child[1].get())};
      jn["payload"] = nullptr;
    }
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump();
}

PUFun from_json(const std::string& text) {
  const json doc = json::parse(text);
  const Box omega = box_from_json(doc.at("omega"));
  BuildParams params;
  const json& jp = doc.at("params");
  params.samples_per_dim = jp.at("samples_per_dim").get<std::size_t>();
  params.overlap = jp.at("overlap").get<double>();
  params.tol = jp.at("tol").get<double>();
  params.max_depth = jp.at("max_depth").get<std::size_t>();
  params.max_leaves = jp.at("max_leaves").get<std::size_t>();

  const json& jnodes = doc.at("nodes");
  std::vector<std::unique_ptr<TreeNode>> nodes(jnodes.size());
  for (std::size_t i = 0; i < jnodes.size(); ++i) nodes[i] = std::make_unique<TreeNode>();

  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const json& jn = jnodes[i];
    TreeNode& node = *nodes[i];
    node.zone = box_from_json(jn.at("zone"));
    node.domain = box_from_json(jn.at("domain"));
    node.isdone = jn.at("isdone").get<std::vector<bool>>();
    if (!jn.at("children").is_null()) {
      node.splitdim = jn.at("splitdim").get<int>();
    } else if (!jn.at("payload").is_null()) {
      const json& jpay = jn.at("payload");
      const auto degrees = jpay.at("degrees").get<std::vector<std::size_t>>();
      std::vector<std::size_t> sizes(degrees);
      for (auto& s : sizes) ++s;
      NdArray values(sizes, decode_values(jpay.at("values").get<std::string>(),
                                          NdArray::count(sizes)));
      CoeffTensor coeffs = values_to_coeffs(values);
      std::vector<ChebGrid1D> grid;
      grid.reserve(sizes.size());
      for (std::size_t j = 0; j < sizes.size(); ++j)
        grid.push_back(sizes[j] >= 2 ? cheb_points(sizes[j], node.domain[j])
                                     : midpoint_grid(node.domain[j]));
      node.leaf = TensorLeaf{std::move(grid), std::move(values),
                             ChebInterpolant{std::move(coeffs), node.domain}};
    }
  }
  // wire children bottom-up so subtrees are complete before being moved
  for (std::size_t i = jnodes.size(); i-- > 0;) {
    const json& jn = jnodes[i];
    if (jn.at("children").is_null()) continue;
    const std::size_t c0 = jn.at("children").at(0).get<std::size_t>();
    const std::size_t c1 = jn.at("children").at(1).get<std::size_t>();
    if (c0 <= i || c1 <= i || c0 >= jnodes.size() || c1 >= jnodes.size())
      throw InvalidArgumentError("from_json: bad child indices");
    nodes[i]->child[0] = std::move(nodes.at(c0));
    nodes[i]->child[1] = std::move(nodes.at(c1));
  }
  if (nodes.empty() || !nodes[0])
    throw InvalidArgumentError("from_json: missing root node");
  return PUFun(std::move(nodes[0]), params, omega);
}

}  // namespace chebtree

#ifndef CHEBTREE_SERIALIZE_HPP
#define CHEBTREE_SERIALIZE_HPP

#include <string>

#include "chebtree/tree.hpp"

namespace chebtree {

/// JSON document for a rectangular approximant:
/// {omega, params, nodes:[{zone, domain, isdone, splitdim|null,
///  payload:{degrees, values}|null, children:[i0,i1]|null}]}
/// with leaf values flattened row-major and base64-encoded as little-endian
/// 64-bit floats; the round trip is bit-exact on values.
std::string to_json(const PUFun& fun);

PUFun from_json(const std::string& text);

}  // namespace chebtree

#endif  // CHEBTREE_SERIALIZE_HPP

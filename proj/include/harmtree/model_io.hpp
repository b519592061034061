#pragma once

// Model-definition files (JSON). Rationals are "p/q" strings.
//
//   {"d": 3,
//    "root": {"u0": "0", "children": ["1", "-1", "0"]},
//    "splitter": {"kind": "equal_split" | "double_half" | "random" | "table",
//                 "seed": 7, "magnitude": 9, "denominator": 4,
//                 "table": [{"value": "1", "parent": "0", "children": ["3/2", "3/2"]}]},
//    "K": 10}

#include <string>

#include "harmtree/model.hpp"

namespace harmtree {

struct ModelDefinition {
  int d = 3;
  RootData root;
  Splitter splitter;
  int K = 0;
};

/// Throws parse_error on malformed input, invalid_config on bad values.
ModelDefinition parse_model_definition(const std::string& text);
ModelDefinition load_model_definition(const std::string& path);

/// Custom splitters have no file form and throw representation_unsupported.
std::string to_json(const ModelDefinition& def);

HarmonicModel build_model(const ModelDefinition& def, Representation repr = Representation::enumerated);

}  // namespace harmtree

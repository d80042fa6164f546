#pragma once

// Plain-text network description.
//
//   # comment
//   layer1 <n>
//   layer2 <m>
//   e1 <i> <j> [w]        intralayer edge in layer 1 (weight defaults to 1)
//   e2 <i> <j> [w]
//   pattern all | k2k <k> | one2one | explicit
//   inter <i> <j>         admissible pair, only with `pattern explicit`
//
// Node indices are zero-based within their layer. `layer1`/`layer2` must
// precede any line that uses the layer. A missing `pattern` line means
// `explicit`.

#include <filesystem>
#include <string>
#include <string_view>

#include "mlconn/multinet.hpp"

namespace mlconn {

/// Throws ParseError naming the first offending line, or
/// Error(kValidationError) when the pieces do not form a valid network.
MultilayerNetwork parse_network(std::string_view document);

/// Reads and parses a file; unreadable files raise kParseError at line 0.
MultilayerNetwork load_network(const std::filesystem::path& path);

/// Inverse of parse_network. Weights are written with 17 significant digits.
std::string format_network(const MultilayerNetwork& network);

}  // namespace mlconn

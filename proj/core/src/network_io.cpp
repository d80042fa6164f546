#include "mlconn/network_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "mlconn/csv.hpp"
#include "mlconn/error.hpp"

namespace mlconn {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) words.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return words;
}

int parse_int(std::string_view word, int line, const char* what) {
  int value = 0;
  const auto res = std::from_chars(word.data(), word.data() + word.size(), value);
  if (res.ec != std::errc() || res.ptr != word.data() + word.size()) {
    throw ParseError(line, std::string(what) + " is not an integer: '" + std::string(word) + "'");
  }
  return value;
}

double parse_real(std::string_view word, int line) {
  double value = 0.0;
  const auto res = std::from_chars(word.data(), word.data() + word.size(), value);
  if (res.ec != std::errc() || res.ptr != word.data() + word.size()) {
    throw ParseError(line, "weight is not a number: '" + std::string(word) + "'");
  }
  return value;
}

struct PendingPattern {
  PatternKind kind = PatternKind::kExplicit;
  int k = 0;
  int line = 0;
};

struct LayerDraft {
  std::optional<int> size;
  std::vector<Edge> edges;
};

}  // namespace

MultilayerNetwork parse_network(std::string_view document) {
  LayerDraft layers[2];
  std::optional<PendingPattern> pattern;
  std::vector<NodePair> inter;
  int first_inter_line = 0;

  const auto expect_words = [](const std::vector<std::string_view>& w, std::size_t lo,
                               std::size_t hi, int line) {
    if (w.size() < lo || w.size() > hi) {
      throw ParseError(line, "'" + std::string(w[0]) + "' takes " + std::to_string(lo - 1) +
                                 (hi > lo ? "-" + std::to_string(hi - 1) : std::string()) +
                                 " arguments, got " + std::to_string(w.size() - 1));
    }
  };
  const auto layer_size = [&](int which, int line) {
    if (!layers[which].size) {
      throw ParseError(line, "layer" + std::to_string(which + 1) + " size not declared yet");
    }
    return *layers[which].size;
  };
  const auto check_index = [](int idx, int size, int line, const std::string& layer) {
    if (idx < 0 || idx >= size) {
      throw ParseError(line, "node index " + std::to_string(idx) + " outside " + layer +
                                 " (size " + std::to_string(size) + ")");
    }
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    std::size_t end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    std::string_view line = document.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto w = split_words(line);
    if (w.empty()) continue;
    const std::string_view key = w[0];

    if (key == "layer1" || key == "layer2") {
      const int which = key == "layer1" ? 0 : 1;
      expect_words(w, 2, 2, line_no);
      if (layers[which].size) throw ParseError(line_no, std::string(key) + " declared twice");
      const int size = parse_int(w[1], line_no, "layer size");
      if (size < 1) throw ParseError(line_no, "layer size must be positive");
      layers[which].size = size;
    } else if (key == "e1" || key == "e2") {
      const int which = key == "e1" ? 0 : 1;
      expect_words(w, 3, 4, line_no);
      const int size = layer_size(which, line_no);
      const int i = parse_int(w[1], line_no, "node index");
      const int j = parse_int(w[2], line_no, "node index");
      const std::string name = "layer" + std::to_string(which + 1);
      check_index(i, size, line_no, name);
      check_index(j, size, line_no, name);
      if (i == j) throw ParseError(line_no, "self-loop on node " + std::to_string(i));
      const double weight = w.size() == 4 ? parse_real(w[3], line_no) : 1.0;
      if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw ParseError(line_no, "edge weight must be positive and finite");
      }
      const int a = std::min(i, j);
      const int b = std::max(i, j);
      for (const Edge& e : layers[which].edges) {
        if (e.i == a && e.j == b) {
          throw ParseError(line_no, "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
        }
      }
      layers[which].edges.push_back({a, b, weight});
    } else if (key == "inter") {
      expect_words(w, 3, 3, line_no);
      const int i = parse_int(w[1], line_no, "node index");
      const int j = parse_int(w[2], line_no, "node index");
      check_index(i, layer_size(0, line_no), line_no, "layer1");
      check_index(j, layer_size(1, line_no), line_no, "layer2");
      for (const NodePair& p : inter) {
        if (p.i == i && p.j == j) {
          throw ParseError(line_no, "duplicate interlink pair " + std::to_string(i) + "-" +
                                        std::to_string(j));
        }
      }
      if (inter.empty()) first_inter_line = line_no;
      inter.push_back({i, j});
    } else if (key == "pattern") {
      expect_words(w, 2, 3, line_no);
      if (pattern) throw ParseError(line_no, "pattern declared twice");
      PendingPattern p;
      p.line = line_no;
      const std::string_view kind = w[1];
      if (kind == "k2k") {
        expect_words(w, 3, 3, line_no);
        p.kind = PatternKind::kKToK;
        p.k = parse_int(w[2], line_no, "k");
      } else {
        expect_words(w, 2, 2, line_no);
        if (kind == "all") {
          p.kind = PatternKind::kAllPairs;
        } else if (kind == "one2one") {
          p.kind = PatternKind::kOneToOne;
        } else if (kind == "explicit") {
          p.kind = PatternKind::kExplicit;
        } else {
          throw ParseError(line_no, "unknown pattern '" + std::string(kind) + "'");
        }
      }
      pattern = p;
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(key) + "'");
    }
  }

  for (int which = 0; which < 2; ++which) {
    if (!layers[which].size) {
      throw ParseError(line_no, "missing layer" + std::to_string(which + 1) + " declaration");
    }
  }
  const PendingPattern pat = pattern.value_or(PendingPattern{});
  if (pat.kind != PatternKind::kExplicit && !inter.empty()) {
    throw ParseError(first_inter_line, "'inter' lines require 'pattern explicit'");
  }

  const int n = *layers[0].size;
  const int m = *layers[1].size;
  try {
    LayerGraph g1(n, std::move(layers[0].edges));
    LayerGraph g2(m, std::move(layers[1].edges));
    InterlayerPattern p;
    switch (pat.kind) {
      case PatternKind::kAllPairs: p = InterlayerPattern::all_pairs(n, m); break;
      case PatternKind::kKToK: p = InterlayerPattern::k_to_k(n, m, pat.k); break;
      case PatternKind::kOneToOne: p = InterlayerPattern::one_to_one(n, m); break;
      case PatternKind::kExplicit: p = InterlayerPattern::explicit_pairs(n, m, std::move(inter)); break;
    }
    return MultilayerNetwork(std::move(g1), std::move(g2), std::move(p));
  } catch (const Error& e) {
    throw Error(ErrorKind::kValidationError, std::string(to_string(e.kind())) + ": " + e.what());
  }
}

MultilayerNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string format_network(const MultilayerNetwork& network) {
  std::string out;
  out += "layer1 " + std::to_string(network.n()) + "\n";
  out += "layer2 " + std::to_string(network.m()) + "\n";
  for (const Edge& e : network.layer1().edges()) {
    out += "e1 " + std::to_string(e.i) + " " + std::to_string(e.j) + " " + format_real(e.weight) + "\n";
  }
  for (const Edge& e : network.layer2().edges()) {
    out += "e2 " + std::to_string(e.i) + " " + std::to_string(e.j) + " " + format_real(e.weight) + "\n";
  }
  const InterlayerPattern& p = network.pattern();
  switch (p.kind()) {
    case PatternKind::kAllPairs: out += "pattern all\n"; break;
    case PatternKind::kKToK: out += "pattern k2k " + std::to_string(p.k()) + "\n"; break;
    case PatternKind::kOneToOne: out += "pattern one2one\n"; break;
    case PatternKind::kExplicit:
      out += "pattern explicit\n";
      for (const NodePair& q : p.pairs()) {
        out += "inter " + std::to_string(q.i) + " " + std::to_string(q.j) + "\n";
      }
      break;
  }
  return out;
}

}  // namespace mlconn

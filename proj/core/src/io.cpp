#include "amc/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace amc::io {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

// Next whitespace-separated PGM header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string token;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(c);
  }
  return token;
}

std::size_t pgm_size(std::istream& in, const char* what) {
  std::size_t value = 0;
  if (!parse_number(pgm_token(in), value)) {
    throw ParseError(std::string("malformed PGM header: bad ") + what);
  }
  return value;
}

}  // namespace

EdgeMap read_pgm(std::istream& in) {
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") throw ParseError("not a P2/P5 graymap");
  const std::size_t width = pgm_size(in, "width");
  const std::size_t height = pgm_size(in, "height");
  const std::size_t maxval = pgm_size(in, "maxval");
  if (maxval != 255) throw ParseError("graymap maxval must be 255");

  std::vector<double> values(width * height);
  if (magic == "P5") {
    std::vector<char> raw(values.size());
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      throw ParseError("truncated graymap pixel data");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      values[i] = static_cast<unsigned char>(raw[i]) / 255.0;
    }
  } else {
    for (double& v : values) {
      unsigned level = 0;
      if (!parse_number(pgm_token(in), level) || level > 255) {
        throw ParseError("bad or missing graymap pixel value");
      }
      v = level / 255.0;
    }
  }
  return EdgeMap(height, width, std::move(values));
}

EdgeMap read_edge_map_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (height == 0) width = fields.size();
    if (fields.size() != width) fail(line_no, "row width differs from first row");
    for (auto field : fields) {
      double v = 0.0;
      if (!parse_number(field, v)) fail(line_no, "bad number '" + std::string(trim(field)) + "'");
      if (!(v >= 0.0 && v <= 1.0)) fail(line_no, "value outside [0,1]");
      values.push_back(v);
    }
    ++height;
  }
  return EdgeMap(height, width, std::move(values));
}

EdgeMap read_edge_map(const std::filesystem::path& path) {
  auto in = open_input(path);
  char head[2] = {0, 0};
  in.read(head, 2);
  in.clear();
  in.seekg(0);
  if (head[0] == 'P' && (head[1] == '2' || head[1] == '5')) return read_pgm(in);
  return read_edge_map_csv(in);
}

void write_pgm(std::ostream& out, const EdgeMap& map, bool binary) {
  out << (binary ? "P5" : "P2") << '\n' << map.width() << ' ' << map.height() << "\n255\n";
  for (std::size_t r = 0; r < map.height(); ++r) {
    for (std::size_t c = 0; c < map.width(); ++c) {
      const auto level = static_cast<unsigned>(std::lround(map.at(r, c) * 255.0));
      if (binary) {
        out.put(static_cast<char>(level));
      } else {
        out << level << (c + 1 == map.width() ? '\n' : ' ');
      }
    }
  }
}

void write_edge_map_csv(std::ostream& out, const EdgeMap& map) {
  out << std::setprecision(17);
  for (std::size_t r = 0; r < map.height(); ++r) {
    for (std::size_t c = 0; c < map.width(); ++c) {
      out << (c == 0 ? "" : ",") << map.at(r, c);
    }
    out << '\n';
  }
}

EdgeGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  {
    std::istringstream header(line);
    std::string nodes_word;
    std::string edges_word;
    if (!(header >> nodes_word >> nodes >> edges_word >> edges) || nodes_word != "nodes" ||
        edges_word != "edges") {
      fail(line_no, "expected 'nodes <n> edges <m>'");
    }
  }
  std::vector<Edge> edge_list;
  std::vector<double> probs;
  edge_list.reserve(edges);
  probs.reserve(edges);
  while (edge_list.size() < edges && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string u_text;
    std::string v_text;
    std::string p_text;
    std::string extra;
    NodeId u = 0;
    NodeId v = 0;
    double p = 0.0;
    if (!(row >> u_text >> v_text >> p_text) || (row >> extra) || !parse_number(u_text, u) ||
        !parse_number(v_text, v) || !parse_number(p_text, p)) {
      fail(line_no, "expected 'u v p'");
    }
    if (u >= nodes || v >= nodes) fail(line_no, "node id out of range");
    if (!(p >= 0.0 && p <= 1.0)) fail(line_no, "probability outside [0,1]");
    edge_list.push_back({u, v});
    probs.push_back(p);
  }
  if (edge_list.size() != edges) {
    fail(line_no, "expected " + std::to_string(edges) + " edges, found " +
                      std::to_string(edge_list.size()));
  }
  try {
    return EdgeGraph(nodes, std::move(edge_list), std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

EdgeGraph read_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const EdgeGraph& graph) {
  out << "nodes " << graph.num_nodes() << " edges " << graph.num_edges() << '\n';
  out << std::fixed << std::setprecision(kProbabilityDigits);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    out << graph.edge(e).u << ' ' << graph.edge(e).v << ' ' << graph.probs()[e] << '\n';
  }
}

void write_graph(const std::filesystem::path& path, const EdgeGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_graph(out, graph);
}

Partition read_partition(std::istream& in) {
  std::vector<std::pair<std::size_t, std::uint32_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (line_no == 1 && text == "node,component") continue;
    const auto fields = split(text, ',');
    std::size_t node = 0;
    std::uint32_t component = 0;
    if (fields.size() != 2 || !parse_number(fields[0], node) ||
        !parse_number(fields[1], component)) {
      fail(line_no, "expected 'node,component'");
    }
    rows.emplace_back(node, component);
  }
  Partition partition(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [node, component] : rows) {
    if (node >= rows.size() || seen[node]) {
      throw ParseError("partition nodes must be 0..n-1, each exactly once");
    }
    seen[node] = true;
    partition[node] = component;
  }
  return partition;
}

Partition read_partition(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_partition(in);
}

void write_partition(std::ostream& out, std::span<const std::uint32_t> partition) {
  out << "node,component\n";
  for (std::size_t i = 0; i < partition.size(); ++i) out << i << ',' << partition[i] << '\n';
}

Labeling read_labeling(std::istream& in, const EdgeGraph& graph) {
  Labeling labeling(graph.num_edges(), 0);
  std::vector<bool> seen(graph.num_edges(), false);
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (line_no == 1 && text == "edge,u,v,cut") continue;
    const auto fields = split(text, ',');
    std::size_t e = 0;
    NodeId u = 0;
    NodeId v = 0;
    unsigned cut = 0;
    if (fields.size() != 4 || !parse_number(fields[0], e) || !parse_number(fields[1], u) ||
        !parse_number(fields[2], v) || !parse_number(fields[3], cut) || cut > 1) {
      fail(line_no, "expected 'edge,u,v,cut'");
    }
    if (e >= graph.num_edges() || seen[e] || graph.edge(e) != Edge{u, v}) {
      fail(line_no, "edge does not match the graph");
    }
    seen[e] = true;
    labeling[e] = static_cast<std::uint8_t>(cut);
    ++rows;
  }
  if (rows != graph.num_edges()) throw ParseError("labeling does not cover every edge");
  return labeling;
}

void write_labeling(std::ostream& out, const EdgeGraph& graph,
                    std::span<const std::uint8_t> labeling) {
  out << "edge,u,v,cut\n";
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    out << e << ',' << graph.edge(e).u << ',' << graph.edge(e).v << ','
        << static_cast<int>(labeling[e]) << '\n';
  }
}

PotentialParams read_params(std::istream& in) {
  PotentialParams params;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const auto key = trim(text.substr(0, eq));
    double value = 0.0;
    if (!parse_number(text.substr(eq + 1), value)) fail(line_no, "bad number");
    if (key == "gamma_jjj") {
      params.gamma_jjj = value;
    } else if (key == "gamma_jcc") {
      params.gamma_jcc = value;
    } else if (key == "gamma_ccc") {
      params.gamma_ccc = value;
    } else if (key == "gamma_max") {
      params.gamma_max = value;
    } else if (key == "unary_weight") {
      params.unary_weight = value;
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  return params;
}

void write_params(std::ostream& out, const PotentialParams& params) {
  out << std::setprecision(17);
  out << "gamma_jjj = " << params.gamma_jjj << '\n'
      << "gamma_jcc = " << params.gamma_jcc << '\n'
      << "gamma_ccc = " << params.gamma_ccc << '\n'
      << "gamma_max = " << params.gamma_max << '\n'
      << "unary_weight = " << params.unary_weight << '\n';
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace amc::io

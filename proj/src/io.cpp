#include "ian/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ian {

namespace {

std::string num(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& path, const std::string& what, long line = 0) {
  if (line > 0) throw IoError(path + ":" + std::to_string(line) + ": " + what);
  throw IoError(path + ": " + what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

Scalar parse_scalar(const std::string& cell, const std::string& path, long line) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == begin || (end && *end)) fail(path, "bad number '" + cell + "'", line);
  return v;
}

Index parse_node(const std::string& cell, const std::string& path, long line) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(begin, &end, 10);
  while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == begin || (end && *end) || errno == ERANGE || v < 0)
    fail(path, "bad node index '" + cell + "'", line);
  return static_cast<Index>(v);
}

}  // namespace

Matrix read_matrix_csv(const std::string& path, bool header) {
  const auto lines = read_lines(path);
  if (header && lines.empty()) fail(path, "missing header");
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t li = header ? 1 : 0; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto cells = split(lines[li], ',');
    std::vector<Scalar> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_scalar(c, path, static_cast<long>(li) + 1));
    if (!rows.empty() && row.size() != rows.front().size())
      fail(path, "row has " + std::to_string(row.size()) + " columns, expected " +
                     std::to_string(rows.front().size()),
           static_cast<long>(li) + 1);
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

void write_matrix_csv(const std::string& path, const Matrix& m, bool header) {
  auto out = open_out(path);
  if (header) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << 'c' << c;
    }
    out << '\n';
  }
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << num(m(r, c));
    }
    out << '\n';
  }
  out.flush();
  if (!out) fail(path, "write failed");
}

void write_point_cloud(const std::string& path, const PointCloud& pc, bool header) {
  write_matrix_csv(path, pc.points, header);
  nlohmann::json j;
  j["kind"] = pc.kind;
  j["seed"] = pc.seed;
  j["params"] = pc.params;
  if (!pc.labels.empty()) j["labels"] = pc.labels;
  if (pc.position.size() > 0)
    j["position"] = std::vector<double>(pc.position.data(), pc.position.data() + pc.position.size());
  if (pc.aux.size() > 0) {
    std::vector<std::vector<double>> aux(static_cast<std::size_t>(pc.aux.rows()));
    for (Index r = 0; r < pc.aux.rows(); ++r)
      for (Index c = 0; c < pc.aux.cols(); ++c)
        aux[static_cast<std::size_t>(r)].push_back(pc.aux(r, c));
    j["aux"] = aux;
  }
  auto out = open_out(path + ".json");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) fail(path + ".json", "write failed");
}

PointCloud read_point_cloud(const std::string& path, bool header) {
  PointCloud pc;
  pc.points = read_matrix_csv(path, header);
  const std::string side = path + ".json";
  std::ifstream in(side);
  if (!in) return pc;  // bare CSV, no annotations
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(side, e.what());
  }
  try {
    pc.kind = j.value("kind", std::string());
    pc.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("params")) pc.params = j["params"].get<std::map<std::string, Scalar>>();
    if (j.contains("labels")) pc.labels = j["labels"].get<std::vector<std::string>>();
    if (j.contains("position")) {
      const auto pos = j["position"].get<std::vector<double>>();
      pc.position = Eigen::Map<const Vector>(pos.data(), static_cast<Index>(pos.size()));
    }
    if (j.contains("aux")) {
      const auto aux = j["aux"].get<std::vector<std::vector<double>>>();
      const Index rows = static_cast<Index>(aux.size());
      const Index cols = rows ? static_cast<Index>(aux.front().size()) : 0;
      pc.aux.resize(rows, cols);
      for (Index r = 0; r < rows; ++r) {
        if (static_cast<Index>(aux[static_cast<std::size_t>(r)].size()) != cols)
          fail(side, "ragged aux rows");
        for (Index c = 0; c < cols; ++c)
          pc.aux(r, c) = aux[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(side, e.what());
  }
  if (!pc.labels.empty() && static_cast<Index>(pc.labels.size()) != pc.points.rows())
    fail(side, "label count does not match point count");
  if (pc.position.size() > 0 && pc.position.size() != pc.points.rows())
    fail(side, "position count does not match point count");
  return pc;
}

NeighborGraph EdgeList::graph() const {
  std::vector<IndexPair> pairs;
  pairs.reserve(edges.size());
  for (const auto& [i, j, len] : edges) {
    (void)len;
    pairs.emplace_back(i, j);
  }
  return NeighborGraph(n, pairs);
}

std::vector<Scalar> EdgeList::lengths() const {
  std::map<IndexPair, Scalar> by_edge;
  for (const auto& [i, j, len] : edges) {
    const IndexPair key{std::min(i, j), std::max(i, j)};
    if (!by_edge.emplace(key, len).second) throw std::invalid_argument("duplicate edge");
  }
  std::vector<Scalar> out;
  out.reserve(by_edge.size());
  for (const auto& e : graph().edges()) out.push_back(by_edge.at(e));
  return out;
}

void write_edge_tsv(const std::string& path, const NeighborGraph& g, const DistanceMatrix& d) {
  if (g.size() != d.size()) throw std::invalid_argument("graph and distances disagree on n");
  auto out = open_out(path);
  for (const auto& [i, j] : g.edges()) out << i << '\t' << j << '\t' << num(d(i, j)) << '\n';
  out.flush();
  if (!out) fail(path, "write failed");
}

EdgeList read_edge_tsv(const std::string& path, Index n) {
  const auto lines = read_lines(path);
  EdgeList el;
  Index max_node = -1;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const long ln = static_cast<long>(li) + 1;
    const auto cells = split(lines[li], '\t');
    if (cells.size() != 3) fail(path, "expected 'i<TAB>j<TAB>length'", ln);
    const Index i = parse_node(cells[0], path, ln);
    const Index j = parse_node(cells[1], path, ln);
    const Scalar len = parse_scalar(cells[2], path, ln);
    if (i == j) fail(path, "self loop", ln);
    if (!(len >= 0) || !std::isfinite(len)) fail(path, "edge length must be finite and >= 0", ln);
    max_node = std::max({max_node, i, j});
    el.edges.emplace_back(i, j, len);
  }
  el.n = n >= 0 ? n : max_node + 1;
  if (max_node >= el.n) fail(path, "node index " + std::to_string(max_node) + " out of range");
  return el;
}

void write_weights_tsv(const std::string& path, const WeightedGraph& gw) {
  auto out = open_out(path);
  for (Index i = 0; i < gw.n; ++i)
    for (const auto& [j, w] : gw.adj[static_cast<std::size_t>(i)])
      if (j > i) out << i << '\t' << j << '\t' << num(w) << '\n';
  out.flush();
  if (!out) fail(path, "write failed");
}

WeightedGraph read_weights_tsv(const std::string& path, Index n) {
  const auto lines = read_lines(path);
  std::vector<std::tuple<Index, Index, Scalar>> rows;
  Index max_node = -1;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const long ln = static_cast<long>(li) + 1;
    const auto cells = split(lines[li], '\t');
    if (cells.size() != 3) fail(path, "expected 'i<TAB>j<TAB>weight'", ln);
    const Index i = parse_node(cells[0], path, ln);
    const Index j = parse_node(cells[1], path, ln);
    const Scalar w = parse_scalar(cells[2], path, ln);
    if (i == j) fail(path, "self loop", ln);
    if (!std::isfinite(w)) fail(path, "weight must be finite", ln);
    max_node = std::max({max_node, i, j});
    rows.emplace_back(i, j, w);
  }
  WeightedGraph gw;
  gw.n = n >= 0 ? n : max_node + 1;
  if (max_node >= gw.n) fail(path, "node index " + std::to_string(max_node) + " out of range");
  gw.adj.assign(static_cast<std::size_t>(gw.n), {});
  for (const auto& [i, j, w] : rows) {
    gw.adj[static_cast<std::size_t>(i)].emplace_back(j, w);
    gw.adj[static_cast<std::size_t>(j)].emplace_back(i, w);
  }
  for (Index i = 0; i < gw.n; ++i) {
    auto& row = gw.adj[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end());
    for (std::size_t k = 1; k < row.size(); ++k)
      if (row[k].first == row[k - 1].first)
        fail(path, "duplicate edge (" + std::to_string(i) + ", " + std::to_string(row[k].first) + ")");
  }
  return gw;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& names,
                     const std::vector<Vector>& columns) {
  if (names.size() != columns.size()) throw std::invalid_argument("one name per column");
  for (const auto& nm : names)
    if (nm.empty() || nm.find(',') != std::string::npos || nm.find('\n') != std::string::npos)
      throw std::invalid_argument("column names must be nonempty and comma-free");
  const Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("columns must have equal length");
  auto out = open_out(path);
  out << "node";
  for (const auto& nm : names) out << ',' << nm;
  out << '\n';
  for (Index r = 0; r < rows; ++r) {
    out << r;
    for (const auto& c : columns) out << ',' << num(c[r]);
    out << '\n';
  }
  out.flush();
  if (!out) fail(path, "write failed");
}

std::vector<Vector> read_table_csv(const std::string& path, std::vector<std::string>* names) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail(path, "missing header");
  const auto head = split(lines[0], ',');
  if (head.empty() || head[0] != "node") fail(path, "header must start with 'node'", 1);
  const std::size_t ncols = head.size() - 1;
  if (names) names->assign(head.begin() + 1, head.end());
  std::vector<std::vector<Scalar>> cols(ncols);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const long ln = static_cast<long>(li) + 1;
    const auto cells = split(lines[li], ',');
    if (cells.size() != ncols + 1) fail(path, "wrong column count", ln);
    parse_node(cells[0], path, ln);
    for (std::size_t c = 0; c < ncols; ++c)
      cols[c].push_back(parse_scalar(cells[c + 1], path, ln));
  }
  std::vector<Vector> out(ncols);
  for (std::size_t c = 0; c < ncols; ++c)
    out[c] = Eigen::Map<const Vector>(cols[c].data(), static_cast<Index>(cols[c].size()));
  return out;
}

namespace {

std::string f2(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string lerp_color(Scalar t) {
  // Blue (cool) to red (warm).
  const int lo[3] = {59, 76, 192};
  const int hi[3] = {180, 4, 38};
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(lo[0] + t * (hi[0] - lo[0]))),
                static_cast<int>(std::lround(lo[1] + t * (hi[1] - lo[1]))),
                static_cast<int>(std::lround(lo[2] + t * (hi[2] - lo[2]))));
  return buf;
}

}  // namespace

void write_svg_scatter(const std::string& path, const Matrix& pts2d,
                       const std::vector<IndexPair>& edges, const Vector& values) {
  if (pts2d.cols() != 2) throw std::invalid_argument("scatter plot needs n x 2 points");
  const Index n = pts2d.rows();
  if (values.size() != 0 && values.size() != n)
    throw std::invalid_argument("one value per point");
  for (const auto& [i, j] : edges)
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("edge endpoint out of range");

  Scalar xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (n > 0) {
    xmin = pts2d.col(0).minCoeff();
    xmax = pts2d.col(0).maxCoeff();
    ymin = pts2d.col(1).minCoeff();
    ymax = pts2d.col(1).maxCoeff();
  }
  Scalar spanx = xmax - xmin, spany = ymax - ymin;
  if (spanx <= 0) spanx = 1;
  if (spany <= 0) spany = 1;
  const Scalar pad = 0.05;
  const Scalar side = 800;
  const Scalar scale = std::min(side / (spanx * (1 + 2 * pad)), side / (spany * (1 + 2 * pad)));
  const Scalar cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
  auto sx = [&](Scalar x) { return (x - cx) * scale + side / 2; };
  auto sy = [&](Scalar y) { return side / 2 - (y - cy) * scale; };

  Scalar vmin = 0, vmax = 0;
  bool flat = values.size() == 0;
  if (!flat) {
    vmin = values.minCoeff();
    vmax = values.maxCoeff();
    if (!(vmax > vmin) || !std::isfinite(vmin) || !std::isfinite(vmax)) flat = true;
  }

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const auto& [i, j] : edges)
    out << "<line x1=\"" << f2(sx(pts2d(i, 0))) << "\" y1=\"" << f2(sy(pts2d(i, 1)))
        << "\" x2=\"" << f2(sx(pts2d(j, 0))) << "\" y2=\"" << f2(sy(pts2d(j, 1)))
        << "\" stroke=\"#999999\" stroke-width=\"0.7\"/>\n";
  for (Index i = 0; i < n; ++i) {
    std::string color = "#3b4cc0";
    if (!flat) {
      Scalar t = (values[i] - vmin) / (vmax - vmin);
      if (!std::isfinite(t)) t = 0.5;
      color = lerp_color(std::clamp<Scalar>(t, 0, 1));
    }
    out << "<circle cx=\"" << f2(sx(pts2d(i, 0))) << "\" cy=\"" << f2(sy(pts2d(i, 1)))
        << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
  }
  out << "</svg>\n";
  out.flush();
  if (!out) fail(path, "write failed");
}

}  // namespace ian

#include "scimap/artifacts.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

namespace {

[[noreturn]] void malformed(std::string_view what, std::size_t line, const std::string& detail) {
  throw Error(ErrorCode::MalformedFile, fmt::format("{} line {}: {}", what, line, detail));
}

// Reads the next non-empty line, collecting "# key=value" comments.
bool next_data_line(LineReader& reader, std::string& line, Provenance* comments = nullptr) {
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    if (line.starts_with('#')) {
      if (comments) {
        const auto body = trim(std::string_view(line).substr(1));
        const auto eq = body.find('=');
        if (eq != std::string_view::npos) {
          (*comments)[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
        }
      }
      continue;
    }
    return true;
  }
  return false;
}

template <typename Fn>
void save(const std::filesystem::path& path, Fn&& fn) {
  auto out = open_output(path);
  fn(out);
  finish_output(out, path);
}

}  // namespace

void write_graph_file(std::ostream& out, const SimilarityGraph& g) {
  out << "# scimap similarity graph\n"
      << "direction " << to_string(g.direction()) << '\n'
      << "threshold " << format_exact(g.threshold()) << '\n'
      << "nodes " << g.node_count() << '\n';
  for (int id : g.node_ids()) out << id << '\n';
  out << "edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << g.node_ids()[static_cast<std::size_t>(e.u)] << ' ' << g.node_ids()[static_cast<std::size_t>(e.v)] << ' '
        << format_exact(e.weight) << '\n';
  }
}

SimilarityGraph read_graph_file(std::istream& in) {
  LineReader reader(in);
  std::string line;
  auto keyed = [&](std::string_view key) {
    if (!next_data_line(reader, line) || !line.starts_with(key) || line.size() <= key.size() + 1) {
      malformed("graph", reader.line_number(), fmt::format("expected '{} <value>'", key));
    }
    return std::string(trim(std::string_view(line).substr(key.size() + 1)));
  };
  const auto direction = parse_direction(keyed("direction"));
  if (!direction) malformed("graph", reader.line_number(), "direction must be cited or citing");
  const auto threshold = parse_double(keyed("threshold"));
  if (!threshold) malformed("graph", reader.line_number(), "bad threshold");
  const auto n = parse_int(keyed("nodes"));
  if (!n || *n < 0) malformed("graph", reader.line_number(), "bad node count");
  std::vector<int> ids;
  ids.reserve(static_cast<std::size_t>(*n));
  for (std::int64_t k = 0; k < *n; ++k) {
    if (!next_data_line(reader, line)) malformed("graph", reader.line_number(), "missing node id");
    auto id = parse_int(line);
    if (!id) malformed("graph", reader.line_number(), "bad node id");
    ids.push_back(static_cast<int>(*id));
  }
  const auto m = parse_int(keyed("edges"));
  if (!m || *m < 0) malformed("graph", reader.line_number(), "bad edge count");
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(*m));
  // graph files are written with ascending ids, so index lookup is a binary search
  auto index_of = [&](std::int64_t id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), static_cast<int>(id));
    if (it == ids.end() || *it != id) malformed("graph", reader.line_number(), fmt::format("unknown node {}", id));
    return static_cast<int>(it - ids.begin());
  };
  for (std::int64_t k = 0; k < *m; ++k) {
    if (!next_data_line(reader, line)) malformed("graph", reader.line_number(), "missing edge");
    std::istringstream fields(line);
    std::string a, b, w;
    if (!(fields >> a >> b >> w)) malformed("graph", reader.line_number(), "edge lines need 'u v weight'");
    auto u = parse_int(a);
    auto v = parse_int(b);
    auto weight = parse_double(w);
    if (!u || !v || !weight) malformed("graph", reader.line_number(), "unparsable edge");
    edges.push_back({index_of(*u), index_of(*v), *weight});
  }
  try {
    return SimilarityGraph(std::move(ids), std::move(edges), *threshold, *direction);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedFile, fmt::format("graph: {}", e.what()));
  }
}

void save_graph(const SimilarityGraph& g, const std::filesystem::path& path) {
  save(path, [&](std::ostream& out) { write_graph_file(out, g); });
}

SimilarityGraph load_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_graph_file(in);
}

void write_layout_file(std::ostream& out, const Layout& layout, const Provenance& extra) {
  const auto& p = layout.provenance;
  out << "# algorithm=" << p.algorithm << '\n'
      << "# seed=" << p.seed << '\n'
      << "# iterations=" << p.iterations << '\n'
      << "# kruskal_stress=" << format_exact(p.kruskal_stress) << '\n';
  if (p.kamada_kawai_stress) out << "# kamada_kawai_stress=" << format_exact(*p.kamada_kawai_stress) << '\n';
  for (const auto& [k, v] : extra) out << "# " << k << '=' << v << '\n';
  out << "id,x,y\n";
  for (std::size_t i = 0; i < layout.node_ids.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out << layout.node_ids[i] << ',' << format_exact(layout.coords(r, 0)) << ',' << format_exact(layout.coords(r, 1))
        << '\n';
  }
}

Layout read_layout_file(std::istream& in) {
  LineReader reader(in);
  std::string line;
  Provenance comments;
  if (!next_data_line(reader, line, &comments) || trim(line) != "id,x,y") {
    malformed("layout", reader.line_number(), "expected header 'id,x,y'");
  }
  Layout layout;
  std::vector<Eigen::RowVector2d> rows;
  while (next_data_line(reader, line)) {
    auto f = split_csv_line(line);
    if (!f || f->size() != 3) malformed("layout", reader.line_number(), "expected 3 fields");
    auto id = parse_int((*f)[0]);
    auto x = parse_double((*f)[1]);
    auto y = parse_double((*f)[2]);
    if (!id || !x || !y) malformed("layout", reader.line_number(), "unparsable value");
    layout.node_ids.push_back(static_cast<int>(*id));
    rows.emplace_back(*x, *y);
  }
  layout.coords.resize(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) layout.coords.row(static_cast<Eigen::Index>(i)) = rows[i];
  auto& p = layout.provenance;
  p.algorithm = comments["algorithm"];
  if (auto s = parse_int(comments["seed"])) p.seed = static_cast<std::uint64_t>(*s);
  if (auto s = parse_int(comments["iterations"])) p.iterations = static_cast<int>(*s);
  if (auto s = parse_double(comments["kruskal_stress"])) p.kruskal_stress = *s;
  if (auto s = parse_double(comments["kamada_kawai_stress"])) p.kamada_kawai_stress = *s;
  return layout;
}

void save_layout(const Layout& layout, const std::filesystem::path& path, const Provenance& extra) {
  save(path, [&](std::ostream& out) { write_layout_file(out, layout, extra); });
}

Layout load_layout(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_layout_file(in);
}

void write_clusters_file(std::ostream& out, const std::vector<Clustering>& clusterings) {
  if (clusterings.empty()) throw Error(ErrorCode::InvalidArgument, "no clusterings to write");
  for (const auto& c : clusterings) {
    const auto key = gamma_key(c.gamma);
    out << "# seed_g" << key << '=' << c.seed << '\n'
        << "# modularity_g" << key << '=' << format_exact(c.modularity) << '\n'
        << "# communities_g" << key << '=' << c.community_count << '\n';
  }
  out << "id";
  for (const auto& c : clusterings) out << ",cluster_g" << gamma_key(c.gamma);
  out << '\n';
  const auto& ids = clusterings.front().node_ids;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (const auto& c : clusterings) {
      if (c.node_ids != ids) throw Error(ErrorCode::CoverageMismatch, "clusterings cover different nodes");
      out << ',' << c.assignment[i];
    }
    out << '\n';
  }
}

std::vector<Clustering> read_clusters_file(std::istream& in) {
  LineReader reader(in);
  std::string line;
  Provenance comments;
  if (!next_data_line(reader, line, &comments)) malformed("clusters", reader.line_number(), "missing header");
  auto header = split_csv_line(line);
  if (!header || header->size() < 2 || (*header)[0] != "id") {
    malformed("clusters", reader.line_number(), "expected header 'id,cluster_g<gamma>...'");
  }
  std::vector<Clustering> out;
  for (std::size_t c = 1; c < header->size(); ++c) {
    const auto& name = (*header)[c];
    auto g = name.starts_with("cluster_g") ? parse_double(std::string_view(name).substr(9)) : std::nullopt;
    if (!g) malformed("clusters", reader.line_number(), fmt::format("bad column '{}'", name));
    Clustering cl;
    cl.gamma = *g;
    const auto key = gamma_key(*g);
    if (auto s = parse_int(comments["seed_g" + key])) cl.seed = static_cast<std::uint64_t>(*s);
    if (auto s = parse_double(comments["modularity_g" + key])) cl.modularity = *s;
    if (auto s = parse_int(comments["communities_g" + key])) cl.community_count = static_cast<int>(*s);
    out.push_back(std::move(cl));
  }
  while (next_data_line(reader, line)) {
    auto f = split_csv_line(line);
    if (!f || f->size() != header->size()) malformed("clusters", reader.line_number(), "wrong number of fields");
    auto id = parse_int((*f)[0]);
    if (!id) malformed("clusters", reader.line_number(), "bad id");
    for (std::size_t c = 0; c < out.size(); ++c) {
      auto v = parse_int((*f)[c + 1]);
      if (!v || *v < 1) malformed("clusters", reader.line_number(), "cluster ids must be positive");
      out[c].node_ids.push_back(static_cast<int>(*id));
      out[c].assignment.push_back(static_cast<int>(*v));
    }
  }
  return out;
}

void save_clusters(const std::vector<Clustering>& clusterings, const std::filesystem::path& path) {
  save(path, [&](std::ostream& out) { write_clusters_file(out, clusterings); });
}

std::vector<Clustering> load_clusters(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_clusters_file(in);
}

}  // namespace scimap

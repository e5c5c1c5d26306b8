#include "scimap/export.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

std::vector<std::string> journal_labels(const SimilarityGraph& g, const JournalRegistry* registry) {
  std::vector<std::string> labels;
  labels.reserve(g.node_count());
  for (int id : g.node_ids()) labels.push_back(registry ? registry->at(id).full_title : std::to_string(id));
  return labels;
}

namespace {

void check_labels(std::span<const std::string> labels, std::size_t n) {
  if (labels.size() != n) {
    throw Error(ErrorCode::InvalidLabel, fmt::format("{} labels for {} nodes", labels.size(), n));
  }
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  auto out = open_output(path);
  writer(out);
  finish_output(out, path);
}

}  // namespace

// ---- Pajek ---------------------------------------------------------------

void write_pajek(std::ostream& out, const SimilarityGraph& g, const Layout* layout,
                 std::span<const std::string> labels) {
  const std::size_t n = g.node_count();
  check_labels(labels, n);
  if (layout && (layout->node_ids != g.node_ids())) {
    throw Error(ErrorCode::NodeSetMismatch, "layout does not match the graph's nodes");
  }
  for (const auto& label : labels) {
    if (label.find_first_of("\"\n\r") != std::string::npos) {
      throw Error(ErrorCode::InvalidLabel, fmt::format("label '{}' contains a quote or line break", label));
    }
  }
  out << "*Vertices " << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << i + 1 << " \"" << labels[i] << '"';
    if (layout) {
      const auto r = static_cast<Eigen::Index>(i);
      out << ' ' << format_fixed(layout->coords(r, 0), 6) << ' ' << format_fixed(layout->coords(r, 1), 6);
    }
    out << '\n';
  }
  out << "*Edges\n";
  for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << format_fixed(e.weight, 6) << '\n';
}

void write_pajek(const SimilarityGraph& g, const Layout* layout, std::span<const std::string> labels,
                 const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_pajek(out, g, layout, labels); });
}

PajekGraph read_pajek(std::istream& in) {
  LineReader reader(in);
  std::string line;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::MalformedFile, fmt::format("pajek line {}: {}", reader.line_number(), what));
  };
  if (!reader.next(line) || !line.starts_with("*Vertices")) fail("expected *Vertices");
  auto n = parse_int(std::string_view(line).substr(9));
  if (!n || *n < 0) fail("bad vertex count");

  PajekGraph g;
  std::vector<Eigen::RowVector2d> coords;
  for (std::int64_t k = 0; k < *n; ++k) {
    if (!reader.next(line)) fail("missing vertex line");
    const auto open = line.find('"');
    const auto close = line.find('"', open + 1);
    if (open == std::string::npos || close == std::string::npos) fail("vertex label must be quoted");
    auto idx = parse_int(std::string_view(line).substr(0, open));
    if (!idx || *idx != k + 1) fail("vertex numbers must run 1..N in order");
    g.labels.push_back(line.substr(open + 1, close - open - 1));
    std::istringstream rest(line.substr(close + 1));
    std::string xs, ys;
    if (rest >> xs >> ys) {
      auto x = parse_double(xs);
      auto y = parse_double(ys);
      if (!x || !y) fail("bad coordinates");
      coords.emplace_back(*x, *y);
    }
  }
  if (!coords.empty()) {
    if (coords.size() != g.labels.size()) fail("coordinates given for only some vertices");
    Coordinates c(static_cast<Eigen::Index>(coords.size()), 2);
    for (std::size_t i = 0; i < coords.size(); ++i) c.row(static_cast<Eigen::Index>(i)) = coords[i];
    g.coords = std::move(c);
  }
  if (!reader.next(line) || trim(line) != "*Edges") fail("expected *Edges");
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string a, b, w;
    if (!(fields >> a >> b >> w)) fail("edge lines need 'i j w'");
    auto u = parse_int(a);
    auto v = parse_int(b);
    auto weight = parse_double(w);
    if (!u || !v || !weight || *u < 1 || *v < 1 || *u > *n || *v > *n) fail("bad edge");
    g.edges.push_back({static_cast<int>(*u - 1), static_cast<int>(*v - 1), *weight});
  }
  return g;
}

// ---- VOSviewer map -------------------------------------------------------

std::vector<VosMapRow> vos_rows(const Basemap& basemap, double gamma) {
  const std::size_t column = basemap.require_gamma(gamma);
  std::vector<VosMapRow> rows;
  rows.reserve(basemap.rows().size());
  for (const auto& r : basemap.rows()) rows.push_back({r.id, r.full_title, r.x, r.y, r.clusters[column], r.weight});
  return rows;
}

std::vector<VosMapRow> vos_rows(const OverlaySet& overlay) {
  std::vector<VosMapRow> rows;
  rows.reserve(overlay.rows.size());
  for (const auto& r : overlay.rows) rows.push_back({r.id, r.full_title, r.x, r.y, r.cluster, r.weight});
  return rows;
}

void write_vos_map(std::ostream& out, std::span<const VosMapRow> rows) {
  for (const auto& r : rows) {
    if (r.label.find_first_of("\t\n\r") != std::string::npos) {
      throw Error(ErrorCode::InvalidLabel, fmt::format("journal {} label contains a tab or line break", r.id));
    }
  }
  out << "id\tlabel\tx\ty\tcluster\tweight\n";
  for (const auto& r : rows) {
    out << r.id << '\t' << r.label << '\t' << format_fixed(r.x, 6) << '\t' << format_fixed(r.y, 6) << '\t'
        << r.cluster << '\t' << format_fixed(r.weight, 5) << '\n';
  }
}

void write_vos_map(std::span<const VosMapRow> rows, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_vos_map(buffer, rows);  // validate before touching the file
  write_file(path, [&](std::ostream& out) { out << buffer.str(); });
}

std::vector<VosMapRow> read_vos_map(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line != "id\tlabel\tx\ty\tcluster\tweight") {
    throw Error(ErrorCode::MalformedFile, "vos map: unexpected header");
  }
  std::vector<VosMapRow> rows;
  while (reader.next(line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto tab = rest.find('\t');
      f.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (f.size() != 6) {
      throw Error(ErrorCode::MalformedFile, fmt::format("vos map line {}: expected 6 fields", reader.line_number()));
    }
    auto id = parse_int(f[0]);
    auto x = parse_double(f[2]);
    auto y = parse_double(f[3]);
    auto cluster = parse_int(f[4]);
    auto weight = parse_double(f[5]);
    if (!id || !x || !y || !cluster || !weight) {
      throw Error(ErrorCode::MalformedFile, fmt::format("vos map line {}: unparsable field", reader.line_number()));
    }
    rows.push_back({static_cast<int>(*id), std::string(f[1]), *x, *y, static_cast<int>(*cluster), *weight});
  }
  return rows;
}

// ---- GEXF ----------------------------------------------------------------

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default:
        // control characters are not representable in XML 1.0
        if (static_cast<unsigned char>(c) < 0x20) {
          out.push_back(' ');
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

void write_gexf(std::ostream& out, const SimilarityGraph& g, const Layout& layout, const Clustering& clustering,
                std::span<const std::string> labels) {
  const std::size_t n = g.node_count();
  check_labels(labels, n);
  if (layout.node_ids != g.node_ids()) throw Error(ErrorCode::NodeSetMismatch, "layout does not match the graph");
  if (clustering.node_ids != g.node_ids()) throw Error(ErrorCode::NodeSetMismatch, "clustering does not match the graph");

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<gexf xmlns=\"http://www.gexf.net/1.2draft\" xmlns:viz=\"http://www.gexf.net/1.2draft/viz\" "
         "version=\"1.2\">\n"
         "  <meta>\n"
         "    <creator>scimap</creator>\n"
         "  </meta>\n"
         "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n"
         "    <attributes class=\"node\">\n"
         "      <attribute id=\"cluster\" title=\"cluster\" type=\"integer\"/>\n"
         "    </attributes>\n"
         "    <nodes>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out << "      <node id=\"" << g.node_ids()[i] << "\" label=\"" << xml_escape(labels[i]) << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"cluster\" value=\"" << clustering.assignment[i] << "\"/>\n"
        << "        </attvalues>\n"
        << "        <viz:position x=\"" << format_fixed(layout.coords(r, 0), 6) << "\" y=\""
        << format_fixed(layout.coords(r, 1), 6) << "\" z=\"0.0\"/>\n"
        << "      </node>\n";
  }
  out << "    </nodes>\n"
         "    <edges>\n";
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    out << "      <edge id=\"" << k << "\" source=\"" << g.node_ids()[static_cast<std::size_t>(e.u)] << "\" target=\""
        << g.node_ids()[static_cast<std::size_t>(e.v)] << "\" weight=\"" << format_fixed(e.weight, 6) << "\"/>\n";
  }
  out << "    </edges>\n"
         "  </graph>\n"
         "</gexf>\n";
}

void write_gexf(const SimilarityGraph& g, const Layout& layout, const Clustering& clustering,
                std::span<const std::string> labels, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_gexf(out, g, layout, clustering, labels); });
}

// ---- viewer bundle -------------------------------------------------------

ViewerBundle make_bundle(const Basemap& basemap, const std::vector<OverlaySet>& overlays) {
  ViewerBundle b;
  for (double g : basemap.gammas()) b.gammas.push_back(gamma_key(g));
  b.meta = basemap.provenance();
  for (const auto& r : basemap.rows()) {
    BundleNode node{r.id, r.full_title, r.x, r.y, {}, r.weight};
    for (std::size_t c = 0; c < b.gammas.size(); ++c) node.clusters[b.gammas[c]] = r.clusters[c];
    b.nodes.push_back(std::move(node));
  }
  std::set<std::string> names;
  for (const auto& o : overlays) {
    if (!names.insert(o.name).second) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("overlay name '{}' used twice", o.name));
    }
    BundleOverlay bo{o.name, gamma_key(o.gamma), {}};
    for (const auto& r : o.rows) {
      const auto* row = basemap.find_id(r.id);
      if (row == nullptr || row->normalized_title != normalize_title(r.full_title)) {
        throw Error(ErrorCode::OverlayBasemapMismatch,
                    fmt::format("overlay '{}' journal {} ('{}') is not in the basemap", o.name, r.id, r.full_title));
      }
      bo.rows[r.id] = {r.n_publ, r.weight};
    }
    b.overlays.push_back(std::move(bo));
  }
  return b;
}

nlohmann::json bundle_to_json(const ViewerBundle& bundle) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : bundle.nodes) {
    nodes.push_back({{"id", n.id},
                     {"label", n.label},
                     {"x", n.x},
                     {"y", n.y},
                     {"clusters", n.clusters},
                     {"base_weight", n.base_weight}});
  }
  json overlays = json::array();
  for (const auto& o : bundle.overlays) {
    json rows = json::object();
    for (const auto& [id, r] : o.rows) rows[std::to_string(id)] = {{"n_publ", r.n_publ}, {"weight", r.weight}};
    overlays.push_back({{"name", o.name}, {"gamma", o.gamma}, {"rows", rows}});
  }
  return {{"schema_version", bundle.schema_version},
          {"gammas", bundle.gammas},
          {"nodes", nodes},
          {"overlays", overlays},
          {"meta", bundle.meta}};
}

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::MalformedFile, fmt::format("bundle: missing field '{}{}'", where, key));
  }
  return obj.at(key);
}

}  // namespace

ViewerBundle bundle_from_json(const nlohmann::json& doc) {
  ViewerBundle b;
  try {
    b.schema_version = field(doc, "schema_version", "").get<int>();
    if (b.schema_version != ViewerBundle::kSchemaVersion) {
      throw Error(ErrorCode::MalformedFile, fmt::format("bundle: unsupported schema_version {}", b.schema_version));
    }
    b.gammas = field(doc, "gammas", "").get<std::vector<std::string>>();
    b.meta = field(doc, "meta", "").get<std::map<std::string, std::string>>();
    const std::set<std::string> keys(b.gammas.begin(), b.gammas.end());
    std::set<int> ids;
    for (const auto& n : field(doc, "nodes", "")) {
      BundleNode node;
      node.id = field(n, "id", "nodes[].").get<int>();
      node.label = field(n, "label", "nodes[].").get<std::string>();
      node.x = field(n, "x", "nodes[].").get<double>();
      node.y = field(n, "y", "nodes[].").get<double>();
      node.clusters = field(n, "clusters", "nodes[].").get<std::map<std::string, int>>();
      node.base_weight = field(n, "base_weight", "nodes[].").get<double>();
      std::set<std::string> node_keys;
      for (const auto& [k, v] : node.clusters) node_keys.insert(k);
      if (node_keys != keys) {
        throw Error(ErrorCode::MalformedFile, fmt::format("bundle: node {} cluster keys differ from gammas", node.id));
      }
      ids.insert(node.id);
      b.nodes.push_back(std::move(node));
    }
    for (const auto& o : field(doc, "overlays", "")) {
      BundleOverlay bo;
      bo.name = field(o, "name", "overlays[].").get<std::string>();
      bo.gamma = field(o, "gamma", "overlays[].").get<std::string>();
      for (const auto& [key, r] : field(o, "rows", "overlays[].").items()) {
        auto id = parse_int(key);
        if (!id || !ids.contains(static_cast<int>(*id))) {
          throw Error(ErrorCode::OverlayBasemapMismatch,
                      fmt::format("bundle: overlay '{}' row '{}' names no node", bo.name, key));
        }
        bo.rows[static_cast<int>(*id)] = {field(r, "n_publ", "overlays[].rows[].").get<std::int64_t>(),
                                          field(r, "weight", "overlays[].rows[].").get<double>()};
      }
      b.overlays.push_back(std::move(bo));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, fmt::format("bundle: {}", e.what()));
  }
  return b;
}

void write_bundle(std::ostream& out, const ViewerBundle& bundle) {
  out << bundle_to_json(bundle).dump(1) << '\n';
}

void write_bundle(const Basemap& basemap, const std::vector<OverlaySet>& overlays, const std::filesystem::path& path) {
  const ViewerBundle bundle = make_bundle(basemap, overlays);
  write_file(path, [&](std::ostream& out) { write_bundle(out, bundle); });
}

ViewerBundle read_bundle(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, fmt::format("bundle: {}", e.what()));
  }
  return bundle_from_json(doc);
}

}  // namespace scimap

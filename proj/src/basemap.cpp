#include "scimap/basemap.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "scimap/error.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

Basemap::Basemap(std::vector<double> gammas, std::vector<BasemapRow> rows,
                 std::map<std::string, std::string> provenance)
    : gammas_(std::move(gammas)), rows_(std::move(rows)), provenance_(std::move(provenance)) {
  if (gammas_.empty()) throw Error(ErrorCode::CoverageMismatch, "a basemap needs at least one clustering");
  std::set<std::string> keys;
  for (double g : gammas_) {
    if (!keys.insert(gamma_key(g)).second) {
      throw Error(ErrorCode::DuplicateGamma, fmt::format("resolution {} appears twice", gamma_key(g)));
    }
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto& r = rows_[i];
    if (r.normalized_title.empty()) r.normalized_title = normalize_title(r.full_title);
    if (r.clusters.size() != gammas_.size()) {
      throw Error(ErrorCode::CoverageMismatch, fmt::format("journal {} lacks a cluster for some resolution", r.id));
    }
    if (!by_title_.emplace(r.normalized_title, i).second) {
      throw Error(ErrorCode::MalformedBasemapFile, fmt::format("duplicate journal title '{}'", r.normalized_title));
    }
    if (!by_id_.emplace(r.id, i).second) {
      throw Error(ErrorCode::MalformedBasemapFile, fmt::format("duplicate journal id {}", r.id));
    }
  }
}

std::optional<std::size_t> Basemap::gamma_index(double gamma) const {
  const auto key = gamma_key(gamma);
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    if (gamma_key(gammas_[i]) == key) return i;
  }
  return std::nullopt;
}

std::size_t Basemap::require_gamma(double gamma) const {
  if (auto i = gamma_index(gamma)) return *i;
  std::string known;
  for (double g : gammas_) known += (known.empty() ? "" : ", ") + gamma_key(g);
  throw Error(ErrorCode::UnknownGamma, fmt::format("resolution {} not in basemap (have {})", gamma_key(gamma), known));
}

const BasemapRow* Basemap::find_title(const std::string& normalized_title) const {
  auto it = by_title_.find(normalized_title);
  return it == by_title_.end() ? nullptr : &rows_[it->second];
}

const BasemapRow* Basemap::find_id(int id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &rows_[it->second];
}

Basemap build_basemap(const SimilarityGraph& g, const Layout& layout, const std::vector<Clustering>& clusterings,
                      const JournalRegistry& registry) {
  if (layout.node_ids != g.node_ids() || layout.coords.rows() != static_cast<Eigen::Index>(g.node_count())) {
    throw Error(ErrorCode::CoverageMismatch, "layout does not cover exactly the graph's nodes");
  }
  if (clusterings.empty()) throw Error(ErrorCode::CoverageMismatch, "at least one clustering is required");
  std::vector<double> gammas;
  for (const auto& c : clusterings) {
    if (c.node_ids != g.node_ids() || c.assignment.size() != g.node_count()) {
      throw Error(ErrorCode::CoverageMismatch,
                  fmt::format("clustering at resolution {} does not cover exactly the graph's nodes", gamma_key(c.gamma)));
    }
    gammas.push_back(c.gamma);
  }
  std::vector<BasemapRow> rows;
  rows.reserve(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const auto& journal = registry.at(g.node_ids()[i]);
    BasemapRow r;
    r.id = journal.id;
    r.full_title = journal.full_title;
    r.normalized_title = normalize_title(journal.full_title);
    r.x = layout.coords(static_cast<Eigen::Index>(i), 0);
    r.y = layout.coords(static_cast<Eigen::Index>(i), 1);
    for (const auto& c : clusterings) r.clusters.push_back(c.assignment[i]);
    rows.push_back(std::move(r));
  }
  std::map<std::string, std::string> provenance{
      {"direction", std::string(to_string(g.direction()))},
      {"threshold", format_exact(g.threshold())},
      {"layout", layout.provenance.algorithm},
      {"layout_seed", std::to_string(layout.provenance.seed)},
  };
  std::string seeds;
  for (const auto& c : clusterings) seeds += (seeds.empty() ? "" : ";") + gamma_key(c.gamma) + ":" + std::to_string(c.seed);
  provenance["cluster_seeds"] = seeds;
  return Basemap(std::move(gammas), std::move(rows), std::move(provenance));
}

void write_basemap(std::ostream& out, const Basemap& b) {
  const bool weighted = std::any_of(b.rows().begin(), b.rows().end(), [](const BasemapRow& r) { return r.weight != 1.0; });
  out << "id,full_title,x,y";
  for (double g : b.gammas()) out << ",cluster_g" << gamma_key(g);
  if (weighted) out << ",weight";
  out << '\n';
  for (const auto& r : b.rows()) {
    out << r.id << ',' << csv_field(r.full_title) << ',' << format_fixed(r.x, 6) << ',' << format_fixed(r.y, 6);
    for (int c : r.clusters) out << ',' << c;
    if (weighted) out << ',' << format_fixed(r.weight, 5);
    out << '\n';
  }
}

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedBasemapFile, fmt::format("basemap line {}: {}", line, what));
}

}  // namespace

Basemap read_basemap(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) malformed(1, "missing header");
  auto header = split_csv_line(line);
  if (!header) malformed(1, "unparsable header");

  std::optional<std::size_t> col_id, col_title, col_x, col_y, col_weight;
  std::vector<std::pair<std::size_t, double>> cluster_cols;
  for (std::size_t c = 0; c < header->size(); ++c) {
    const std::string name(trim((*header)[c]));
    if (name == "id") col_id = c;
    else if (name == "full_title") col_title = c;
    else if (name == "x") col_x = c;
    else if (name == "y") col_y = c;
    else if (name == "weight") col_weight = c;
    else if (name.starts_with("cluster_g")) {
      auto g = parse_double(std::string_view(name).substr(9));
      if (!g || *g <= 0.0) malformed(1, fmt::format("bad resolution column '{}'", name));
      cluster_cols.emplace_back(c, *g);
    }
  }
  if (!col_id) malformed(1, "missing column 'id'");
  if (!col_title) malformed(1, "missing column 'full_title'");
  if (!col_x) malformed(1, "missing column 'x'");
  if (!col_y) malformed(1, "missing column 'y'");
  if (cluster_cols.empty()) malformed(1, "no cluster_g<gamma> column");

  std::vector<double> gammas;
  for (const auto& [c, g] : cluster_cols) gammas.push_back(g);
  std::vector<BasemapRow> rows;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (!fields || fields->size() != header->size()) malformed(reader.line_number(), "wrong number of fields");
    const auto& f = *fields;
    BasemapRow r;
    auto id = parse_int(f[*col_id]);
    auto x = parse_double(f[*col_x]);
    auto y = parse_double(f[*col_y]);
    if (!id || !x || !y) malformed(reader.line_number(), "unparsable id or coordinate");
    r.id = static_cast<int>(*id);
    r.full_title = f[*col_title];
    r.normalized_title = normalize_title(r.full_title);
    r.x = *x;
    r.y = *y;
    for (const auto& [c, g] : cluster_cols) {
      auto v = parse_int(f[c]);
      if (!v || *v < 1) malformed(reader.line_number(), "cluster ids must be positive integers");
      r.clusters.push_back(static_cast<int>(*v));
    }
    if (col_weight) {
      auto w = parse_double(f[*col_weight]);
      if (!w) malformed(reader.line_number(), "unparsable weight");
      r.weight = *w;
    }
    rows.push_back(std::move(r));
  }
  try {
    return Basemap(std::move(gammas), std::move(rows));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedBasemapFile) throw;
    throw Error(ErrorCode::MalformedBasemapFile, e.what());
  }
}

std::filesystem::path provenance_sidecar(const std::filesystem::path& path) {
  auto p = path;
  p += ".meta.json";
  return p;
}

void save_basemap(const Basemap& b, const std::filesystem::path& path) {
  {
    auto out = open_output(path);
    write_basemap(out, b);
    finish_output(out, path);
  }
  const auto meta_path = provenance_sidecar(path);
  auto out = open_output(meta_path);
  nlohmann::json meta(b.provenance());
  out << meta.dump(2) << '\n';
  finish_output(out, meta_path);
}

Basemap load_basemap(const std::filesystem::path& path) {
  auto in = open_input(path);
  Basemap b = read_basemap(in);
  const auto meta_path = provenance_sidecar(path);
  if (std::filesystem::exists(meta_path)) {
    auto meta_in = open_input(meta_path);
    try {
      const auto meta = nlohmann::json::parse(meta_in);
      for (const auto& [k, v] : meta.items()) b.set_provenance(k, v.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedBasemapFile, fmt::format("provenance file '{}': {}", meta_path.string(), e.what()));
    }
  }
  return b;
}

}  // namespace scimap

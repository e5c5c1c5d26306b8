#include "scimap/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/export.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

double log_weight(std::int64_t n) {
  return std::log10(static_cast<double>(n) + 1.0);
}

std::int64_t OverlaySet::matched_total() const {
  std::int64_t t = 0;
  for (const auto& r : rows) t += r.n_publ;
  return t;
}

std::int64_t OverlaySet::unmatched_total() const {
  std::int64_t t = 0;
  for (const auto& [title, n] : unmatched) t += n;
  return t;
}

OverlaySet build_overlay(const WosTally& tally, const Basemap& basemap, double gamma, std::string name) {
  const std::size_t column = basemap.require_gamma(gamma);
  OverlaySet out;
  out.name = std::move(name);
  out.gamma = basemap.gammas()[column];

  // merge keys that only differ before normalization
  std::map<std::string, std::int64_t> counts;
  for (const auto& [title, n] : tally.counts) counts[normalize_title(title)] += n;

  for (const auto& [title, n] : counts) {
    if (basemap.find_title(title) == nullptr) out.unmatched.emplace_back(title, n);
  }
  for (const auto& row : basemap.rows()) {
    auto it = counts.find(row.normalized_title);
    if (it == counts.end() || it->second < 1) continue;
    out.rows.push_back({row.id, row.full_title, row.x, row.y, row.clusters[column], it->second, log_weight(it->second)});
  }
  return out;
}

void write_overlay_table(std::ostream& out, const OverlaySet& overlay) {
  out << "full_title,npubl,weight,cluster,x,y\n";
  for (const auto& r : overlay.rows) {
    out << csv_field(r.full_title) << ',' << r.n_publ << ',' << format_fixed(r.weight, 5) << ',' << r.cluster << ','
        << format_fixed(r.x, 6) << ',' << format_fixed(r.y, 6) << '\n';
  }
}

OverlayOutputs write_overlay_outputs(const OverlaySet& overlay, const std::filesystem::path& dir,
                                     const std::string& map_name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  OverlayOutputs outputs;
  outputs.map_file = dir / map_name;
  outputs.table_file = dir / "overlay_table.csv";
  write_vos_map(vos_rows(overlay), outputs.map_file);
  auto out = open_output(outputs.table_file);
  write_overlay_table(out, overlay);
  finish_output(out, outputs.table_file);
  if (overlay.rows.empty()) {
    outputs.warnings.push_back(fmt::format("{}: no journal of overlay '{}' matched the basemap",
                                           error_name(ErrorCode::EmptyOverlay), overlay.name));
  }
  return outputs;
}

OverlaySet read_overlay_table(std::istream& in, const Basemap& basemap, double gamma, std::string name) {
  const std::size_t column = basemap.require_gamma(gamma);
  LineReader reader(in);
  std::string line;
  if (!reader.next(line) || trim(line) != "full_title,npubl,weight,cluster,x,y") {
    throw Error(ErrorCode::MalformedFile, "overlay table: unexpected header");
  }
  OverlaySet out;
  out.name = std::move(name);
  out.gamma = basemap.gammas()[column];
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    if (!f || f->size() != 6) {
      throw Error(ErrorCode::MalformedFile, fmt::format("overlay table line {}: expected 6 fields", reader.line_number()));
    }
    auto n = parse_int((*f)[1]);
    auto w = parse_double((*f)[2]);
    if (!n || *n < 1 || !w) {
      throw Error(ErrorCode::MalformedFile, fmt::format("overlay table line {}: bad npubl or weight", reader.line_number()));
    }
    const auto* row = basemap.find_title(normalize_title((*f)[0]));
    if (row == nullptr) {
      throw Error(ErrorCode::OverlayBasemapMismatch,
                  fmt::format("overlay table line {}: '{}' is not in the basemap", reader.line_number(), (*f)[0]));
    }
    out.rows.push_back({row->id, row->full_title, row->x, row->y, row->clusters[column], *n, *w});
  }
  return out;
}

}  // namespace scimap

#include "scimap/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "scimap/artifacts.hpp"
#include "scimap/basemap.hpp"
#include "scimap/citation_matrix.hpp"
#include "scimap/clustering.hpp"
#include "scimap/config.hpp"
#include "scimap/error.hpp"
#include "scimap/export.hpp"
#include "scimap/graph.hpp"
#include "scimap/io.hpp"
#include "scimap/layout.hpp"
#include "scimap/overlay.hpp"
#include "scimap/similarity.hpp"
#include "scimap/synthetic.hpp"
#include "scimap/text.hpp"
#include "scimap/wos.hpp"

namespace scimap {

namespace {

namespace fs = std::filesystem;

const CLI::Validator kTauRange(
    [](std::string& s) -> std::string {
      auto v = parse_double(s);
      if (!v || !(*v >= 0.0 && *v < 1.0)) return fmt::format("tau must lie in [0, 1), got {}", s);
      return {};
    },
    "in [0, 1)");

const CLI::Validator kPositive(
    [](std::string& s) -> std::string {
      auto v = parse_double(s);
      if (!v || !(*v > 0.0)) return fmt::format("value must be > 0, got {}", s);
      return {};
    },
    "> 0");

// Settings shared by the staged subcommands and `pipeline`.
struct Options {
  PipelineConfig cfg;
  std::string direction = "cited";
  std::string weights = "uniform";

  fs::path graph, layout, clusters, basemap, out, stats_out, overlay_dir;
  std::vector<fs::path> overlay_tables;
  std::vector<std::string> overlay_names;
  std::string format;
  std::optional<double> single_gamma;
  std::string name = "overlay";
  std::string map_name;

  PlantedMatrixSpec synth;
  fs::path synth_journals = "journals.csv", synth_triplets = "triplets.csv", synth_data;
  int synth_data_journals = 100, synth_data_unknown = 3;
  std::uint64_t synth_data_seed = 7;
};

void finalize(Options& o) {
  o.cfg.direction = *parse_direction(o.direction);
  o.cfg.weights = *parse_stress_weights(o.weights);
  o.cfg.validate();
}

// Keys describing the computation only; paths are left out so identical runs
// into different directories stamp identical provenance.
std::map<std::string, std::string> stamp(const PipelineConfig& cfg) {
  auto kv = cfg.to_map();
  for (const char* k : {"journals", "triplets", "data", "out-dir"}) kv.erase(k);
  std::map<std::string, std::string> out;
  for (auto& [k, v] : kv) out["config." + k] = v;
  return out;
}

void print_stats(std::ostream& out, const MatrixStats& s) {
  out << fmt::format("journals {}\nnonzero {}\ngrand_total {}\nfill_rate {:.6f}\nmean_nonzero {:.4f}\n", s.n,
                     s.nonzero_count, s.grand_total, s.fill_rate, s.mean_nonzero);
}

Layout compute_layout(const SimilarityGraph& g, const PipelineConfig& cfg) {
  if (cfg.layout_algorithm == "fr") return fr_layout(g, {cfg.layout_seed, cfg.fr_iterations});
  return mds_layout(to_distance(g, cfg.d_max), {cfg.weights, cfg.layout_seed, cfg.max_iter, cfg.tol});
}

std::vector<Clustering> compute_clusterings(const SimilarityGraph& g, const PipelineConfig& cfg) {
  std::vector<Clustering> out;
  for (double gamma : cfg.gammas) out.push_back(louvain(g, gamma, cfg.cluster_seed));
  return out;
}

void report_clusterings(std::ostream& out, const std::vector<Clustering>& cs) {
  for (const auto& c : cs) {
    out << fmt::format("gamma {} communities {} Q {:.6f}\n", gamma_key(c.gamma), c.community_count, c.modularity);
  }
}

int run_pipeline(const Options& o, std::ostream& out, std::ostream& err) {
  const auto& cfg = o.cfg;
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);

  const auto m = load_citation_matrix(cfg.journals, cfg.triplets);
  print_stats(out, matrix_stats(m));
  const auto graph = cosine_normalize(m, cfg.direction, cfg.tau);
  save_graph(graph, dir / "graph.txt");
  out << fmt::format("similarity {} tau {} edges {}\n", to_string(cfg.direction), format_exact(cfg.tau),
                     graph.edge_count());
  const auto comp = largest_component(graph);
  save_graph(comp.graph, dir / "component.txt");
  out << fmt::format("component nodes {} edges {} fraction {:.4f}\n", comp.node_count, comp.edge_count,
                     comp.node_fraction);

  const auto layout = compute_layout(comp.graph, cfg);
  save_layout(layout, dir / "layout.csv", stamp(cfg));
  out << fmt::format("layout {} iterations {} kruskal {:.6f}\n", layout.provenance.algorithm,
                     layout.provenance.iterations, layout.provenance.kruskal_stress);
  const auto clusterings = compute_clusterings(comp.graph, cfg);
  save_clusters(clusterings, dir / "clusters.csv");
  report_clusterings(out, clusterings);

  Basemap basemap = build_basemap(comp.graph, layout, clusterings, m.registry());
  for (const auto& [k, v] : stamp(cfg)) basemap.set_provenance(k, v);
  save_basemap(basemap, dir / "basemap.csv");
  const std::string map_file = fmt::format("{}_map.txt", to_string(cfg.direction));
  write_vos_map(vos_rows(basemap, cfg.gammas.front()), dir / map_file);

  std::vector<OverlaySet> overlays;
  if (!cfg.data.empty()) {
    const auto tally = parse_wos_file(cfg.data);
    for (const auto& w : tally.warnings) err << "warning: " << w << '\n';
    overlays.push_back(build_overlay(tally, basemap, cfg.gammas.front(), cfg.data.stem().string()));
    const auto outputs = write_overlay_outputs(overlays.back(), dir / "overlay", fmt::format("{}.txt", to_string(cfg.direction)));
    for (const auto& w : outputs.warnings) err << "warning: " << w << '\n';
    out << fmt::format("overlay matched {} journals ({} publications), unmatched {} titles\n",
                       overlays.back().rows.size(), overlays.back().matched_total(), overlays.back().unmatched.size());
  }
  write_bundle(basemap, overlays, dir / "bundle.json");
  out << "wrote " << (dir / "basemap.csv").string() << ", " << (dir / map_file).string() << ", "
      << (dir / "bundle.json").string() << '\n';
  return 0;
}

// Appends `--key value` for config-file keys the chosen subcommand accepts
// and the command line did not already set.
std::vector<std::string> apply_config_file(CLI::App& app, std::vector<std::string> args) {
  fs::path config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config.empty()) return args;

  CLI::App* target = &app;
  for (const auto& a : args) {
    if (a.starts_with('-')) continue;
    CLI::App* sub = nullptr;
    try {
      sub = target->get_subcommand(a);
    } catch (const CLI::OptionNotFound&) {
      sub = nullptr;
    }
    if (sub == nullptr) break;
    target = sub;
  }
  for (const auto& [key, value] : read_key_values(config)) {
    const std::string flag = "--" + key;
    if (target->get_option_no_throw(flag) == nullptr) continue;
    const bool given = std::any_of(args.begin(), args.end(),
                                   [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
    if (given) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Journal citation maps: similarity, layout, clustering, basemaps and overlays", "scimap"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--config", "key = value file; keys are flag names without dashes");

  Options o;
  auto add_direction = [&](CLI::App* sub) {
    sub->add_option("--direction", o.direction, "cited or citing")->check(CLI::IsMember({"cited", "citing"}));
  };
  auto add_layout_flags = [&](CLI::App* sub) {
    sub->add_option("--algo", o.cfg.layout_algorithm, "mds or fr")->check(CLI::IsMember({"mds", "fr"}));
    sub->add_option("--weights", o.weights, "mds stress weights: uniform or inverse-square")
        ->check(CLI::IsMember({"uniform", "inverse-square"}));
    sub->add_option("--seed", o.cfg.layout_seed, "layout seed");
    sub->add_option("--max-iter", o.cfg.max_iter, "mds iteration cap")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", o.cfg.tol, "mds relative stress decrease to stop at")->check(CLI::NonNegativeNumber);
    sub->add_option("--iterations", o.cfg.fr_iterations, "fr iterations")->check(CLI::NonNegativeNumber);
    sub->add_option("--d-max", o.cfg.d_max, "distance for unlinked pairs")->check(kPositive);
  };
  auto add_gammas = [&](CLI::App* sub, const char* seed_flag) {
    sub->add_option("--gamma", o.cfg.gammas, "resolution (repeatable)")->check(kPositive)->expected(1, -1)
        ->take_all()->allow_extra_args(false);
    sub->add_option(seed_flag, o.cfg.cluster_seed, "clustering seed");
  };

  auto* synth = app.add_subcommand("synth", "generate a synthetic citation matrix (and optionally a WoS export)");
  synth->add_option("--journals-out", o.synth_journals);
  synth->add_option("--triplets-out", o.synth_triplets);
  synth->add_option("--n", o.synth.journals, "journal count")->check(CLI::PositiveNumber);
  synth->add_option("--blocks", o.synth.blocks, "planted groups")->check(CLI::PositiveNumber);
  synth->add_option("--p-in", o.synth.p_in)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--p-adjacent", o.synth.p_adjacent)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--p-out", o.synth.p_out)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", o.synth.seed);
  synth->add_option("--data-out", o.synth_data, "also write a WoS tagged export here");
  synth->add_option("--data-journals", o.synth_data_journals)->check(CLI::NonNegativeNumber);
  synth->add_option("--data-unknown", o.synth_data_unknown)->check(CLI::NonNegativeNumber);
  synth->add_option("--data-seed", o.synth_data_seed);

  auto* ingest = app.add_subcommand("ingest", "validate a citation matrix and print its statistics");
  ingest->add_option("--journals", o.cfg.journals)->required();
  ingest->add_option("--triplets", o.cfg.triplets)->required();
  ingest->add_option("--stats-out", o.stats_out, "also write the statistics as JSON");

  auto* similarity = app.add_subcommand("similarity", "cosine-normalize and threshold");
  similarity->add_option("--journals", o.cfg.journals)->required();
  similarity->add_option("--triplets", o.cfg.triplets)->required();
  add_direction(similarity);
  similarity->add_option("--tau", o.cfg.tau, "keep cosine > tau")->check(kTauRange);
  similarity->add_option("--out", o.out, "graph file")->required();

  auto* component = app.add_subcommand("component", "keep the largest connected component");
  component->add_option("--graph", o.graph)->required();
  component->add_option("--out", o.out)->required();

  auto* layout = app.add_subcommand("layout", "2-D layout of a connected graph");
  layout->add_option("--graph", o.graph)->required();
  add_layout_flags(layout);
  layout->add_option("--out", o.out)->required();

  auto* cluster = app.add_subcommand("cluster", "Louvain communities at one or more resolutions");
  cluster->add_option("--graph", o.graph)->required();
  add_gammas(cluster, "--seed");
  cluster->add_option("--out", o.out)->required();

  auto* basemap = app.add_subcommand("basemap", "build or export a basemap");
  basemap->require_subcommand(1);
  auto* basemap_build = basemap->add_subcommand("build", "join graph, layout, clusters and titles");
  basemap_build->add_option("--graph", o.graph)->required();
  basemap_build->add_option("--layout", o.layout)->required();
  basemap_build->add_option("--clusters", o.clusters)->required();
  basemap_build->add_option("--journals", o.cfg.journals)->required();
  basemap_build->add_option("--out", o.out)->required();
  auto* basemap_export = basemap->add_subcommand("export", "write a basemap as a VOSviewer map file");
  basemap_export->add_option("--basemap", o.basemap)->required();
  basemap_export->add_option("--gamma", o.single_gamma)->check(kPositive);
  basemap_export->add_option("--out", o.out)->required();

  auto* overlay = app.add_subcommand("overlay", "project a WoS export onto a basemap");
  overlay->add_option("--data", o.cfg.data, "WoS tagged export")->required();
  overlay->add_option("--basemap", o.basemap)->required();
  overlay->add_option("--gamma", o.single_gamma)->check(kPositive);
  overlay->add_option("--out-dir", o.overlay_dir, "output directory")->required();
  overlay->add_option("--name", o.name, "overlay name");
  overlay->add_option("--map-name", o.map_name, "map file name (default <direction>.txt)");

  auto* exporter = app.add_subcommand("export", "write Pajek, VOSviewer, GEXF or viewer-bundle files");
  exporter->add_option("--format", o.format)->required()->check(CLI::IsMember({"pajek", "vos", "gexf", "bundle"}));
  exporter->add_option("--graph", o.graph);
  exporter->add_option("--layout", o.layout);
  exporter->add_option("--clusters", o.clusters);
  exporter->add_option("--journals", o.cfg.journals);
  exporter->add_option("--basemap", o.basemap);
  exporter->add_option("--gamma", o.single_gamma)->check(kPositive);
  exporter->add_option("--overlay", o.overlay_tables, "overlay_table.csv (repeatable, bundle only)");
  exporter->add_option("--overlay-name", o.overlay_names, "name per --overlay");
  exporter->add_option("--out", o.out)->required();

  auto* pipeline = app.add_subcommand("pipeline", "run every stage: matrix to basemap, overlay and bundle");
  pipeline->add_option("--journals", o.cfg.journals)->required();
  pipeline->add_option("--triplets", o.cfg.triplets)->required();
  pipeline->add_option("--data", o.cfg.data, "optional WoS export to overlay");
  pipeline->add_option("--out-dir", o.cfg.out_dir)->required();
  add_direction(pipeline);
  pipeline->add_option("--tau", o.cfg.tau, "keep cosine > tau")->check(kTauRange);
  add_layout_flags(pipeline);
  add_gammas(pipeline, "--cluster-seed");

  std::vector<std::string> args;
  try {
    args = apply_config_file(app, raw_args);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
    finalize(o);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*synth) {
      const auto planted = planted_citation_matrix(o.synth);
      save_citation_matrix(planted.matrix, o.synth_journals, o.synth_triplets);
      print_stats(out, matrix_stats(planted.matrix));
      if (!o.synth_data.empty()) {
        const auto docs =
            synthetic_document_set(planted.matrix.registry(), o.synth_data_journals, o.synth_data_unknown, o.synth_data_seed);
        auto f = open_output(o.synth_data);
        write_wos_export(f, docs);
        finish_output(f, o.synth_data);
      }
    } else if (*ingest) {
      const auto m = load_citation_matrix(o.cfg.journals, o.cfg.triplets);
      const auto s = matrix_stats(m);
      print_stats(out, s);
      if (!o.stats_out.empty()) {
        nlohmann::json j{{"n", s.n},
                         {"nonzero_count", s.nonzero_count},
                         {"grand_total", s.grand_total},
                         {"fill_rate", s.fill_rate},
                         {"mean_nonzero", s.mean_nonzero}};
        auto f = open_output(o.stats_out);
        f << j.dump(2) << '\n';
        finish_output(f, o.stats_out);
      }
    } else if (*similarity) {
      const auto m = load_citation_matrix(o.cfg.journals, o.cfg.triplets);
      const auto g = cosine_normalize(m, o.cfg.direction, o.cfg.tau);
      save_graph(g, o.out);
      out << fmt::format("nodes {} edges {}\n", g.node_count(), g.edge_count());
    } else if (*component) {
      const auto c = largest_component(load_graph(o.graph));
      save_graph(c.graph, o.out);
      out << fmt::format("nodes {} edges {} fraction {:.4f}\n", c.node_count, c.edge_count, c.node_fraction);
    } else if (*layout) {
      const auto l = compute_layout(load_graph(o.graph), o.cfg);
      auto extra = stamp(o.cfg);
      for (const char* k : {"config.direction", "config.tau", "config.gamma", "config.cluster-seed"}) extra.erase(k);
      save_layout(l, o.out, extra);
      out << fmt::format("{} iterations {} kruskal {:.6f}\n", l.provenance.algorithm, l.provenance.iterations,
                         l.provenance.kruskal_stress);
    } else if (*cluster) {
      const auto cs = compute_clusterings(load_graph(o.graph), o.cfg);
      save_clusters(cs, o.out);
      report_clusterings(out, cs);
    } else if (*basemap_build) {
      const auto g = load_graph(o.graph);
      std::ifstream journals_in = open_input(o.cfg.journals);
      const auto registry = read_journals(journals_in);
      const auto b = build_basemap(g, load_layout(o.layout), load_clusters(o.clusters), registry);
      save_basemap(b, o.out);
      out << fmt::format("rows {} resolutions {}\n", b.rows().size(), b.gammas().size());
    } else if (*basemap_export) {
      const auto b = load_basemap(o.basemap);
      write_vos_map(vos_rows(b, o.single_gamma.value_or(b.gammas().front())), o.out);
    } else if (*overlay) {
      const auto b = load_basemap(o.basemap);
      const auto tally = parse_wos_file(o.cfg.data);
      for (const auto& w : tally.warnings) err << "warning: " << w << '\n';
      const auto set = build_overlay(tally, b, o.single_gamma.value_or(b.gammas().front()), o.name);
      std::string map_name = o.map_name;
      if (map_name.empty()) {
        auto it = b.provenance().find("direction");
        map_name = it != b.provenance().end() ? it->second + ".txt" : "overlay_map.txt";
      }
      const auto outputs = write_overlay_outputs(set, o.overlay_dir, map_name);
      for (const auto& w : outputs.warnings) err << "warning: " << w << '\n';
      out << fmt::format("records {} matched {} journals ({} publications); unmatched {} titles ({} publications)\n",
                         tally.record_count, set.rows.size(), set.matched_total(), set.unmatched.size(),
                         set.unmatched_total());
      for (const auto& [title, n] : set.unmatched) out << "unmatched\t" << title << '\t' << n << '\n';
    } else if (*exporter) {
      if (o.format == "pajek" || o.format == "gexf") {
        if (o.graph.empty()) throw Error(ErrorCode::InvalidArgument, "--graph is required for this format");
        const auto g = load_graph(o.graph);
        std::optional<JournalRegistry> registry;
        if (!o.cfg.journals.empty() && fs::exists(o.cfg.journals)) {
          std::ifstream in = open_input(o.cfg.journals);
          registry = read_journals(in);
        }
        const auto labels = journal_labels(g, registry ? &*registry : nullptr);
        if (o.format == "pajek") {
          std::optional<Layout> l;
          if (!o.layout.empty()) l = load_layout(o.layout);
          write_pajek(g, l ? &*l : nullptr, labels, o.out);
        } else {
          if (o.layout.empty() || o.clusters.empty()) {
            throw Error(ErrorCode::InvalidArgument, "gexf needs --layout and --clusters");
          }
          const auto cs = load_clusters(o.clusters);
          const double gamma = o.single_gamma.value_or(cs.front().gamma);
          auto it = std::find_if(cs.begin(), cs.end(), [&](const Clustering& c) { return gamma_key(c.gamma) == gamma_key(gamma); });
          if (it == cs.end()) throw Error(ErrorCode::UnknownGamma, fmt::format("no clustering at resolution {}", gamma_key(gamma)));
          write_gexf(g, load_layout(o.layout), *it, labels, o.out);
        }
      } else {
        if (o.basemap.empty()) throw Error(ErrorCode::InvalidArgument, "--basemap is required for this format");
        const auto b = load_basemap(o.basemap);
        const double gamma = o.single_gamma.value_or(b.gammas().front());
        if (o.format == "vos") {
          write_vos_map(vos_rows(b, gamma), o.out);
        } else {
          std::vector<OverlaySet> sets;
          for (std::size_t k = 0; k < o.overlay_tables.size(); ++k) {
            std::ifstream in = open_input(o.overlay_tables[k]);
            const std::string name = k < o.overlay_names.size() ? o.overlay_names[k]
                                                                 : o.overlay_tables[k].parent_path().filename().string();
            sets.push_back(read_overlay_table(in, b, gamma, name.empty() ? fmt::format("overlay{}", k + 1) : name));
          }
          write_bundle(b, sets, o.out);
        }
      }
    } else if (*pipeline) {
      return run_pipeline(o, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace scimap

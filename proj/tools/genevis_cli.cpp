// genevis: serve the JSON API, validate dataset files, and batch-compute views.
//
// Exit codes: 0 success, 1 validation or domain error, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "genevis/http_service.hpp"
#include "genevis/payload.hpp"
#include "genevis/session.hpp"

namespace {

using namespace genevis;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

void add_engine_options(CLI::App* app, EngineConfig& cfg) {
  auto& l = cfg.layout;
  app->add_option("--repulsion", l.repulsion, "Pairwise repulsion constant")->capture_default_str();
  app->add_option("--stiffness", l.stiffness, "Spring stiffness")->capture_default_str();
  app->add_option("--rest-length", l.rest_length, "Spring rest length")->capture_default_str();
  app->add_option("--damping", l.damping, "Velocity damping in (0,1)")->capture_default_str();
  app->add_option("--gravity", l.gravity, "Pull toward the canvas center")->capture_default_str();
  app->add_option("--max-step", l.max_step, "Per-node displacement clamp")->capture_default_str();
  app->add_option("--epsilon", l.epsilon, "Convergence threshold on summed displacement")
      ->capture_default_str();
  app->add_option("--max-iters", l.max_iters, "Iteration cap")->capture_default_str();
  app->add_option("--dim-opacity", cfg.enrichment.dim_opacity,
                  "Opacity of clusters without disease genes")
      ->capture_default_str();
}

struct Inputs {
  std::string cluster;
  std::string interactions;
  std::string diseases;
  std::string disease;
  ClusterId cluster_id = 0;
  bool has_cluster_id = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t min_overlap = 1;
  std::string out;
  GeneId gene = 0;
  std::string mode;
  double param = 0.0;
};

std::uint64_t resolve_seed(const Inputs& in) {
  if (in.seed_given) return in.seed;
  std::random_device rd;
  const std::uint64_t seed =
      ((static_cast<std::uint64_t>(rd()) << 32) ^ rd()) & ((1ULL << 53) - 1);
  std::cerr << "seed: " << seed << "\n";
  return seed;
}

int cmd_validate(const Inputs& in) {
  struct Item {
    const char* kind;
    const std::string& path;
  };
  const Item items[] = {{"cluster", in.cluster}, {"interactions", in.interactions},
                        {"diseases", in.diseases}};
  bool ok = true;
  for (const auto& item : items) {
    if (item.path.empty()) continue;
    try {
      const auto text = read_file(item.path);
      std::ostringstream line;
      line << "OK " << item.kind << " " << item.path << ": ";
      if (std::string_view(item.kind) == "cluster") {
        const auto ds = parse_cluster_table(text);
        line << ds.genes.size() << " rows, " << to_string(ds.kind) << ", " << ds.clusters.size()
             << " clusters";
      } else if (std::string_view(item.kind) == "interactions") {
        const auto ds = parse_interaction_table(text);
        line << ds.rows << " rows, " << ds.edges.size() << " edges";
        if (auto loops = ds.self_loop_count()) line << "; warning: " << loops << " self-loop(s)";
      } else {
        const auto ds = parse_disease_table(text);
        line << ds.records.size() << " rows, " << list_diseases(ds).size() << " diseases";
      }
      std::cout << line.str() << "\n";
    } catch (const Error& e) {
      ok = false;
      std::cout << "ERROR " << item.kind << " " << item.path << ": " << error_code_name(e.code())
                << ": " << e.what() << "\n";
    }
  }
  return ok ? kExitOk : kExitDomain;
}

int cmd_layout(const Inputs& in, const EngineConfig& cfg) {
  const auto seed = resolve_seed(in);
  const auto clusters = parse_cluster_table(read_file(in.cluster));
  Json payload;
  if (!in.has_cluster_id) {
    payload = cluster_view_payload(clusters, cfg, in.min_overlap, seed, seed);
  } else {
    const auto interactions = parse_interaction_table(read_file(in.interactions));
    const auto gg =
        make_gene_graph(clusters, interactions, in.cluster_id, cfg);
    payload = gene_view_payload(gg, cfg, seed);
  }
  write_output(in.out, dump_payload(payload));
  return kExitOk;
}

int cmd_enrich(const Inputs& in, const EngineConfig& cfg) {
  const auto clusters = parse_cluster_table(read_file(in.cluster));
  const auto diseases = parse_disease_table(read_file(in.diseases));
  const auto dmap = build_disease_gene_map(diseases, in.disease);

  auto params = cfg.enrichment;
  params.membership_threshold = cfg.membership_threshold;
  auto rows = cluster_overlay(clusters, dmap, params);
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (a.ease_p != b.ease_p) return a.ease_p < b.ease_p;
    return clusters.clusters[a.cluster] < clusters.clusters[b.cluster];
  });
  std::cout << "cluster\tn\tk\tease_p\tcolor_class\n";
  for (const auto& r : rows) {
    char p[40];
    std::snprintf(p, sizeof p, "%.12g", r.ease_p);
    std::cout << clusters.clusters[r.cluster] << '\t' << r.cluster_size << '\t' << r.cluster_hits
              << '\t' << p << '\t' << to_string(r.color_class) << '\n';
  }

  if (!in.out.empty()) {
    Json payload;
    if (!in.has_cluster_id) {
      payload = cluster_overlay_payload(clusters, dmap, cfg, in.min_overlap);
    } else {
      const auto interactions = parse_interaction_table(read_file(in.interactions));
      payload = gene_overlay_payload(
          make_gene_graph(clusters, interactions, in.cluster_id, cfg), dmap,
          cfg);
    }
    write_output(in.out, dump_payload(payload));
  }
  return kExitOk;
}

int cmd_highlight(const Inputs& in, const EngineConfig& cfg) {
  const auto clusters = parse_cluster_table(read_file(in.cluster));
  const auto interactions = parse_interaction_table(read_file(in.interactions));
  const auto gg = make_gene_graph(clusters, interactions, in.cluster_id, cfg);
  const auto result = highlight(gg, in.gene, parse_highlight_mode(in.mode), in.param);
  write_output(in.out, dump_payload(highlight_payload(in.cluster_id, result)));
  return kExitOk;
}

int cmd_serve(const std::string& listen, ServiceConfig config) {
  std::tie(config.host, config.port) = parse_listen_address(listen);
  HttpService service(std::move(config));
  const int port = service.bind();
  std::cerr << "genevis listening on port " << port << "\n";
  service.listen();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster/gene graph layout, enrichment and highlight engine"};
  app.require_subcommand(1);

  EngineConfig cfg;
  Inputs in;
  ServiceConfig service;
  std::string listen = "127.0.0.1:8080";
  std::uint64_t fixed_seed = 0;

  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
  serve->add_option("--listen", listen, "host:port")->envname("GENEVIS_LISTEN")->capture_default_str();
  serve->add_option("--static-dir", service.static_dir, "Directory with the UI bundle")
      ->envname("GENEVIS_STATIC_DIR");
  serve->add_option("--body-limit", service.body_limit, "Maximum upload size in bytes")
      ->envname("GENEVIS_BODY_LIMIT")
      ->capture_default_str();
  serve->add_option("--cors-origin", service.cors_origin, "Allowed CORS origin")
      ->envname("GENEVIS_CORS_ORIGIN")
      ->capture_default_str();
  auto* serve_seed = serve->add_option("--seed", fixed_seed, "Seed for every new session");
  add_engine_options(serve, cfg);

  auto* validate = app.add_subcommand("validate", "Check dataset files");
  validate->add_option("--cluster", in.cluster, "Gene cluster table");
  validate->add_option("--interactions", in.interactions, "Gene-gene interaction table");
  validate->add_option("--diseases", in.diseases, "Gene-disease association table");

  auto* layout = app.add_subcommand("layout", "Emit the cluster view, or one gene view, as JSON");
  layout->add_option("--cluster", in.cluster, "Gene cluster table")->required();
  layout->add_option("--interactions", in.interactions, "Gene-gene interaction table");
  auto* layout_cid = layout->add_option("--cluster-id", in.cluster_id, "Emit this cluster's gene view");
  auto* layout_seed = layout->add_option("--seed", in.seed, "Layout and color seed");
  layout->add_option("--min-overlap", in.min_overlap, "Minimum shared genes per edge")
      ->capture_default_str();
  layout->add_option("--out", in.out, "Output file (default stdout)");
  add_engine_options(layout, cfg);

  auto* enrich = app.add_subcommand("enrich", "Print the EASE enrichment table for one disease");
  enrich->add_option("--cluster", in.cluster, "Gene cluster table")->required();
  enrich->add_option("--diseases", in.diseases, "Gene-disease association table")->required();
  enrich->add_option("--disease", in.disease, "Disease/trait label")->required();
  enrich->add_option("--interactions", in.interactions, "Needed with --cluster-id");
  auto* enrich_cid = enrich->add_option("--cluster-id", in.cluster_id, "Write the gene overlay instead");
  enrich->add_option("--min-overlap", in.min_overlap, "Minimum shared genes per edge")
      ->capture_default_str();
  enrich->add_option("--out", in.out, "Also write the overlay JSON payload here");
  add_engine_options(enrich, cfg);

  auto* hl = app.add_subcommand("highlight", "Emit a gene view highlight query result as JSON");
  hl->add_option("--cluster", in.cluster, "Gene cluster table")->required();
  hl->add_option("--interactions", in.interactions, "Gene-gene interaction table")->required();
  hl->add_option("--cluster-id", in.cluster_id, "Cluster whose gene view is queried")->required();
  hl->add_option("--gene", in.gene, "Origin gene Entrez id")->required();
  hl->add_option("--mode", in.mode, "levels | threshold | top_n")->required();
  hl->add_option("--param", in.param, "Level count, score threshold or n")->required();
  hl->add_option("--out", in.out, "Output file (default stdout)");
  add_engine_options(hl, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      if (in.cluster.empty() && in.interactions.empty() && in.diseases.empty()) {
        std::cerr << "validate: give at least one of --cluster, --interactions, --diseases\n";
        return kExitUsage;
      }
      return cmd_validate(in);
    }
    if (*layout) {
      in.seed_given = layout_seed->count() > 0;
      in.has_cluster_id = layout_cid->count() > 0;
      if (in.has_cluster_id && in.interactions.empty()) {
        std::cerr << "layout: --cluster-id needs --interactions\n";
        return kExitUsage;
      }
      return cmd_layout(in, cfg);
    }
    if (*enrich) {
      in.has_cluster_id = enrich_cid->count() > 0;
      if (in.has_cluster_id && in.interactions.empty()) {
        std::cerr << "enrich: --cluster-id needs --interactions\n";
        return kExitUsage;
      }
      return cmd_enrich(in, cfg);
    }
    if (*hl) return cmd_highlight(in, cfg);
    if (*serve) {
      service.engine = cfg;
      if (serve_seed->count() > 0) service.fixed_seed = fixed_seed;
      return cmd_serve(listen, std::move(service));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

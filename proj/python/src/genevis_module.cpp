#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genevis/enrichment.hpp"
#include "genevis/genemodel.hpp"
#include "genevis/highlight.hpp"
#include "genevis/ingest.hpp"
#include "genevis/layout.hpp"
#include "genevis/payload.hpp"

namespace py = pybind11;
using namespace genevis;

namespace {

py::dict highlight_dict(const HighlightResult& r) {
  py::list nodes, edges;
  for (const auto& n : r.nodes) nodes.append(py::make_tuple(n.id, n.level));
  for (const auto& e : r.edges) edges.append(py::make_tuple(e.a, e.b, e.score));
  py::dict d;
  d["origin"] = r.origin;
  d["mode"] = std::string(to_string(r.mode));
  d["parameter"] = r.parameter;
  d["nodes"] = nodes;
  d["edges"] = edges;
  return d;
}

EngineConfig config_with(std::size_t max_iters) {
  EngineConfig cfg;
  if (max_iters > 0) cfg.layout.max_iters = max_iters;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cluster/gene graph engine: ingest, geometry, layout, enrichment, highlight";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() {
    return py::object(py::exception<Error>(m, "GenevisError", PyExc_ValueError));
  });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = error_type.get_stored()(e.what());
      err.attr("code") = std::string(error_code_name(e.code()));
      err.attr("location") = e.location()
                                 ? py::object(py::make_tuple(e.location()->row, e.location()->column))
                                 : py::object(py::none());
      py::set_error(error_type.get_stored(), err);
    }
  });

  m.def("detect_delimiter", [](std::string_view line) {
    return detect_delimiter(line) == Delimiter::Tab ? "tab" : "comma";
  });

  py::class_<ClusterDataset>(m, "ClusterDataset")
      .def_property_readonly("genes",
                             [](const ClusterDataset& d) {
                               py::list out;
                               for (const auto& g : d.genes) out.append(py::make_tuple(g.id, g.name));
                               return out;
                             })
      .def_readonly("clusters", &ClusterDataset::clusters)
      .def_property_readonly("memberships",
                             [](const ClusterDataset& d) {
                               py::list out;
                               for (const auto& mb : d.memberships) {
                                 out.append(py::make_tuple(d.genes[mb.gene].id, mb.cluster,
                                                           mb.association));
                               }
                               return out;
                             })
      .def_property_readonly("kind", [](const ClusterDataset& d) { return std::string(to_string(d.kind)); })
      .def("__eq__", [](const ClusterDataset& a, const ClusterDataset& b) { return a == b; });

  py::class_<InteractionDataset>(m, "InteractionDataset")
      .def_property_readonly("edges",
                             [](const InteractionDataset& d) {
                               py::list out;
                               for (const auto& e : d.edges) out.append(py::make_tuple(e.source, e.target, e.score));
                               return out;
                             })
      .def_readonly("rows", &InteractionDataset::rows)
      .def_property_readonly("self_loops", &InteractionDataset::self_loop_count);

  py::class_<DiseaseDataset>(m, "DiseaseDataset")
      .def_property_readonly("records", [](const DiseaseDataset& d) {
        py::list out;
        for (const auto& r : d.records) out.append(py::make_tuple(r.disease, r.gene_name, r.p_value));
        return out;
      });

  m.def("parse_cluster_table", &parse_cluster_table, py::arg("content"));
  m.def("parse_interaction_table", &parse_interaction_table, py::arg("content"));
  m.def("parse_disease_table", &parse_disease_table, py::arg("content"));
  m.def("serialize_cluster_table", &serialize_cluster_table, py::arg("dataset"));

  m.def("mean_association", &mean_association, py::arg("dataset"), py::arg("cluster"));
  m.def(
      "node_geometry",
      [](std::size_t gene_count, double mean, double r0) {
        GeometryParams params;
        params.r0 = r0;
        const auto g = node_geometry(gene_count, mean, params);
        return py::make_tuple(g.minor_radius, g.major_radius);
      },
      py::arg("gene_count"), py::arg("mean_association"), py::arg("r0") = GeometryParams{}.r0,
      "Returns (minor_radius, major_radius).");

  py::class_<GeneGraph>(m, "GeneGraph")
      .def_readonly("cluster", &GeneGraph::cluster)
      .def_property_readonly("nodes",
                             [](const GeneGraph& g) {
                               py::list out;
                               for (const auto& n : g.nodes) {
                                 py::list pie;
                                 for (const auto& s : n.pie) pie.append(py::make_tuple(s.cluster, s.fraction));
                                 out.append(py::make_tuple(n.id, n.name, n.radius, pie));
                               }
                               return out;
                             })
      .def_property_readonly("edges", [](const GeneGraph& g) {
        py::list out;
        for (const auto& e : g.edges) out.append(py::make_tuple(e.a, e.b, e.score));
        return out;
      });

  m.def(
      "build_gene_graph",
      [](const ClusterDataset& ds, const InteractionDataset& ia, ClusterId cluster) {
        return build_gene_graph(ds, ia, cluster);
      },
      py::arg("clusters"), py::arg("interactions"), py::arg("cluster"));

  m.def(
      "layout",
      [](std::size_t node_count, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
         std::uint64_t seed, std::size_t max_iters, double gravity, double epsilon) {
        LayoutParams params;
        params.seed = seed;
        params.gravity = gravity;
        params.epsilon = epsilon;
        if (max_iters > 0) params.max_iters = max_iters;
        std::vector<LayoutEdge> springs;
        for (const auto& [a, b, w] : edges) {
          if (a >= node_count || b >= node_count) throw Error(ErrorCode::BadParameter, "edge endpoint out of range");
          springs.push_back({a, b, w});
        }
        const auto state = run_until_converged(init_layout(node_count, params), springs, params);
        py::list pos;
        for (const auto& p : state.positions) pos.append(py::make_tuple(p.x, p.y));
        py::dict d;
        d["positions"] = pos;
        d["iterations"] = state.iteration;
        d["converged"] = state.converged;
        return d;
      },
      py::arg("node_count"), py::arg("edges"), py::arg("seed") = 0, py::arg("max_iters") = 0,
      py::arg("gravity") = LayoutParams{}.gravity, py::arg("epsilon") = LayoutParams{}.epsilon);

  m.def("hypergeom_upper_tail", &hypergeom_upper_tail, py::arg("population"), py::arg("successes"),
        py::arg("draws"), py::arg("k"));
  m.def("ease_score", &ease_score, py::arg("population"), py::arg("successes"), py::arg("draws"),
        py::arg("k"));
  m.def("classify_color", [](double p) { return std::string(to_string(classify_color(p))); });

  m.def(
      "cluster_overlay",
      [](const ClusterDataset& ds, const DiseaseDataset& diseases, std::string_view disease) {
        const auto dmap = build_disease_gene_map(diseases, disease);
        py::list out;
        for (const auto& r : cluster_overlay(ds, dmap)) {
          py::dict d;
          d["cluster"] = r.cluster;
          d["n"] = r.cluster_size;
          d["k"] = r.cluster_hits;
          d["ease_p"] = r.ease_p;
          d["color_class"] = std::string(to_string(r.color_class));
          d["opacity"] = r.opacity;
          out.append(d);
        }
        return out;
      },
      py::arg("clusters"), py::arg("diseases"), py::arg("disease"));

  m.def("highlight_levels",
        [](const GeneGraph& g, GeneId origin, int levels) { return highlight_dict(highlight_levels(g, origin, levels)); });
  m.def("highlight_threshold",
        [](const GeneGraph& g, GeneId origin, double theta) { return highlight_dict(highlight_threshold(g, origin, theta)); });
  m.def("highlight_top_n",
        [](const GeneGraph& g, GeneId origin, int n) { return highlight_dict(highlight_top_n(g, origin, n)); });

  m.def(
      "cluster_view_json",
      [](const ClusterDataset& ds, std::uint64_t seed, std::size_t min_overlap, std::size_t max_iters) {
        return dump_payload(cluster_view_payload(ds, config_with(max_iters), min_overlap, seed, seed));
      },
      py::arg("clusters"), py::arg("seed"), py::arg("min_overlap") = 1, py::arg("max_iters") = 0,
      "Cluster view payload, byte-identical to the CLI and HTTP service output.");
  m.def(
      "gene_view_json",
      [](const ClusterDataset& ds, const InteractionDataset& ia, ClusterId cluster, std::uint64_t seed,
         std::size_t max_iters) {
        const auto cfg = config_with(max_iters);
        return dump_payload(gene_view_payload(make_gene_graph(ds, ia, cluster, cfg), cfg, seed));
      },
      py::arg("clusters"), py::arg("interactions"), py::arg("cluster"), py::arg("seed"),
      py::arg("max_iters") = 0);
}

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "levelplan/crosscheck.hpp"
#include "levelplan/drawing.hpp"
#include "levelplan/generators.hpp"
#include "levelplan/io.hpp"
#include "levelplan/reductions.hpp"

using namespace levelplan;
using nlohmann::json;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

std::string verdict_json(const std::string& verdict, json extra = json::object()) {
  extra["verdict"] = verdict;
  return extra.dump(2) + "\n";
}

template <class T>
const T& as(const io::Document& d, const std::string& command) {
  if (!std::holds_alternative<T>(d.instance))
    throw PreconditionError(command + ": unsupported instance kind \"" + io::kind_of(d.instance) + "\"");
  return std::get<T>(d.instance);
}

json report_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& v : r) out.push_back(json{{"code", v.code}, {"detail", v.detail}});
  return out;
}

void require_valid(const ValidationReport& r, const std::string& what) {
  if (r.empty()) return;
  std::string msg = what + ": invalid instance";
  for (const auto& v : r) msg += "\n  " + v.code + ": " + v.detail;
  throw PreconditionError(msg);
}

ValidationReport validate_any(const io::Instance& i) {
  return std::visit([](const auto& x) { return validate_instance(x); }, i);
}

json drawing_report_json(const drawing::DrawingReport& r) {
  json out = json::array();
  for (const auto& v : r) out.push_back(json{{"condition", v.condition}, {"detail", v.detail}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level planarity toolkit: gadget reductions, exhaustive deciders, drawings."};
  app.require_subcommand(1);

  Budgets budgets = Budgets::defaults();
  app.add_option("--max-perm-product", budgets.max_perm_product, "Search-node budget of the ordering oracles")
      ->capture_default_str();
  app.add_option("--max-rotation-product", budgets.max_rotation_product,
                 "Per-graph rotation-system budget of the SEFE oracle")
      ->capture_default_str();
  app.add_option("--max-betweenness-elements", budgets.max_betweenness_elements,
                 "Largest Betweenness instance the oracle accepts")
      ->capture_default_str();

  std::string in, out, witness, witness_out, svg, backend = "direct";
  bool drop = false;

  auto* validate = app.add_subcommand("validate", "Check an instance against its invariants");
  validate->add_option("--in", in, "Instance file")->required();

  auto* properize = app.add_subcommand("properize", "Subdivide long edges of a level graph");
  properize->add_option("--in", in, "Instance file")->required();
  properize->add_option("--out", out, "Output file (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Apply one reduction");
  reduce->require_subcommand(1);
  auto* r_thm1 = reduce->add_subcommand("thm1", "Betweenness -> T-level");
  r_thm1->add_flag("--drop-outer-levels", drop, "Omit the two star levels (binary trees only)");
  auto* r_thm2 = reduce->add_subcommand("thm2", "Betweenness -> clustered level");
  auto* r_lemma1 = reduce->add_subcommand("lemma1", "Proper T-level -> SEFE");
  auto* r_lemma3 = reduce->add_subcommand("lemma3", "Proper clustered level -> level-connected");
  auto* r_lemma4 = reduce->add_subcommand("lemma4", "Level-connected clustered level -> T-level");
  for (auto* s : {r_thm1, r_thm2, r_lemma1, r_lemma3, r_lemma4}) {
    s->add_option("--in", in, "Instance file")->required();
    s->add_option("--out", out, "Output file (default stdout)");
  }

  auto* decide = app.add_subcommand("decide", "Decide an instance");
  decide->require_subcommand(1);
  auto* d_btw = decide->add_subcommand("betweenness", "Exhaustive Betweenness oracle");
  auto* d_tlp = decide->add_subcommand("tlp", "T-level planarity");
  auto* d_cl = decide->add_subcommand("cl", "Clustered-level planarity");
  auto* d_sefe = decide->add_subcommand("sefe", "SEFE with connected common graph");
  for (auto* s : {d_btw, d_tlp, d_cl, d_sefe}) {
    s->add_option("--in", in, "Instance file")->required();
    s->add_option("--witness-out", witness_out, "Write the witness here on yes");
  }
  for (auto* s : {d_tlp, d_cl})
    s->add_option("--backend", backend, "direct or sefe")->check(CLI::IsMember({"direct", "sefe"}))->capture_default_str();

  auto* draw = app.add_subcommand("draw", "Straight-line drawing from a witness, validated");
  draw->add_option("--in", in, "Instance file")->required();
  draw->add_option("--witness", witness, "Orderings (or a Betweenness order) file")->required();
  draw->add_option("--svg", svg, "Write SVG here");
  draw->add_option("--out", out, "Write the drawing sidecar here");

  crosscheck::Options cc;
  std::string suite = "thm1", replay, report_path;
  bool timing = false;
  int cc_n = -1, cc_m = -1, cc_k = -1, cc_width = -1, cc_depth = -1;
  auto* check = app.add_subcommand("crosscheck", "Randomized oracle/reduction agreement");
  check->add_option("--suite", suite, "thm1, thm2, lemma1, lemma34 or pipeline")
      ->check(CLI::IsMember({"thm1", "thm2", "lemma1", "lemma34", "pipeline"}))
      ->capture_default_str();
  check->add_option("--trials", cc.trials, "Number of trials")->capture_default_str();
  check->add_option("--seed", cc.seed, "Run seed")->capture_default_str();
  check->add_option("--jobs", cc.jobs, "Worker threads")->capture_default_str();
  check->add_option("--n", cc_n, "Betweenness elements");
  check->add_option("--m", cc_m, "Betweenness triples");
  check->add_option("--k", cc_k, "Levels");
  check->add_option("--width", cc_width, "Maximum vertices per level");
  check->add_option("--depth", cc_depth, "Maximum cluster depth");
  check->add_option("--bundle-dir", cc.bundle_dir, "Write counterexample bundles here");
  check->add_flag("--bundle-all", cc.bundle_all, "Bundle every trial, not only disagreements");
  check->add_option("--report", report_path, "Write the report here (default stdout)");
  check->add_flag("--timing", timing, "Include per-trial timings (not byte-stable)");
  check->add_option("--replay", replay, "Re-run a bundle directory or a directory of bundles");

  gen::GeneratorConfig gc;
  std::string kind = "betweenness", bias = "none";
  auto* generate = app.add_subcommand("gen", "Seeded random instance");
  generate->add_option("--kind", kind, "betweenness, proper-tlevel, proper-cl or level-connected-cl")
      ->check(CLI::IsMember({"betweenness", "proper-tlevel", "proper-cl", "level-connected-cl"}))
      ->capture_default_str();
  generate->add_option("--seed", gc.seed, "Seed")->capture_default_str();
  generate->add_option("--n", gc.n, "Betweenness elements")->capture_default_str();
  generate->add_option("--m", gc.m, "Betweenness triples")->capture_default_str();
  generate->add_option("--k", gc.k, "Levels")->capture_default_str();
  generate->add_option("--width", gc.width, "Maximum vertices per level")->capture_default_str();
  generate->add_option("--depth", gc.depth, "Maximum cluster depth")->capture_default_str();
  generate->add_option("--density", gc.edge_density, "Edge probability")->capture_default_str();
  generate->add_option("--bias", bias, "none, force-sat or force-unsat")
      ->check(CLI::IsMember({"none", "force-sat", "force-unsat"}))
      ->capture_default_str();
  generate->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kYes : kError;
  }

  try {
    if (validate->parsed()) {
      io::Document d;
      try {
        d = io::load(in);
      } catch (const io::SchemaError& e) {
        json f = json::array();
        for (const auto& s : e.failures()) f.push_back(json{{"code", "schema"}, {"detail", s}});
        std::cout << json{{"valid", false}, {"violations", f}}.dump(2) << "\n";
        return kNo;
      } catch (const io::ParseError& e) {
        std::cout << json{{"valid", false}, {"violations", {json{{"code", "parse"}, {"detail", e.what()}}}}}.dump(2)
                  << "\n";
        return kNo;
      }
      auto r = validate_any(d.instance);
      std::cout << json{{"kind", io::kind_of(d.instance)}, {"valid", r.empty()}, {"violations", report_json(r)}}.dump(2)
                << "\n";
      return r.empty() ? kYes : kNo;
    }

    if (properize->parsed()) {
      auto d = io::load(in);
      const auto& g = as<LevelGraph>(d, "properize");
      require_valid(validate_instance(g), "properize");
      auto sub = subdivide_to_proper(g);
      io::Document o;
      o.instance = sub.graph;
      ReductionProvenance p;
      for (const auto& v : g.vertices) p.entries[v.id] = ProvenanceEntry{"original", {}};
      for (const auto& e : sub.map.edges) {
        for (const auto& dummy : e.dummies)
          p.entries[dummy] = ProvenanceEntry{"dummy", {{"lower", e.original.u}, {"upper", e.original.v}}};
      }
      o.provenance = p;
      emit(io::serialize(o), out);
      return kYes;
    }

    if (reduce->parsed()) {
      auto d = io::load(in);
      require_valid(validate_any(d.instance), "reduce");
      io::Document o;
      if (r_thm1->parsed()) {
        auto r = reductions::reduce_betweenness_to_tlevel(as<BetweennessInstance>(d, "reduce thm1"), drop);
        o.instance = r.instance;
        o.provenance = r.provenance;
      } else if (r_thm2->parsed()) {
        auto r = reductions::build_cl_hierarchy(as<BetweennessInstance>(d, "reduce thm2"));
        o.instance = r.instance;
        o.provenance = r.provenance;
      } else if (r_lemma1->parsed()) {
        auto r = reductions::reduce_tlp_to_sefe(as<TLevelInstance>(d, "reduce lemma1"));
        o.instance = r.instance;
        o.provenance = r.provenance;
      } else if (r_lemma3->parsed()) {
        auto r = reductions::make_level_connected(as<CLInstance>(d, "reduce lemma3"));
        o.instance = r.instance;
        o.provenance = r.provenance;
      } else {
        o.instance = reductions::clusters_to_trees(as<CLInstance>(d, "reduce lemma4"));
      }
      emit(io::serialize(o), out);
      return kYes;
    }

    if (decide->parsed()) {
      auto d = io::load(in);
      require_valid(validate_any(d.instance), "decide");
      if (d_btw->parsed()) {
        auto order = oracles::solve_betweenness(as<BetweennessInstance>(d, "decide betweenness"), budgets);
        if (order && !witness_out.empty()) io::write_file(witness_out, io::serialize_order(*order));
        std::cout << verdict_json(order ? "yes" : "no");
        return order ? kYes : kNo;
      }
      if (d_tlp->parsed()) {
        const auto& t = as<TLevelInstance>(d, "decide tlp");
        std::optional<LevelOrdering> cert;
        json extra = json::object();
        if (is_proper(t.graph)) {
          auto r = reductions::decide_proper_tlp(
              t, backend == "sefe" ? reductions::Backend::SefeOracle : reductions::Backend::DirectOracle, budgets);
          cert = r.certificate;
          extra["note"] = r.note;
        } else {
          if (backend == "sefe") throw PreconditionError("decide tlp: the sefe backend needs a proper instance");
          cert = oracles::solve_tlp_exhaustive(t, budgets);
        }
        if (cert && !witness_out.empty()) io::write_file(witness_out, io::serialize_ordering(*cert));
        std::cout << verdict_json(cert ? "yes" : "no", extra);
        return cert ? kYes : kNo;
      }
      if (d_cl->parsed()) {
        const auto& c = as<CLInstance>(d, "decide cl");
        if (!is_proper(c.graph)) {
          if (backend == "sefe") throw PreconditionError("decide cl: the sefe backend needs a proper instance");
          auto o = oracles::check_cl_necessary(c, budgets);
          if (!o) {
            std::cout << verdict_json("no", json{{"method", "necessary-condition"}});
            return kNo;
          }
          if (!witness_out.empty()) io::write_file(witness_out, io::serialize_ordering(*o));
          std::cout << verdict_json("inconclusive",
                                    json{{"method", "necessary-condition"},
                                         {"note", "necessary condition holds; exact only on gadget instances"}});
          return kError;
        }
        auto r = reductions::decide_proper_cl(
            c, budgets, backend == "sefe" ? reductions::Backend::SefeOracle : reductions::Backend::DirectOracle);
        if (r.certificate && !witness_out.empty()) io::write_file(witness_out, io::serialize_ordering(*r.certificate));
        std::cout << verdict_json(r.planar ? "yes" : "no", json{{"note", r.note}});
        return r.planar ? kYes : kNo;
      }
      const auto& s = as<SefeInstance>(d, "decide sefe");
      auto r = oracles::solve_sefe_exhaustive(s, budgets);
      if (r.witness && !witness_out.empty()) io::write_file(witness_out, io::serialize_rotations(*r.witness));
      std::cout << verdict_json(r.embeddable ? "yes" : "no");
      return r.embeddable ? kYes : kNo;
    }

    if (draw->parsed()) {
      auto d = io::load(in);
      require_valid(validate_any(d.instance), "draw");
      LevelDrawing drawing;
      drawing::DrawingReport report;
      const std::string text = io::read_file(witness);
      if (std::holds_alternative<BetweennessInstance>(d.instance)) {
        const auto& b = std::get<BetweennessInstance>(d.instance);
        auto cl = reductions::build_cl_hierarchy(b).instance;
        drawing = drawing::build_cluster_regions(drawing::draw_from_betweenness_solution(b, io::parse_order(text)), cl);
        report = drawing::validate_cl_drawing(drawing, cl);
      } else {
        auto o = io::parse_ordering(text);
        if (std::holds_alternative<CLInstance>(d.instance)) {
          const auto& c = std::get<CLInstance>(d.instance);
          drawing = drawing::build_cluster_regions(drawing::draw_from_ordering(c.graph, o), c);
          report = drawing::validate_cl_drawing(drawing, c);
        } else {
          const LevelGraph& g = std::holds_alternative<TLevelInstance>(d.instance)
                                    ? std::get<TLevelInstance>(d.instance).graph
                                    : as<LevelGraph>(d, "draw");
          drawing = drawing::draw_from_ordering(g, o);
          for (const auto& hit : drawing::segment_crossings(drawing))
            report.push_back({"0", "segments (" + hit.a.u + "," + hit.a.v + ") and (" + hit.b.u + "," + hit.b.v + ") cross"});
          for (const auto& deg : drawing::degeneracies(drawing))
            report.push_back({"degeneracy", "vertex " + deg.vertex + " lies on (" + deg.edge.u + "," + deg.edge.v + ")"});
          if (std::holds_alternative<TLevelInstance>(d.instance)) {
            for (const auto& tree : std::get<TLevelInstance>(d.instance).trees) {
              const auto& row = o.levels.at(static_cast<std::size_t>(tree.level));
              if (!oracles::ordering_is_tree_compatible(tree.root, row, oracles::CompatMode::RealSubsequence))
                report.push_back({"tree", "level " + std::to_string(tree.level) + " violates its constraint tree"});
            }
          }
        }
      }
      if (!svg.empty()) io::write_file(svg, drawing::emit_svg(drawing));
      if (!out.empty()) io::write_file(out, io::serialize_drawing(drawing));
      std::cout << json{{"valid", report.empty()}, {"violations", drawing_report_json(report)}}.dump(2) << "\n";
      return report.empty() ? kYes : kNo;
    }

    if (check->parsed()) {
      if (!replay.empty()) {
        auto replays = crosscheck::replay(replay, budgets);
        emit(crosscheck::to_json(replays), report_path);
        bool disagreement = false;
        for (const auto& r : replays) disagreement = disagreement || r.trial.status == "disagree";
        return disagreement ? kNo : kYes;
      }
      cc.suite = crosscheck::parse_suite(suite);
      cc.budgets = budgets;
      cc.sizes = crosscheck::default_sizes(cc.suite);
      if (cc_n >= 0) cc.sizes.n = cc_n;
      if (cc_m >= 0) cc.sizes.m = cc_m;
      if (cc_k >= 0) cc.sizes.k = cc_k;
      if (cc_width >= 0) cc.sizes.width = cc_width;
      if (cc_depth >= 0) cc.sizes.depth = cc_depth;
      auto report = crosscheck::run(cc);
      emit(crosscheck::to_json(report, timing), report_path);
      if (report.counts["error"] > 0) return kError;
      return report.ok() ? kYes : kNo;
    }

    if (generate->parsed()) {
      gc.kind = gen::parse_kind(kind);
      gc.bias = gen::parse_bias(bias);
      io::Document o;
      std::visit([&](auto&& x) { o.instance = std::move(x); }, gen::generate(gc));
      emit(io::serialize(o), out);
      return kYes;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

#include "levelplan/crosscheck.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

#include "json.hpp"
#include "levelplan/drawing.hpp"
#include "levelplan/reductions.hpp"

namespace levelplan::crosscheck {

using nlohmann::json;
namespace fs = std::filesystem;

Suite parse_suite(const std::string& s) {
  if (s == "thm1") return Suite::Thm1;
  if (s == "thm2") return Suite::Thm2;
  if (s == "lemma1") return Suite::Lemma1;
  if (s == "lemma34") return Suite::Lemma34;
  if (s == "pipeline") return Suite::Pipeline;
  throw PreconditionError("unknown suite: " + s);
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Thm1: return "thm1";
    case Suite::Thm2: return "thm2";
    case Suite::Lemma1: return "lemma1";
    case Suite::Lemma34: return "lemma34";
    case Suite::Pipeline: return "pipeline";
  }
  return "";
}

bool Report::ok() const {
  auto it = counts.find("disagree");
  auto er = counts.find("error");
  return (it == counts.end() || it->second == 0) && (er == counts.end() || er->second == 0);
}

gen::GeneratorConfig default_sizes(Suite s) {
  gen::GeneratorConfig c;
  switch (s) {
    case Suite::Thm1:
    case Suite::Thm2:
      c.kind = gen::Kind::Betweenness;
      c.n = 3;
      c.m = 2;
      break;
    case Suite::Lemma1:
      c.kind = gen::Kind::ProperTLevel;
      c.k = 2;
      c.width = 3;
      break;
    case Suite::Lemma34:
    case Suite::Pipeline:
      c.kind = gen::Kind::LevelConnectedCL;
      c.k = 3;
      c.width = 3;
      break;
  }
  return c;
}

io::Document trial_instance(const Options& options, int index) {
  gen::GeneratorConfig c = options.sizes;
  c.kind = default_sizes(options.suite).kind;
  c.seed = gen::derive_seed(options.seed, static_cast<std::uint64_t>(index));
  io::Document d;
  std::visit([&](auto&& x) { d.instance = std::move(x); }, gen::generate(c));
  return d;
}

namespace {

std::string yn(bool b) { return b ? "yes" : "no"; }

template <class T>
const T& expect(const io::Document& d, Suite suite) {
  if (!std::holds_alternative<T>(d.instance))
    throw PreconditionError("suite " + to_string(suite) + " cannot run on a " + io::kind_of(d.instance) + " instance");
  return std::get<T>(d.instance);
}

/// Fills verdicts; returns whether all checks agree.
bool check(Suite suite, const io::Document& doc, const Budgets& budgets, std::map<std::string, std::string>& v) {
  switch (suite) {
    case Suite::Thm1: {
      const auto& b = expect<BetweennessInstance>(doc, suite);
      bool sat = oracles::solve_betweenness(b, budgets).has_value();
      bool std_mode = oracles::solve_tlp_exhaustive(reductions::reduce_betweenness_to_tlevel(b).instance, budgets).has_value();
      bool drop = oracles::solve_tlp_exhaustive(reductions::reduce_betweenness_to_tlevel(b, true).instance, budgets).has_value();
      v["betweenness"] = yn(sat);
      v["tlevel"] = yn(std_mode);
      v["tlevel-drop"] = yn(drop);
      return sat == std_mode && sat == drop;
    }
    case Suite::Thm2: {
      const auto& b = expect<BetweennessInstance>(doc, suite);
      auto order = oracles::solve_betweenness(b, budgets);
      auto cl = reductions::build_cl_hierarchy(b).instance;
      bool necessary = oracles::check_cl_necessary(cl, budgets).has_value();
      v["betweenness"] = yn(order.has_value());
      v["cl-necessary"] = yn(necessary);
      bool ok = order.has_value() == necessary;
      if (order) {
        auto d = drawing::build_cluster_regions(drawing::draw_from_betweenness_solution(b, *order), cl);
        auto report = drawing::validate_cl_drawing(d, cl);
        v["drawing"] = report.empty() ? "clean" : "violations:" + std::to_string(report.size());
        ok = ok && report.empty();
      }
      return ok;
    }
    case Suite::Lemma1: {
      const auto& t = expect<TLevelInstance>(doc, suite);
      auto o = oracles::solve_tlp_exhaustive(t, budgets);
      auto red = reductions::reduce_tlp_to_sefe(t);
      auto s = oracles::solve_sefe_exhaustive(red.instance, budgets);
      v["tlevel"] = yn(o.has_value());
      v["sefe"] = yn(s.embeddable);
      bool ok = o.has_value() == s.embeddable;
      if (o) {
        auto w = drawing::build_sefe_certificate(t, *o);
        bool valid = oracles::is_sefe_witness(red.instance, w) &&
                     oracles::is_tlevel_witness(t, oracles::decode_sefe_to_orderings(red.instance, red.provenance, w));
        v["certificate"] = valid ? "valid" : "invalid";
        ok = ok && valid;
      }
      return ok;
    }
    case Suite::Lemma34: {
      const auto& c = expect<CLInstance>(doc, suite);
      bool direct = oracles::solve_cl_levelconnected(c, budgets).has_value();
      auto lc = reductions::make_level_connected(c);
      bool connected = is_level_connected(lc.instance).connected && lc.instance.graph.levels == 3 * c.graph.levels - 2;
      bool chain = oracles::solve_tlp_exhaustive(reductions::clusters_to_trees(lc.instance), budgets).has_value();
      v["cl"] = yn(direct);
      v["tlevel"] = yn(chain);
      v["level-connected"] = yn(connected);
      return direct == chain && connected;
    }
    case Suite::Pipeline: {
      const auto& c = expect<CLInstance>(doc, suite);
      bool direct = oracles::solve_cl_levelconnected(c, budgets).has_value();
      auto d = reductions::decide_proper_cl(c, budgets);
      bool projected = !d.certificate || (oracles::ordering_is_crossing_free(c.graph, *d.certificate) &&
                                          oracles::clusters_consecutive(c, *d.certificate));
      v["cl"] = yn(direct);
      v["pipeline"] = yn(d.planar);
      if (d.certificate) v["certificate"] = projected ? "valid" : "invalid";
      return direct == d.planar && projected;
    }
  }
  return false;
}

}  // namespace

Trial evaluate(Suite suite, const io::Document& instance, const Budgets& budgets) {
  Trial t;
  t.instance = instance;
  t.digest = io::digest(io::serialize(instance));
  auto start = std::chrono::steady_clock::now();
  try {
    t.status = check(suite, instance, budgets, t.verdicts) ? "agree" : "disagree";
  } catch (const BudgetExceeded& e) {
    t.status = "budget";
    t.detail = e.what();
  } catch (const std::exception& e) {
    t.status = "error";
    t.detail = e.what();
  }
  t.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return t;
}

Report run(const Options& options) {
  Report r;
  r.suite = options.suite;
  r.seed = options.seed;
  const int n = std::max(options.trials, 0);
  r.trials.resize(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      Trial t;
      try {
        t = evaluate(options.suite, trial_instance(options, i), options.budgets);
      } catch (const std::exception& e) {
        t.status = "error";
        t.detail = std::string("generator: ") + e.what();
      }
      t.index = i;
      r.trials[static_cast<std::size_t>(i)] = std::move(t);
    }
  };
  const int jobs = std::clamp(options.jobs, 1, 64);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& s : {"agree", "disagree", "budget", "error"}) r.counts[s] = 0;
  for (const auto& t : r.trials) {
    ++r.counts[t.status];
    bool bad = t.status == "disagree" || t.status == "error";
    if (options.bundle_dir && (bad || options.bundle_all) && !t.digest.empty())
      write_bundle(*options.bundle_dir, options.suite, t);
  }
  return r;
}

namespace {

json trial_json(const Trial& t, bool timing) {
  json j{{"index", t.index}, {"digest", t.digest}, {"status", t.status}, {"verdicts", t.verdicts}};
  j["agreement"] = t.status == "agree";
  if (!t.detail.empty()) j["detail"] = t.detail;
  if (timing) j["elapsed_ms"] = t.elapsed_ms;
  return j;
}

}  // namespace

std::string to_json(const Report& report, bool timing) {
  json trials = json::array();
  for (const auto& t : report.trials) trials.push_back(trial_json(t, timing));
  json j{{"suite", to_string(report.suite)},
         {"seed", report.seed},
         {"trials", trials},
         {"summary", report.counts},
         {"ok", report.ok()}};
  return j.dump(2) + "\n";
}

std::string write_bundle(const std::string& dir, Suite suite, const Trial& trial) {
  fs::path p = fs::path(dir) / (to_string(suite) + "-" + std::to_string(trial.index));
  fs::create_directories(p);
  io::write_file((p / "instance.json").string(), io::serialize(trial.instance));
  io::write_file((p / "bundle.json").string(), json{{"suite", to_string(suite)},
                                                    {"index", trial.index},
                                                    {"digest", trial.digest},
                                                    {"status", trial.status},
                                                    {"verdicts", trial.verdicts}}
                                                       .dump(2) +
                                                   "\n");
  return p.string();
}

std::vector<Replay> replay(const std::string& path, const Budgets& budgets) {
  std::vector<fs::path> bundles;
  if (fs::exists(fs::path(path) / "bundle.json")) {
    bundles.push_back(path);
  } else if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path)) {
      if (fs::exists(e.path() / "bundle.json")) bundles.push_back(e.path());
    }
    std::sort(bundles.begin(), bundles.end());
  }
  if (bundles.empty()) throw PreconditionError("no bundle found under " + path);
  std::vector<Replay> out;
  for (const auto& b : bundles) {
    json meta;
    try {
      meta = json::parse(io::read_file((b / "bundle.json").string()));
    } catch (const json::exception& e) {
      throw io::ParseError((b / "bundle.json").string() + ": " + e.what());
    }
    Replay r;
    r.path = b.string();
    r.suite = parse_suite(meta.value("suite", ""));
    r.recorded_status = meta.value("status", "");
    r.trial = evaluate(r.suite, io::load((b / "instance.json").string()), budgets);
    r.trial.index = meta.value("index", 0);
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_json(const std::vector<Replay>& replays) {
  json arr = json::array();
  for (const auto& r : replays) {
    json j = trial_json(r.trial, false);
    j["bundle"] = fs::path(r.path).filename().string();
    j["suite"] = to_string(r.suite);
    j["recorded_status"] = r.recorded_status;
    j["reproduced"] = r.reproduced();
    arr.push_back(j);
  }
  return json{{"replays", arr}}.dump(2) + "\n";
}

}  // namespace levelplan::crosscheck

// ikc: command-line front end.
//
// Exit codes: 0 success / audit pass, 1 audit mismatch (also: minor absent),
// 2 input error, 3 undecided within the budget.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "ikc/ikc.hpp"

namespace {

using namespace ikc;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndecided = 3;

struct Common {
  std::int64_t budget_ms = 60000;
  int jobs = 0;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string cache_dir;

  std::optional<std::filesystem::path> cache() const {
    if (!cache_dir.empty()) return std::filesystem::path(cache_dir);
    if (const char* env = std::getenv("IKC_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
  }
  SearchBudget budget() const { return SearchBudget::unlimited_nodes(budget_ms); }
  int workers() const { return jobs > 0 ? jobs : std::max(1u, std::thread::hardware_concurrency()); }
  bool json_out() const { return format == "json"; }
};

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

int cmd_classify(const Common& c, const std::string& file) {
  const Input in = parse_input_file(file);
  const Graph g = as_graph(in);
  const auto dir = c.cache();
  std::optional<VerdictCache> cache;
  if (dir) cache.emplace(*dir, kEngineVersion, warn);
  std::optional<Verdict> v;
  if (cache)
    if (auto hit = cache->lookup(g); hit && replay(g, *hit, dir)) v = std::move(hit);
  if (!v) {
    ClassifyOptions opts;
    opts.budget = c.budget();
    opts.cache_dir = dir;
    v = std::holds_alternative<BipartiteSpec>(in) ? classify(std::get<BipartiteSpec>(in), opts) : classify(g, opts);
    if (cache && v->status != Status::Unknown) cache->store(g, *v);
  }
  if (c.json_out()) std::cout << to_json(*v).dump(2) << '\n';
  else std::cout << to_text(*v);
  return v->status == Status::Unknown && v->undecided ? kExitUndecided : kExitPass;
}

int cmd_enumerate(const Common& c, int p, int q, int m, int max_def) {
  EnumerateOptions eo;
  if (max_def >= 0) eo.max_deficiency = max_def;
  const auto classes = enumerate_classes(p, q, m, eo);
  if (c.json_out()) {
    json out = json::array();
    for (const auto& s : classes) {
      const auto prof = deficiency_profile(s);
      out.push_back({{"spec", spec_to_string(s)}, {"key", canonical_key(realize(s)).hex()}, {"profileA", prof.a_parts},
                     {"profileB", prof.b_parts}});
    }
    std::cout << json{{"p", p}, {"q", q}, {"m", m}, {"count", classes.size()}, {"classes", out}}.dump(2) << '\n';
  } else {
    for (const auto& s : classes) std::cout << spec_to_string(s) << '\n';
    std::cerr << classes.size() << " classes\n";
  }
  return kExitPass;
}

int cmd_family(const Common& c, const std::string& out_dir) {
  const WitnessSet& ws = witness_set(c.cache());
  json manifest = json::array();
  for (const auto* f : {&ws.k7_family, &ws.k3311_family})
    for (std::size_t i = 0; i < f->members.size(); ++i) {
      const FamilyMember& m = f->members[i];
      const std::string name = f->seed_name + "-" + std::to_string(i);
      json e = {{"family", f->seed_name}, {"member", i},        {"key", m.key.hex()},
                {"order", m.graph.order()}, {"edges", m.graph.edge_count()}, {"parent", m.parent}};
      if (m.parent >= 0) e["triangle"] = m.triangle;
      if (!out_dir.empty()) {
        e["file"] = name + ".g";
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / (name + ".g")) << to_text(m.graph);
      } else if (!c.json_out()) {
        std::cout << "# " << name << " parent " << m.parent << '\n' << to_text(m.graph);
      }
      manifest.push_back(std::move(e));
    }
  if (!out_dir.empty()) std::ofstream(std::filesystem::path(out_dir) / "manifest.json") << manifest.dump(2) << '\n';
  if (c.json_out() || !out_dir.empty()) std::cout << manifest.dump(2) << '\n';
  std::cerr << "K7 family: " << ws.k7_family.size() << " members, K3311 family: " << ws.k3311_family.size() << " members\n";
  return kExitPass;
}

int cmd_minor(const Common& c, const std::string& hfile, const std::string& gfile) {
  const Graph h = as_graph(parse_input_file(hfile));
  const Graph g = as_graph(parse_input_file(gfile));
  const MinorResult r = has_minor(h, g, c.budget());
  if (c.json_out()) {
    json out = {{"outcome", to_string(r.outcome)}, {"nodes", r.nodes}};
    if (r.model) out["model"] = to_json(*r.model);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << to_string(r.outcome) << '\n';
    if (r.model)
      for (std::size_t i = 0; i < r.model->branch_sets.size(); ++i) {
        std::cout << i << ':';
        for (Vertex v : r.model->branch_sets[i]) std::cout << ' ' << v;
        std::cout << '\n';
      }
  }
  if (r.outcome == MinorOutcome::Found) return kExitPass;
  return r.outcome == MinorOutcome::Absent ? kExitMismatch : kExitUndecided;
}

int cmd_planar(const Common& c, const std::string& file) {
  const Graph g = as_graph(parse_input_file(file));
  const auto emb = planar_embedding(g);
  const auto pj = emb ? std::nullopt : planar_join_certificate(g);
  if (c.json_out()) {
    json out = {{"planar", emb.has_value()}};
    if (emb) out["rotation"] = emb->rotation;
    if (pj) out["planarJoin"] = to_json(*pj);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (emb ? "planar" : "nonplanar") << '\n';
    if (emb)
      for (std::size_t v = 0; v < emb->rotation.size(); ++v) {
        std::cout << v << ':';
        for (Vertex w : emb->rotation[v]) std::cout << ' ' << w;
        std::cout << '\n';
      }
    if (pj) std::cout << "planar after removing " << pj->u << ' ' << pj->v << '\n';
  }
  return kExitPass;
}

int cmd_audit(const Common& c, const std::string& name, int samples, int max_n, bool expansions,
              const std::string& results) {
  AuditOptions opts;
  opts.budget = c.budget();
  opts.jobs = c.workers();
  opts.cache_dir = c.cache();
  opts.seed = c.seed;
  opts.samples = samples;
  opts.max_n = max_n;
  std::vector<std::string> names;
  if (name == "all") names = {"k55", "k66_5", "k66_6", "k77_sample", "recurrence"};
  else names = {name};
  if (expansions && std::find(names.begin(), names.end(), "expansions") == names.end()) names.push_back("expansions");
  bool pass = true, undecided = false;
  json all = json::array();
  for (const auto& n : names) {
    const AuditReport r = run_audit(n, opts);
    write_report(r, results);
    if (c.json_out()) all.push_back(to_json(r));
    else {
      std::cout << n << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.items.size() << " items";
      for (const auto& [k, v] : r.counts) std::cout << ", " << k << " " << v;
      std::cout << ")\n";
      for (const auto& ch : r.checks) std::cout << "  [" << (ch.ok ? "ok" : "FAIL") << "] " << ch.what << '\n';
      for (const auto& note : r.notes) std::cout << "  note: " << note << '\n';
      if (!r.passed) std::cout << "  first failure: " << r.failure << '\n';
    }
    pass = pass && r.passed;
    undecided = undecided || r.undecided;
  }
  if (c.json_out()) std::cout << all.dump(2) << '\n';
  if (pass) return kExitPass;
  return undecided ? kExitUndecided : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ikc: intrinsic knotting certificates for K_{p,q} minus R"};
  app.require_subcommand(1);
  Common c;
  const auto common = [&c](CLI::App* sub) {
    sub->add_option("--budget-ms", c.budget_ms, "time budget per minor search, ms")->capture_default_str();
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    sub->add_option("--cache-dir", c.cache_dir, "verdict cache directory (default: $IKC_CACHE_DIR)");
  };

  std::string file, hfile;
  auto* classify_cmd = app.add_subcommand("classify", "classify a graph or kminus spec");
  classify_cmd->add_option("file", file)->required();
  common(classify_cmd);

  int p = 0, q = 0, m = 0, max_def = -1;
  auto* enum_cmd = app.add_subcommand("enumerate", "list isomorphism classes of K_{p,q} minus m");
  enum_cmd->add_option("p", p)->required();
  enum_cmd->add_option("q", q)->required();
  enum_cmd->add_option("m", m)->required();
  enum_cmd->add_option("--max-deficiency", max_def, "bound on removed edges at any vertex");
  common(enum_cmd);

  std::string out_dir;
  auto* family_cmd = app.add_subcommand("family", "emit both triangle-Y witness families");
  family_cmd->add_option("--out", out_dir, "write member files and manifest.json here");
  common(family_cmd);

  auto* minor_cmd = app.add_subcommand("minor", "test whether H is a minor of G");
  minor_cmd->add_option("H", hfile)->required();
  minor_cmd->add_option("G", file)->required();
  common(minor_cmd);

  auto* planar_cmd = app.add_subcommand("planar", "planarity test with embedding");
  planar_cmd->add_option("G", file)->required();
  common(planar_cmd);

  std::string audit_name, results = "results";
  int samples = 100, max_n = 12;
  bool expansions = false;
  auto* audit_cmd = app.add_subcommand("audit", "run a reproduction audit");
  audit_cmd->add_option("name", audit_name)
      ->required()
      ->check(CLI::IsMember({"k55", "k66_5", "k66_6", "k77_sample", "recurrence", "expansions", "all"}));
  audit_cmd->add_option("--jobs", c.jobs, "worker threads (default: hardware concurrency)");
  audit_cmd->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
  audit_cmd->add_option("--samples", samples, "K7,7 minus 10 samples")->capture_default_str();
  audit_cmd->add_option("--max-n", max_n, "recurrence range")->capture_default_str();
  audit_cmd->add_option("--results", results, "report directory")->capture_default_str();
  audit_cmd->add_flag("--rediscover-expansions", expansions, "also search K6,6 minus 12 expansion candidates");
  common(audit_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*classify_cmd) return cmd_classify(c, file);
    if (*enum_cmd) return cmd_enumerate(c, p, q, m, max_def);
    if (*family_cmd) return cmd_family(c, out_dir);
    if (*minor_cmd) return cmd_minor(c, hfile, file);
    if (*planar_cmd) return cmd_planar(c, file);
    if (*audit_cmd) return cmd_audit(c, audit_name, samples, max_n, expansions, results);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

/*
  sixv: exact verification of symmetries of the stochastic colored six-vertex
  model, its Hecke-algebra engine, Kazhdan-Lusztig R-polynomial and positroid
  specializations, and Beta/Gamma polymer degenerations.

  Exit codes: 0 = PASS, 1 = FAIL (witness persisted in the report),
  2 = INVALID input or parse error.
*/

#include "sixv/json_io.hpp"
#include "sixv/klgr.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace sixv;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  int trials = 10;
  unsigned workers = default_workers();
  int cap_cells = 20;
  long box = 1000000;
  std::string json_path;
  bool quiet = false;
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed (HV_SEED env is the fallback)");
  cmd->add_option("--trials", cfg.trials, "number of evaluation points")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", cfg.workers, "worker threads");
  cmd->add_option("--cap-cells", cfg.cap_cells, "brute-force cell cap");
  cmd->add_option("--box", cfg.box, "numerator/denominator box for random rationals");
  cmd->add_option("--json", cfg.json_path, "write the machine-readable report here");
  cmd->add_flag("--quiet", cfg.quiet, "suppress the human summary");
}

void apply_seed_env(RunConfig& cfg, const CLI::App* cmd) {
  if (cmd->count("--seed") == 0) {
    if (const char* env = std::getenv("HV_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in); // throws with byte position on malformed input
}

void emit(const RunConfig& cfg, const Json& report, const std::string& summary) {
  if (!cfg.json_path.empty()) {
    std::ofstream out(cfg.json_path);
    out << report.dump(2) << "\n";
  }
  if (!cfg.quiet) std::cout << summary << "\n";
}

int status_exit(Status s) {
  switch (s) {
    case Status::PASS: return 0;
    case Status::FAIL: return 1;
    default: return 2;
  }
}

Json base_report(const std::string& command, const RunConfig& cfg) {
  return Json{{"command", command},
              {"seed", cfg.seed},
              {"trials", cfg.trials},
              {"box", cfg.box}};
}

// ---------------------------------------------------------------------------

int run_verify_flip(const RunConfig& cfg, const std::string& instance_path, bool all_pairs) {
  Json inst_json = load_json(instance_path);
  FlipInstance inst = flip_instance_from_json(inst_json);
  PointOptions opt{cfg.box, false, 256};
  Verdict v = verify_flip(inst, cfg.trials, cfg.seed, all_pairs, opt);
  Json rep = base_report("verify-flip", cfg);
  rep["instance"] = inst_json;
  rep["result"] = verdict_to_json(v);
  std::ostringstream os;
  os << "verify-flip M=" << inst.m << " N=" << inst.n << ": " << status_name(v.status) << " ("
     << v.points_used << " points)";
  if (!v.detail.empty()) os << " -- " << v.detail;
  emit(cfg, rep, os.str());
  return status_exit(v.status);
}

int run_flip_scan(const RunConfig& cfg, int max_mn) {
  Json per = Json::object();
  Status overall = Status::PASS;
  std::uint64_t digest = 1469598103934665603ULL;
  for (int m = 1; m < max_mn; ++m)
    for (int n = 1; m + n <= max_mn; ++n) {
      auto pairs = realized_boundary_pairs(m, n, cfg.seed);
      std::vector<Status> results(pairs.size(), Status::PASS);
      parallel_for(pairs.size(), cfg.workers, [&](std::size_t i) {
        FlipInstance inst{m, n, pairs[i].first, pairs[i].second};
        Verdict v = verify_flip(inst, cfg.trials, derive_seed(cfg.seed, i), false,
                                PointOptions{cfg.box, false, 256});
        results[i] = v.status;
      });
      int failures = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (results[i] != Status::PASS) ++failures;
      if (failures) overall = Status::FAIL;
      std::string key = std::to_string(m) + "x" + std::to_string(n);
      per[key] = Json{{"pairs", pairs.size()}, {"failures", failures}};
      for (const auto& [h, v] : pairs) {
        std::string sig = key + "|" + to_json(h).dump() + "|" + to_json(v).dump();
        for (char c : sig) digest = (digest ^ static_cast<std::uint64_t>(c)) * 1099511628211ULL;
      }
    }
  Json rep = base_report("verify-flip --exhaustive", cfg);
  rep["max_mn"] = max_mn;
  rep["per_domain"] = per;
  rep["boundary_digest"] = digest;
  rep["status"] = status_name(overall);
  emit(cfg, rep,
       std::string("flip scan M+N<=") + std::to_string(max_mn) + ": " + status_name(overall));
  return status_exit(overall);
}

int run_verify_genflip(const RunConfig& cfg, const std::string& instance_path) {
  Json inst_json = load_json(instance_path);
  GenFlipInstance g = genflip_instance_from_json(inst_json);
  Verdict v = verify_generalized_flip(g, cfg.trials, cfg.seed, PointOptions{cfg.box, false, 256});
  Json rep = base_report("verify-genflip", cfg);
  rep["instance"] = inst_json;
  rep["result"] = verdict_to_json(v);
  std::ostringstream os;
  os << "verify-genflip n=" << g.n << ": " << status_name(v.status);
  if (!v.detail.empty()) os << " -- " << v.detail;
  emit(cfg, rep, os.str());
  return status_exit(v.status);
}

int run_verify_main(const RunConfig& cfg, const std::string& instance_path) {
  Json inst_json = load_json(instance_path);
  MainInstance inst = main_instance_from_json(inst_json);
  Verdict v = verify_main(inst, cfg.trials, cfg.seed, PointOptions{cfg.box, false, 256});
  Json rep = base_report("verify-main", cfg);
  rep["instance"] = to_json(inst);
  rep["result"] = verdict_to_json(v);
  std::ostringstream os;
  os << "verify-main (" << inst.cuts_a.size() << " cuts): " << status_name(v.status);
  if (!v.detail.empty()) os << " -- " << v.detail;
  emit(cfg, rep, os.str());
  return status_exit(v.status);
}

int run_cps_check(const RunConfig& cfg, int n, int r) {
  // color-position symmetry on random wiring words: coefficient of T_pi in
  // Y^{i,p} equals the coefficient of T_{pi^{-1}} in Y^{rev i, rev p}
  Status overall = Status::PASS;
  std::string detail;
  for (int t = 0; t < cfg.trials && overall == Status::PASS; ++t) {
    Prng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    Word word(static_cast<std::size_t>(r));
    for (auto& k : word) k = static_cast<int>(rng.next_in(1, n - 1));
    EvalPoint pt = random_wiring_point(n, derive_seed(cfg.seed, t, 1),
                                       PointOptions{cfg.box, false, 256});
    std::vector<Rat> params;
    for (std::size_t s = 0; s < word.size(); ++s)
      params.push_back(p_param(pt, static_cast<int>(rng.next_in(1, n - 1)),
                               static_cast<int>(rng.next_in(2, n))));
    Word rev_word(word.rbegin(), word.rend());
    std::vector<Rat> rev_params(params.rbegin(), params.rend());
    auto lhs = yb_element(word, params, Perm::identity(n), pt.q);
    auto rhs = yb_element(rev_word, rev_params, Perm::identity(n), pt.q);
    if (cps_transform(lhs) != rhs) {
      overall = Status::FAIL;
      detail = "color-position symmetry fails at instance " + std::to_string(t);
    }
  }
  Json rep = base_report("cps-check", cfg);
  rep["n"] = n;
  rep["word_length"] = r;
  rep["status"] = status_name(overall);
  if (!detail.empty()) rep["detail"] = detail;
  emit(cfg, rep, std::string("cps-check n=") + std::to_string(n) + ": " + status_name(overall));
  return status_exit(overall);
}

int run_rpoly(const RunConfig& cfg, int n, const std::vector<int>& pi_img,
              const std::vector<int>& w_img) {
  Perm pi(pi_img), w(w_img);
  if (pi.n() != n || w.n() != n) throw std::invalid_argument("permutation size does not match --n");
  IntPoly r = r_polynomial(pi, w);
  Json rep = base_report("rpoly", cfg);
  rep["n"] = n;
  rep["pi"] = to_json(pi);
  rep["w"] = to_json(w);
  rep["coefficients"] = to_json(r);
  std::ostringstream os;
  os << "R^{pi,w} coefficients (constant first): " << to_json(r).dump();
  emit(cfg, rep, os.str());
  return 0;
}

int run_dist_subexpr(const RunConfig& cfg, int n, const std::vector<int>& pi_img,
                     const std::vector<int>& word_in) {
  Perm pi(pi_img);
  Word word = word_in;
  auto subs = distinguished_subexpressions(pi, word);
  IntPoly total;
  Json list = Json::array();
  for (const auto& s : subs) {
    total += s.weight;
    Json mask = Json::array();
    for (auto b : s.mask) mask.push_back(static_cast<int>(b));
    list.push_back(Json{{"mask", mask}, {"skips", s.skips}, {"drops", s.drops},
                        {"weight", to_json(s.weight)}});
  }
  Json rep = base_report("dist-subexpr", cfg);
  rep["n"] = n;
  rep["pi"] = to_json(pi);
  rep["word"] = Json(word);
  rep["subexpressions"] = list;
  rep["total"] = to_json(total);
  rep["matches_rpoly"] = (total == r_polynomial(pi, word_to_perm(word, n)));
  emit(cfg, rep,
       "distinguished subexpressions: " + std::to_string(subs.size()) +
           ", total = " + to_json(total).dump());
  return 0;
}

int run_positroid_count(const RunConfig& cfg, int m, int n, long p) {
  auto table = count_positroid_points_table(m, n, p);
  Json entries = Json::array();
  long total = 0;
  for (const auto& [key, cnt] : table.counts) {
    entries.push_back(Json{{"H", to_json(key.first)}, {"V", to_json(key.second)}, {"count", cnt}});
    total += cnt;
  }
  Json rep = base_report("positroid-count", cfg);
  rep["M"] = m;
  rep["N"] = n;
  rep["p"] = p;
  rep["total"] = total;
  rep["strata"] = entries;
  emit(cfg, rep,
       "positroid points over F_" + std::to_string(p) + ": " + std::to_string(total) + " in " +
           std::to_string(entries.size()) + " strata");
  return 0;
}

int run_count_pd(const RunConfig& cfg, int m, int n, bool q_analog) {
  auto table = count_pipe_dreams_table(m, n, cfg.cap_cells);
  Json entries = Json::array();
  for (const auto& [key, cnt] : table.plain) {
    Json e{{"H", to_json(key.first)}, {"V", to_json(key.second)}, {"count", cnt}};
    if (q_analog) e["q_analog"] = to_json(table.q_analog.at(key));
    entries.push_back(e);
  }
  Json rep = base_report("count-pd", cfg);
  rep["M"] = m;
  rep["N"] = n;
  rep["classes"] = entries;
  emit(cfg, rep, "pipe dream classes: " + std::to_string(entries.size()));
  return 0;
}

int run_conjecture(const RunConfig& cfg, int n) {
  auto repo = conjecture_shift_scan(n, cfg.trials, cfg.seed, cfg.workers,
                                    PointOptions{cfg.box, false, 256});
  Json rep = base_report("conjecture79", cfg);
  rep["n"] = n;
  rep["combinations"] = repo.combinations_checked;
  rep["counterexamples"] = Json(repo.counterexamples);
  rep["status"] = repo.clean() ? "PASS" : "FAIL";
  emit(cfg, rep,
       "conditional shift scan n=" + std::to_string(n) + ": " +
           std::to_string(repo.combinations_checked) + " combinations, " +
           std::to_string(repo.counterexamples.size()) + " counterexamples");
  return repo.clean() ? 0 : 1;
}

int run_sample(const RunConfig& cfg, const std::string& instance_path, long count) {
  Json inst = load_json(instance_path);
  SkewDomain dom = domain_from_json(inst.at("domain"));
  SkewPoint pt = skew_point_from_json(inst);
  std::vector<Cut> cuts;
  if (inst.contains("cuts")) cuts = cuts_from_json(inst.at("cuts"));
  std::vector<std::pair<int, int>> levels;
  for (const Cut& c : cuts) levels.push_back(dom.cutoff_levels(c));
  std::ofstream json_out;
  std::ostream* out = &std::cout;
  if (!cfg.json_path.empty()) {
    json_out.open(cfg.json_path);
    out = &json_out;
  }
  for (long k = 0; k < count; ++k) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    PipeDream pd = sample(dom, pt, s);
    Perm pi = color_permutation(dom, pd);
    Json rec{{"seed", s}, {"permutation", to_json(pi)}};
    Json hv = Json::array();
    for (auto [ci, cj] : levels) hv.push_back(height(pi, ci, cj));
    rec["heights"] = hv;
    (*out) << rec.dump() << "\n";
  }
  return 0;
}

int run_polymer_test(const RunConfig& cfg, const std::string& spec_path, long samples) {
  Json sj = load_json(spec_path);
  ShiftTestSpec spec;
  spec.cuts_a = left_aligned_from_json(sj.at("d"), sj.at("u"), sj.at("r"));
  spec.cuts_b = left_aligned_from_json(sj.at("d2"), sj.at("u2"), sj.at("r"));
  spec.params.sigma = sj.at("sigma").get<std::vector<double>>();
  spec.params.rho = sj.at("rho").get<std::vector<double>>();
  if (sj.contains("permute_rho")) spec.permute_rho = sj.at("permute_rho").get<bool>();
  ShiftTestReport rep = shift_invariance_test(spec, static_cast<std::size_t>(samples), cfg.seed,
                                              cfg.workers);
  Json out = base_report("polymer-test", cfg);
  out["spec"] = sj;
  out["report"] = shift_report_to_json(rep);
  std::ostringstream os;
  double mn = 1.0;
  for (const auto& c : rep.coords) mn = std::min(mn, c.p_value);
  os << "polymer shift test: " << (rep.rejected ? "reject" : "pass") << " (n=" << rep.samples
     << ", min KS p=" << mn << ")";
  emit(cfg, out, os.str());
  bool expect_reject = sj.contains("expect") && sj.at("expect").get<std::string>() == "reject";
  if (expect_reject) return rep.rejected ? 0 : 1;
  return rep.rejected ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Golden corpus

Json corpus_reports(const RunConfig& cfg, const fs::path& dir) {
  Json out = Json::object();

  { // 180-degree rotation data, n = 11
    BoundaryCondition h({{6, 6}, {7, 4}, {9, 5}, {10, 7}});
    out["rotation_n11"] = Json{{"n", 11}, {"H", to_json(h)}, {"flip", to_json(flip_180(h, 11))}};
  }
  { // Grassmannian permutation and its canonical word
    out["grassmannian_4x3"] = Json{{"M", 4},
                                   {"N", 3},
                                   {"perm", to_json(grassmannian_perm(4, 3))},
                                   {"length", grassmannian_perm(4, 3).length()},
                                   {"word", Json(grassmannian_word(4, 3))}};
  }
  { // the 2x3 flip instance with its exact projection at a fixed point
    FlipInstance inst{2, 3, BoundaryCondition({{3, 2}, {5, 3}}), BoundaryCondition({{2, 4}})};
    SkewPoint pt = random_skew_point(2, 3, derive_seed(cfg.seed, 1), {cfg.box, false, 256});
    SkewDomain rect = SkewDomain::rectangle(2, 3);
    Rat lhs = boundary_projection(exact_distribution(rect, pt), 2, 3, inst.h, inst.v);
    Verdict v = verify_flip(inst, cfg.trials, derive_seed(cfg.seed, 2));
    out["flip_2x3"] = Json{{"H", to_json(inst.h)},
                           {"V", to_json(inst.v)},
                           {"point", to_json(pt)},
                           {"projection", to_json(lhs)},
                           {"verdict", status_name(v.status)}};
  }
  { // exhaustive flip digest, M+N <= 6
    std::uint64_t digest = 1469598103934665603ULL;
    long pair_count = 0;
    for (int m = 1; m < 6; ++m)
      for (int n = 1; m + n <= 6; ++n)
        for (const auto& [h, v] : realized_boundary_pairs(m, n, 7)) {
          ++pair_count;
          std::string sig = std::to_string(m) + "x" + std::to_string(n) + "|" +
                            to_json(h).dump() + "|" + to_json(v).dump();
          for (char c : sig) digest = (digest ^ static_cast<std::uint64_t>(c)) * 1099511628211ULL;
        }
    out["flip_digest_mn6"] = Json{{"pairs", pair_count}, {"digest", digest}};
  }
  { // R-polynomial table for S_4
    Json table = Json::object();
    for (const Perm& w : all_perms(4)) {
      auto elem = r_polynomial_element(w);
      Json row = Json::object();
      for (const auto& [pi, c] : elem.terms()) row[pi.to_string()] = to_json(c);
      table[w.to_string()] = row;
    }
    out["rpoly_s4"] = table;
  }
  { // generalized flip frame, n = 9
    GenFlipInstance g;
    g.n = 9;
    g.ci = 5;
    g.cj = 4;
    g.m = 3;
    g.nn = 2;
    g.w_left = Perm({1, 2, 3, 4, 5, 7, 6, 9, 8});
    g.w_down = Perm({2, 4, 1, 3, 5, 6, 7, 8, 9});
    g.w_up = Perm({1, 2, 3, 4, 6, 5, 8, 7, 9});
    g.w_right = Perm({3, 1, 2, 4, 5, 6, 7, 8, 9});
    Verdict v = verify_generalized_flip(g, 2, derive_seed(cfg.seed, 3));
    out["genflip_frame_n9"] = Json{{"n", 9}, {"i", 5}, {"j", 4}, {"M", 3}, {"N", 2},
                                   {"verdict", status_name(v.status)}};
  }
  { // the three named main-theorem instances
    auto run = [&](const char* name, const std::string& file) {
      Json ij = load_json((dir / file).string());
      MainInstance inst = main_instance_from_json(ij);
      Verdict v = verify_main(inst, cfg.trials, derive_seed(cfg.seed, 4), {10000, false, 256});
      out[name] = Json{{"instance", to_json(inst)}, {"verdict", status_name(v.status)}};
    };
    run("main_double_h", "main_double_h.json");
    run("main_global_h", "main_global_h.json");
    run("main_local_h", "main_local_h.json");
  }
  { // pipe dream counts for the 3x3 rectangle
    auto table = count_pipe_dreams_table(3, 3);
    Json entries = Json::array();
    for (const auto& [key, cnt] : table.plain)
      entries.push_back(Json{{"H", to_json(key.first)}, {"V", to_json(key.second)}, {"count", cnt},
                             {"q_analog", to_json(table.q_analog.at(key))}});
    out["count_pd_3x3"] = Json{{"classes", entries}};
  }
  { // positroid counts over F_2 and F_3
    for (long p : {2L, 3L}) {
      auto table = count_positroid_points_table(2, 2, p);
      Json entries = Json::array();
      for (const auto& [key, cnt] : table.counts)
        entries.push_back(Json{{"H", to_json(key.first)}, {"V", to_json(key.second)}, {"count", cnt}});
      out["positroid_2x2_p" + std::to_string(p)] = Json{{"strata", entries}};
    }
  }
  { // conditional shift identities: the n = 4 closed-form instance
    Perm w = word_to_perm({2, 3, 2, 1}, 4);
    EvalPoint pt = random_wiring_point(4, derive_seed(cfg.seed, 5), {cfg.box, false, 256});
    auto sums = strict_boundary_sums(yang_baxter_basis(w, pt), 3, 2);
    BoundaryCondition h, v({{2, 4}});
    auto it = sums.find({h, v});
    Json entry{{"w", to_json(w)}, {"alpha", 3}, {"delta", 2}, {"point", to_json(pt)}};
    if (it != sums.end()) {
      auto p = [&](int i, int j) { return p_param(pt, i, j); };
      Rat xx_closed = p(2, 3) * p(2, 4) * (1 - p(3, 4) * p(1, 4));
      entry["xx"] = to_json(it->second.xx);
      entry["xx_matches_closed_form"] = (it->second.xx == xx_closed);
    }
    out["conjecture_example_n4"] = entry;
  }
  return out;
}

int run_corpus(RunConfig cfg, const std::string& dir_opt, bool regen) {
  fs::path dir = dir_opt.empty() ? fs::path("corpus") : fs::path(dir_opt);
  fs::path golden = dir / "golden";
  cfg.seed = 20240;
  cfg.trials = 5;
  Json reports = corpus_reports(cfg, dir);
  int mismatches = 0;
  for (const auto& [name, body] : reports.items()) {
    fs::path file = golden / (name + ".json");
    std::string text = body.dump(2) + "\n";
    if (regen) {
      fs::create_directories(golden);
      std::ofstream(file) << text;
      continue;
    }
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in || buf.str() != text) {
      ++mismatches;
      if (!cfg.quiet) std::cout << "corpus mismatch: " << file.string() << "\n";
    }
  }
  if (!cfg.quiet)
    std::cout << (regen ? "corpus regenerated: " : "corpus checked: ") << reports.size()
              << " goldens" << (mismatches ? ", MISMATCHES" : "") << "\n";
  return mismatches == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for the stochastic colored six-vertex model"};
  app.require_subcommand(1);

  RunConfig cfg;

  std::string flip_instance;
  bool flip_all = false;
  int flip_max_mn = 0;
  auto* cmd_flip = app.add_subcommand("verify-flip", "flip identity on a rectangle instance");
  add_common_flags(cmd_flip, cfg);
  cmd_flip->add_option("--instance", flip_instance, "instance JSON file");
  cmd_flip->add_flag("--all", flip_all, "check every realized boundary pair of the instance size");
  cmd_flip->add_option("--exhaustive", flip_max_mn, "scan all (M,N,H,V) with M+N up to this bound");

  std::string genflip_instance;
  auto* cmd_genflip = app.add_subcommand("verify-genflip", "generalized flip with parabolic factors");
  add_common_flags(cmd_genflip, cfg);
  cmd_genflip->add_option("--instance", genflip_instance, "instance JSON file")->required();

  std::string main_instance;
  auto* cmd_main = app.add_subcommand("verify-main", "joint height-function invariance");
  add_common_flags(cmd_main, cfg);
  cmd_main->add_option("--instance", main_instance, "instance JSON file")->required();

  int cps_n = 4, cps_r = 8;
  auto* cmd_cps = app.add_subcommand("cps-check", "color-position symmetry on random words");
  add_common_flags(cmd_cps, cfg);
  cmd_cps->add_option("--n", cps_n, "permutation size");
  cmd_cps->add_option("--r", cps_r, "word length");

  int rp_n = 4;
  std::vector<int> rp_pi, rp_w;
  auto* cmd_rpoly = app.add_subcommand("rpoly", "Kazhdan-Lusztig R-polynomial");
  add_common_flags(cmd_rpoly, cfg);
  cmd_rpoly->add_option("--n", rp_n, "permutation size")->required();
  cmd_rpoly->add_option("--pi", rp_pi, "one-line notation")->required()->delimiter(',');
  cmd_rpoly->add_option("--w", rp_w, "one-line notation")->required()->delimiter(',');

  int ds_n = 4;
  std::vector<int> ds_pi, ds_word;
  auto* cmd_ds = app.add_subcommand("dist-subexpr", "distinguished subexpressions and weights");
  add_common_flags(cmd_ds, cfg);
  cmd_ds->add_option("--n", ds_n, "permutation size")->required();
  cmd_ds->add_option("--pi", ds_pi, "one-line notation")->required()->delimiter(',');
  cmd_ds->add_option("--word", ds_word, "reduced word letters")->required()->delimiter(',');

  int pc_m = 2, pc_n = 2;
  long pc_p = 2;
  auto* cmd_pc = app.add_subcommand("positroid-count", "points of positroid strata over F_p");
  add_common_flags(cmd_pc, cfg);
  cmd_pc->add_option("--M", pc_m)->required();
  cmd_pc->add_option("--N", pc_n)->required();
  cmd_pc->add_option("--p", pc_p)->required();

  int pd_m = 2, pd_n = 2;
  bool pd_q = false;
  auto* cmd_pd = app.add_subcommand("count-pd", "pipe dream counts per boundary pair");
  add_common_flags(cmd_pd, cfg);
  cmd_pd->add_option("--M", pd_m)->required();
  cmd_pd->add_option("--N", pd_n)->required();
  cmd_pd->add_flag("--q-analog", pd_q, "include crossing-count generating polynomials");

  int cj_n = 4;
  auto* cmd_cj = app.add_subcommand("conjecture79", "conditional shift identity scan");
  add_common_flags(cmd_cj, cfg);
  cmd_cj->add_option("--n", cj_n, "permutation size (<= 6)");

  std::string sample_instance;
  long sample_count = 10;
  auto* cmd_sample = app.add_subcommand("sample", "draw configurations, stream NDJSON records");
  add_common_flags(cmd_sample, cfg);
  cmd_sample->add_option("--instance", sample_instance, "domain + point JSON file")->required();
  cmd_sample->add_option("--samples", sample_count, "number of draws");

  std::string polymer_spec;
  long polymer_samples = 100000;
  auto* cmd_poly = app.add_subcommand("polymer-test", "Beta polymer shift-invariance test");
  add_common_flags(cmd_poly, cfg);
  cmd_poly->add_option("--spec", polymer_spec, "test specification JSON")->required();
  cmd_poly->add_option("--samples", polymer_samples, "replicas per side");

  std::string corpus_dir;
  bool corpus_regen = false;
  auto* cmd_corpus = app.add_subcommand("corpus", "regenerate or diff the golden corpus");
  add_common_flags(cmd_corpus, cfg);
  cmd_corpus->add_option("--dir", corpus_dir, "corpus directory (default ./corpus)");
  cmd_corpus->add_flag("--regen", corpus_regen, "rewrite the golden files");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_seed_env(cfg, sub);
    if (sub == cmd_flip) {
      if (flip_max_mn > 0) return run_flip_scan(cfg, flip_max_mn);
      if (flip_instance.empty())
        throw std::invalid_argument("verify-flip needs --instance or --exhaustive");
      return run_verify_flip(cfg, flip_instance, flip_all);
    }
    if (sub == cmd_genflip) return run_verify_genflip(cfg, genflip_instance);
    if (sub == cmd_main) return run_verify_main(cfg, main_instance);
    if (sub == cmd_cps) return run_cps_check(cfg, cps_n, cps_r);
    if (sub == cmd_rpoly) return run_rpoly(cfg, rp_n, rp_pi, rp_w);
    if (sub == cmd_ds) return run_dist_subexpr(cfg, ds_n, ds_pi, ds_word);
    if (sub == cmd_pc) return run_positroid_count(cfg, pc_m, pc_n, pc_p);
    if (sub == cmd_pd) return run_count_pd(cfg, pd_m, pd_n, pd_q);
    if (sub == cmd_cj) return run_conjecture(cfg, cj_n);
    if (sub == cmd_sample) return run_sample(cfg, sample_instance, sample_count);
    if (sub == cmd_poly) return run_polymer_test(cfg, polymer_spec, polymer_samples);
    if (sub == cmd_corpus) return run_corpus(cfg, corpus_dir, corpus_regen);
  } catch (const Json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

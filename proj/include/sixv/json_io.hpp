#pragma once

#include "sixv/polymer.hpp"
#include "sixv/symmetry.hpp"

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

namespace sixv {

using Json = nlohmann::ordered_json;

// permutations and words as integer arrays
inline Json to_json(const Perm& p) { return Json(p.images()); }
inline Perm perm_from_json(const Json& j) { return Perm(j.get<std::vector<int>>()); }
inline Word word_from_json(const Json& j) { return j.get<Word>(); }

// domains as {"P": "...", "Q": "..."} over {U,L}
inline Json to_json(const SkewDomain& d) { return Json{{"P", d.path_p()}, {"Q", d.path_q()}}; }
inline SkewDomain domain_from_json(const Json& j) {
  return SkewDomain(j.at("P").get<std::string>(), j.at("Q").get<std::string>());
}

// cuts as [l,d,u,r]
inline Json to_json(const Cut& c) { return Json::array({c.l, c.d, c.u, c.r}); }
inline Cut cut_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("cut must be [l,d,u,r]");
  return Cut{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}
inline std::vector<Cut> cuts_from_json(const Json& j) {
  std::vector<Cut> out;
  for (const auto& e : j) out.push_back(cut_from_json(e));
  return out;
}
inline Json to_json(const std::vector<Cut>& cuts) {
  Json a = Json::array();
  for (const Cut& c : cuts) a.push_back(to_json(c));
  return a;
}

// boundary conditions as arrays of [a,b] pairs
inline Json to_json(const BoundaryCondition& b) {
  Json a = Json::array();
  for (auto [x, y] : b.pairs()) a.push_back(Json::array({x, y}));
  return a;
}
inline BoundaryCondition boundary_from_json(const Json& j) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("boundary pair must be [a,b]");
    pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return BoundaryCondition(std::move(pairs));
}

// rationals as "num/den" strings; integer literals also accepted on input
inline Json to_json(const Rat& r) { return Json(rat_to_string(r)); }
inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  return rat_from_string(j.get<std::string>());
}
inline std::vector<Rat> rats_from_json(const Json& j) {
  std::vector<Rat> out;
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}
inline Json to_json(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const Rat& r : v) a.push_back(to_json(r));
  return a;
}

// polynomials as coefficient arrays, constant term first
inline Json to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const Int& c : p.coeffs()) {
    if (c < std::numeric_limits<long long>::min() || c > std::numeric_limits<long long>::max())
      a.push_back(c.str());
    else
      a.push_back(c.convert_to<long long>());
  }
  return a;
}

inline Json to_json(const SkewPoint& pt) {
  return Json{{"q", to_json(pt.q)}, {"x", to_json(pt.x)}, {"y", to_json(pt.y)}};
}
inline SkewPoint skew_point_from_json(const Json& j) {
  SkewPoint pt;
  pt.q = rat_from_json(j.at("q"));
  pt.x = rats_from_json(j.at("x"));
  pt.y = rats_from_json(j.at("y"));
  return pt;
}

inline Json to_json(const EvalPoint& pt) {
  return Json{{"q", to_json(pt.q)}, {"z", to_json(pt.z)}};
}

inline Json verdict_to_json(const Verdict& v) {
  Json j{{"status", status_name(v.status)},
         {"points_used", v.points_used},
         {"points_skipped", v.points_skipped},
         {"detail", v.detail}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

inline FlipKind flip_kind_from_string(const std::string& s) {
  for (FlipKind k : {FlipKind::cps, FlipKind::global_H, FlipKind::global_V, FlipKind::local_H,
                     FlipKind::local_V, FlipKind::double_H, FlipKind::double_V, FlipKind::H_shift,
                     FlipKind::V_shift})
    if (s == flip_kind_name(k)) return k;
  throw std::invalid_argument("unknown transformation kind: " + s);
}

inline CatalogData catalog_data_from_json(FlipKind kind, const Json& j) {
  CatalogData data;
  switch (kind) {
    case FlipKind::cps: break;
    case FlipKind::global_H:
    case FlipKind::global_V:
      data.cross = cut_from_json(j.at("cross"));
      break;
    case FlipKind::local_H:
    case FlipKind::local_V:
      data.d = j.at("d").get<int>();
      data.u = j.at("u").get<int>();
      break;
    default:
      data.d = j.at("d").get<int>();
      data.u = j.at("u").get<int>();
      data.dp = j.at("dp").get<int>();
      data.up = j.at("up").get<int>();
      break;
  }
  return data;
}

/*
  Main-theorem instance files.  Catalog form:

    {"domain": {...}, "cuts": [...], "transform": {"kind": "double_H", ...}}

  Explicit form supplies "domain2"/"cuts2" and the variable maps "xmap"/"ymap"
  directly; either field of the catalog form may be overridden, which is how
  the wrong-variable fixtures are written.
*/
inline MainInstance main_instance_from_json(const Json& j) {
  MainInstance inst;
  inst.dom_a = domain_from_json(j.at("domain"));
  inst.cuts_a = cuts_from_json(j.at("cuts"));
  if (j.contains("transform")) {
    const Json& tj = j.at("transform");
    FlipKind kind = flip_kind_from_string(tj.at("kind").get<std::string>());
    CatalogData data = catalog_data_from_json(kind, tj);
    Transformation phi = elementary_flip_catalog(kind, data, inst.dom_a, inst.cuts_a);
    auto full = instance_from_transformation(inst.dom_a, inst.cuts_a, phi);
    if (!full) throw std::invalid_argument("transformation does not yield a hostable cut tuple");
    inst = *full;
  } else {
    inst.dom_b = domain_from_json(j.at("domain2"));
    inst.cuts_b = cuts_from_json(j.at("cuts2"));
    inst.xmap = Perm::identity(std::max(inst.dom_a.max_col(), inst.dom_b.max_col()));
    inst.ymap = Perm::identity(std::max(inst.dom_a.max_row(), inst.dom_b.max_row()));
  }
  if (j.contains("domain2") && j.contains("transform")) inst.dom_b = domain_from_json(j.at("domain2"));
  if (j.contains("cuts2") && j.contains("transform")) inst.cuts_b = cuts_from_json(j.at("cuts2"));
  if (j.contains("xmap")) inst.xmap = perm_from_json(j.at("xmap"));
  if (j.contains("ymap")) inst.ymap = perm_from_json(j.at("ymap"));
  return inst;
}

inline Json to_json(const MainInstance& inst) {
  return Json{{"domain", to_json(inst.dom_a)}, {"cuts", to_json(inst.cuts_a)},
              {"domain2", to_json(inst.dom_b)}, {"cuts2", to_json(inst.cuts_b)},
              {"xmap", to_json(inst.xmap)},     {"ymap", to_json(inst.ymap)}};
}

inline FlipInstance flip_instance_from_json(const Json& j) {
  FlipInstance inst;
  inst.m = j.at("M").get<int>();
  inst.n = j.at("N").get<int>();
  inst.h = boundary_from_json(j.at("H"));
  inst.v = boundary_from_json(j.at("V"));
  if (j.contains("H2")) inst.h_target = boundary_from_json(j.at("H2"));
  return inst;
}

inline GenFlipInstance genflip_instance_from_json(const Json& j) {
  GenFlipInstance g;
  g.n = j.at("n").get<int>();
  g.ci = j.at("i").get<int>();
  g.cj = j.at("j").get<int>();
  g.m = j.at("M").get<int>();
  g.nn = j.at("N").get<int>();
  g.w_left = perm_from_json(j.at("wL"));
  g.w_down = perm_from_json(j.at("wD"));
  g.w_up = perm_from_json(j.at("wU"));
  g.w_right = perm_from_json(j.at("wR"));
  if (j.contains("H")) g.h = boundary_from_json(j.at("H"));
  if (j.contains("V")) g.v = boundary_from_json(j.at("V"));
  return g;
}

inline LeftAlignedCuts left_aligned_from_json(const Json& dj, const Json& uj, const Json& rj) {
  LeftAlignedCuts c;
  c.d = dj.get<std::vector<long>>();
  c.u = uj.get<std::vector<long>>();
  c.r = rj.get<std::vector<long>>();
  return c;
}

inline Json shift_report_to_json(const ShiftTestReport& rep) {
  Json coords = Json::array();
  for (const auto& c : rep.coords)
    coords.push_back(Json{{"statistic", c.ks}, {"p_value", c.p_value}});
  return Json{{"coordinates", coords},
              {"energy", Json{{"statistic", rep.energy.statistic}, {"p_value", rep.energy.p_value}}},
              {"n", rep.samples},
              {"significance", rep.significance},
              {"bonferroni_level", rep.bonferroni_level()},
              {"decision", rep.rejected ? "reject" : "pass"}};
}

} // namespace sixv

#pragma once

// JSON encodings.  Regions are emitted normalized, so identical values
// produce identical text.
//
//   Region          {"dim": n, "boxes": [[[lo, hi], ...], ...]}   hi null = OMEGA
//   Partition       {"dim": n, "carrier": Region | "full", "cells": [Region, ...]}
//   Valuation       {"dim": n, "order": "le" | "lt", "vars": {"p": Region, ...}}
//   QuotientFrame   {"worlds": k, "edges": [[i, j], ...], "val": {"p": [i, ...]}, "cells": [Region, ...]}
//   Fibered         {"worlds": [name, ...], "edges": [[g, h], ...], "fibers": {name: Partition}}
//   Trace           {"k0": k, "steps": [...]}

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "omegan/error.hpp"
#include "omegan/modal.hpp"
#include "omegan/partition.hpp"
#include "omegan/refiner.hpp"
#include "omegan/region.hpp"

namespace omegan {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field.
class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "." + key, "missing");
  return *it;
}

inline std::uint64_t natural(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected a natural number");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) bad(path, "expected a natural number");
  return static_cast<std::uint64_t>(v);
}

inline std::size_t dimension(const Json& j, const std::string& path) {
  const auto d = natural(j, path);
  if (d == 0 || d > 16) bad(path, "dimension must be between 1 and 16");
  return static_cast<std::size_t>(d);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline bool has_object(const Json& j) {
  if (j.is_object()) return true;
  if (!j.is_array()) return false;
  return std::any_of(j.begin(), j.end(), [](const Json& e) { return has_object(e); });
}

inline void format_json(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      format_json(value, depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && has_object(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      format_json(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      format_json(j[i], depth + 1, out);
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace detail

/// Indented text in which arrays without objects stay on one line.
inline std::string format_json(const Json& j) {
  std::string out;
  detail::format_json(j, 0, out);
  return out + "\n";
}

// ---------------------------------------------------------------------------
// Orders

inline std::string order_name(OrderKind o) { return o == OrderKind::Reflexive ? "le" : "lt"; }

inline OrderKind parse_order(const std::string& s, const std::string& path = "order") {
  if (s == "le") return OrderKind::Reflexive;
  if (s == "lt") return OrderKind::Strict;
  detail::bad(path, "expected \"le\" or \"lt\", got \"" + s + "\"");
}

// ---------------------------------------------------------------------------
// Points and regions

inline Json to_json(const Point& p) { return Json(p.coords()); }

inline Json to_json(const Region& r) {
  Json boxes = Json::array();
  const Region n = normalize(r);
  for (const auto& b : n.boxes()) {
    Json box = Json::array();
    for (const auto& iv : b.intervals()) {
      box.push_back(Json::array({iv.lo(), iv.hi().is_omega() ? Json(nullptr) : Json(iv.hi().value())}));
    }
    boxes.push_back(std::move(box));
  }
  return Json{{"dim", r.dim()}, {"boxes", std::move(boxes)}};
}

inline Region region_from_json(const Json& j, const std::string& path = "region") {
  const std::size_t dim = detail::dimension(detail::field(j, "dim", path), path + ".dim");
  const Json& boxes = detail::field(j, "boxes", path);
  if (!boxes.is_array()) detail::bad(path + ".boxes", "expected an array");
  Region r(dim);
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    const std::string bp = path + ".boxes[" + std::to_string(b) + "]";
    const Json& box = boxes[b];
    if (!box.is_array() || box.size() != dim) detail::bad(bp, "expected " + std::to_string(dim) + " intervals");
    std::vector<Interval> iv;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string ip = bp + "[" + std::to_string(i) + "]";
      const Json& pair = box[i];
      if (!pair.is_array() || pair.size() != 2) detail::bad(ip, "expected [lo, hi]");
      const std::uint64_t lo = detail::natural(pair[0], ip + "[0]");
      const Extent hi = pair[1].is_null() ? OMEGA : Extent(detail::natural(pair[1], ip + "[1]"));
      if (hi.is_finite() && lo > hi.value()) detail::bad(ip, "empty interval");
      iv.emplace_back(lo, hi);
    }
    r.add(Box(std::move(iv)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Partitions

inline Json to_json(const Partition& p) {
  Json cells = Json::array();
  for (const auto& c : p.cells()) cells.push_back(to_json(c));
  Json carrier = set_equal(p.carrier(), Region::full(p.dim())) ? Json("full") : to_json(p.carrier());
  return Json{{"dim", p.dim()}, {"carrier", std::move(carrier)}, {"cells", std::move(cells)}};
}

inline Partition partition_from_json(const Json& j, const std::string& path = "partition") {
  const std::size_t dim = detail::dimension(detail::field(j, "dim", path), path + ".dim");
  Region carrier;
  if (auto it = j.find("carrier"); it == j.end() || (it->is_string() && *it == "full")) {
    carrier = Region::full(dim);
  } else if (it->is_string()) {
    detail::bad(path + ".carrier", "expected a region or \"full\"");
  } else {
    carrier = region_from_json(*it, path + ".carrier");
  }
  const Json& cells = detail::field(j, "cells", path);
  if (!cells.is_array()) detail::bad(path + ".cells", "expected an array");
  std::vector<Region> rs;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    rs.push_back(region_from_json(cells[i], path + ".cells[" + std::to_string(i) + "]"));
    if (rs.back().dim() != dim) detail::bad(path + ".cells[" + std::to_string(i) + "].dim", "dimension mismatch");
  }
  if (carrier.dim() != dim) detail::bad(path + ".carrier.dim", "dimension mismatch");
  try {
    return make_partition(std::move(carrier), std::move(rs));
  } catch (const PartitionError& e) {
    detail::bad(path + ".cells", e.what());
  }
}

// ---------------------------------------------------------------------------
// Valuations

inline Json to_json(const Valuation& v) {
  Json vars = Json::object();
  for (const auto& [name, r] : v.vars) vars[name] = to_json(r);
  return Json{{"dim", v.dim}, {"order", order_name(v.order)}, {"vars", std::move(vars)}};
}

inline Valuation valuation_from_json(const Json& j, const std::string& path = "valuation") {
  Valuation v;
  v.dim = detail::dimension(detail::field(j, "dim", path), path + ".dim");
  if (auto it = j.find("order"); it != j.end()) {
    if (!it->is_string()) detail::bad(path + ".order", "expected a string");
    v.order = parse_order(it->get<std::string>(), path + ".order");
  }
  const Json& vars = detail::field(j, "vars", path);
  if (!vars.is_object()) detail::bad(path + ".vars", "expected an object");
  for (const auto& [name, r] : vars.items()) {
    const std::string vp = path + ".vars." + name;
    Region region = region_from_json(r, vp);
    if (region.dim() != v.dim) detail::bad(vp + ".dim", "dimension mismatch");
    v.vars.emplace(name, std::move(region));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Traces

inline Json to_json(const RefinementTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json faces = Json::array();
    for (const auto& f : s.faces) {
      faces.push_back(Json{{"face", f.face.members()},
                           {"family", f.family_size},
                           {"induced_cells", f.induced_cells},
                           {"cells", f.cells},
                           {"sub", f.sub ? to_json(*f.sub) : Json(nullptr)}});
    }
    steps.push_back(Json{{"k", s.k},
                         {"cells_before", s.cells_before},
                         {"cells_after", s.cells_after},
                         {"faces", std::move(faces)}});
  }
  return Json{{"k0", t.k0},
              {"steps", std::move(steps)},
              {"dim", t.dim},
              {"one_dimensional", t.one_dimensional},
              {"cells_in", t.cells_in},
              {"cells_out", t.cells_out}};
}

inline RefinementTrace trace_from_json(const Json& j, const std::string& path = "trace") {
  RefinementTrace t;
  t.k0 = detail::natural(detail::field(j, "k0", path), path + ".k0");
  t.dim = static_cast<std::size_t>(detail::natural(detail::field(j, "dim", path), path + ".dim"));
  t.one_dimensional = detail::field(j, "one_dimensional", path).get<bool>();
  t.cells_in = detail::natural(detail::field(j, "cells_in", path), path + ".cells_in");
  t.cells_out = detail::natural(detail::field(j, "cells_out", path), path + ".cells_out");
  const Json& steps = detail::field(j, "steps", path);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string sp = path + ".steps[" + std::to_string(i) + "]";
    StepRecord s;
    s.k = detail::natural(detail::field(steps[i], "k", sp), sp + ".k");
    s.cells_before = detail::natural(detail::field(steps[i], "cells_before", sp), sp + ".cells_before");
    s.cells_after = detail::natural(detail::field(steps[i], "cells_after", sp), sp + ".cells_after");
    const Json& faces = detail::field(steps[i], "faces", sp);
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const std::string fp = sp + ".faces[" + std::to_string(k) + "]";
      FaceRecord f;
      for (const auto& c : detail::field(faces[k], "face", fp)) f.face.insert(detail::natural(c, fp + ".face"));
      f.family_size = detail::natural(detail::field(faces[k], "family", fp), fp + ".family");
      f.induced_cells = detail::natural(detail::field(faces[k], "induced_cells", fp), fp + ".induced_cells");
      f.cells = detail::natural(detail::field(faces[k], "cells", fp), fp + ".cells");
      const Json& sub = detail::field(faces[k], "sub", fp);
      if (!sub.is_null()) f.sub = std::make_shared<const RefinementTrace>(trace_from_json(sub, fp + ".sub"));
      s.faces.push_back(std::move(f));
    }
    t.steps.push_back(std::move(s));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Quotient frames

inline Json to_json(const QuotientFrame& qf) {
  Json edges = Json::array();
  for (const auto& [i, j] : qf.edges()) edges.push_back(Json::array({i, j}));
  Json val = Json::object();
  for (const auto& [name, worlds] : qf.val) val[name] = worlds;
  Json cells = Json::array();
  for (const auto& c : qf.cells) cells.push_back(to_json(c));
  return Json{{"worlds", qf.worlds()},
              {"edges", std::move(edges)},
              {"val", std::move(val)},
              {"cells", std::move(cells)},
              {"order", order_name(qf.order)}};
}

inline QuotientFrame quotient_from_json(const Json& j, const std::string& path = "frame") {
  QuotientFrame qf;
  const auto worlds = detail::natural(detail::field(j, "worlds", path), path + ".worlds");
  if (auto it = j.find("order"); it != j.end()) qf.order = parse_order(it->get<std::string>(), path + ".order");
  const Json& cells = detail::field(j, "cells", path);
  if (!cells.is_array() || cells.size() != worlds) detail::bad(path + ".cells", "expected one region per world");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    qf.cells.push_back(region_from_json(cells[i], path + ".cells[" + std::to_string(i) + "]"));
  }
  qf.succ.resize(worlds);
  for (const auto& e : detail::field(j, "edges", path)) {
    const auto a = detail::natural(e.at(0), path + ".edges");
    const auto b = detail::natural(e.at(1), path + ".edges");
    if (a >= worlds || b >= worlds) detail::bad(path + ".edges", "world out of range");
    qf.succ[a].push_back(b);
  }
  for (auto& s : qf.succ) std::sort(s.begin(), s.end());
  for (const auto& [name, ws] : detail::field(j, "val", path).items()) {
    auto& out = qf.val[name];
    for (const auto& w : ws) out.push_back(detail::natural(w, path + ".val." + name));
  }
  return qf;
}

// ---------------------------------------------------------------------------
// Fibered partitions of omega^n x G

inline Json to_json(const FiberedPartition& fp) {
  Json edges = Json::array();
  for (const auto& [g, h] : fp.edges) edges.push_back(Json::array({fp.worlds[g], fp.worlds[h]}));
  Json fibers = Json::object();
  for (std::size_t g = 0; g < fp.worlds.size(); ++g) fibers[fp.worlds[g]] = to_json(fp.fibers[g]);
  return Json{{"worlds", fp.worlds}, {"edges", std::move(edges)}, {"fibers", std::move(fibers)}};
}

inline FiberedPartition fibered_from_json(const Json& j, const std::string& path = "fibered") {
  FiberedPartition fp;
  const Json& worlds = detail::field(j, "worlds", path);
  if (!worlds.is_array() || worlds.empty()) detail::bad(path + ".worlds", "expected a nonempty array of names");
  for (const auto& w : worlds) {
    if (!w.is_string()) detail::bad(path + ".worlds", "world names must be strings");
    if (std::find(fp.worlds.begin(), fp.worlds.end(), w.get<std::string>()) != fp.worlds.end()) {
      detail::bad(path + ".worlds", "duplicate world " + w.get<std::string>());
    }
    fp.worlds.push_back(w.get<std::string>());
  }
  auto index_of = [&](const Json& name, const std::string& p) -> std::size_t {
    if (!name.is_string()) detail::bad(p, "expected a world name");
    auto it = std::find(fp.worlds.begin(), fp.worlds.end(), name.get<std::string>());
    if (it == fp.worlds.end()) detail::bad(p, "unknown world " + name.get<std::string>());
    return static_cast<std::size_t>(it - fp.worlds.begin());
  };
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) detail::bad(path + ".edges", "expected an array");
    for (std::size_t e = 0; e < it->size(); ++e) {
      const std::string ep = path + ".edges[" + std::to_string(e) + "]";
      const Json& pair = (*it)[e];
      if (!pair.is_array() || pair.size() != 2) detail::bad(ep, "expected [from, to]");
      auto edge = std::make_pair(index_of(pair[0], ep), index_of(pair[1], ep));
      if (!fp.has_edge(edge.first, edge.second)) fp.edges.push_back(edge);
    }
  }
  std::sort(fp.edges.begin(), fp.edges.end());
  const Json& fibers = detail::field(j, "fibers", path);
  std::optional<std::size_t> dim;
  for (const auto& w : fp.worlds) {
    const std::string wp = path + ".fibers." + w;
    auto it = fibers.find(w);
    if (it == fibers.end()) detail::bad(wp, "missing");
    fp.fibers.push_back(partition_from_json(*it, wp));
    if (!set_equal(fp.fibers.back().carrier(), Region::full(fp.fibers.back().dim()))) {
      detail::bad(wp + ".carrier", "fibers must partition omega^n");
    }
    if (dim && *dim != fp.fibers.back().dim()) detail::bad(wp + ".dim", "dimension mismatch");
    dim = fp.fibers.back().dim();
  }
  return fp;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const TunedCheck& t) {
  if (t.tuned()) return Json{{"tuned", true}};
  return Json{{"tuned", false},
              {"from", t.violation->from},
              {"to", t.violation->to},
              {"witness", to_json(t.violation->witness)}};
}

inline Json to_json(const MonotoneCheck& m) {
  if (m.monotone()) return Json{{"monotone", true}};
  const auto& v = *m.violation;
  if (v.kind == MonotoneViolation::Kind::NotPrecofinal) {
    return Json{{"monotone", false}, {"reason", "not_precofinal"}, {"cell", v.cell}, {"witness", to_json(v.x)}};
  }
  return Json{{"monotone", false}, {"reason", "j_set_order"}, {"cell", v.cell}, {"above", v.above},
              {"x", to_json(v.x)},   {"y", to_json(v.y)}};
}

inline Json to_json(const ProductTunedCheck& t, const FiberedPartition& fp) {
  if (t.tuned()) return Json{{"tuned", true}};
  const auto& v = *t.violation;
  return Json{{"tuned", false},
              {"from", Json{{"world", fp.worlds[v.from_world]}, {"cell", v.from_cell}}},
              {"to", Json{{"world", fp.worlds[v.to_world]}, {"cell", v.to_cell}}},
              {"witness", to_json(v.witness)}};
}

inline Json to_json(const SubalgebraResult& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(g.members());
  Json elems = Json::array();
  for (const auto& e : s.elements) elems.push_back(e.members());
  Json sees = Json::array();
  for (const auto& e : s.sees) sees.push_back(e.members());
  return Json{{"order", order_name(s.order)},
              {"atoms", to_json(s.atoms)},
              {"atom_count", s.atom_count()},
              {"boolean_algebra_size", s.atom_count() < 64 ? Json(1ULL << s.atom_count()) : Json(nullptr)},
              {"element_count", s.element_count()},
              {"generators", std::move(gens)},
              {"diamond_of_atom", std::move(sees)},
              {"elements", std::move(elems)}};
}

}  // namespace omegan

#pragma once

// Modal semantics over (omega^n, <=) and (omega^n, <): exact truth regions on
// the infinite frame, finite quotient models over tuned partitions, and
// closure of finitely many definable sets under the modal algebra operations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omegan/error.hpp"
#include "omegan/formula.hpp"
#include "omegan/partition.hpp"
#include "omegan/refiner.hpp"
#include "omegan/region.hpp"

namespace omegan {

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name) : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Partition handed to quotient_frame is not tuned for the chosen order.
class NotTunedError : public PreconditionError {
 public:
  explicit NotTunedError(TunedViolation v)
      : PreconditionError("partition is not tuned: cell " + std::to_string(v.from) + " -> cell " +
                          std::to_string(v.to) + " fails at " + v.witness.str()),
        violation_(std::move(v)) {}
  const TunedViolation& violation() const { return violation_; }

 private:
  TunedViolation violation_;
};

struct Valuation {
  std::size_t dim = 1;
  OrderKind order = OrderKind::Reflexive;
  std::map<std::string, Region> vars;

  const Region& at(const std::string& name) const {
    auto it = vars.find(name);
    if (it == vars.end()) throw UnboundVariable(name);
    return it->second;
  }
};

inline void validate(const Valuation& v) {
  if (v.dim == 0) throw PreconditionError("valuation: dimension must be positive");
  for (const auto& [name, r] : v.vars) require_same_dim(r.dim(), v.dim, ("valuation variable " + name).c_str());
}

// ---------------------------------------------------------------------------
// Symbolic semantics

namespace detail {

using RegionMemo = std::unordered_map<std::string, Region>;

inline const Region& truth_memo(const Formula& f, const Valuation& v, RegionMemo& memo) {
  const std::string key = f.str();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Region r;
  switch (f.op()) {
    case Op::Var: r = v.at(f.name()); break;
    case Op::False: r = Region::empty_set(v.dim); break;
    case Op::True: r = Region::full(v.dim); break;
    case Op::Not: r = complement(truth_memo(f.lhs(), v, memo)); break;
    case Op::And: r = intersect(truth_memo(f.lhs(), v, memo), truth_memo(f.rhs(), v, memo)); break;
    case Op::Or: r = unite(truth_memo(f.lhs(), v, memo), truth_memo(f.rhs(), v, memo)); break;
    case Op::Implies:
      r = unite(complement(truth_memo(f.lhs(), v, memo)), truth_memo(f.rhs(), v, memo));
      break;
    case Op::Diamond: r = downset(truth_memo(f.lhs(), v, memo), v.order); break;
    case Op::Box: r = complement(downset(complement(truth_memo(f.lhs(), v, memo)), v.order)); break;
  }
  return memo.emplace(key, normalize(r)).first->second;
}

}  // namespace detail

/// Exact set of points of omega^n where f holds.
inline Region truth_region(const Formula& f, const Valuation& v) {
  validate(v);
  detail::RegionMemo memo;
  return detail::truth_memo(f, v, memo);
}

// ---------------------------------------------------------------------------
// Quotient models

/// Finite frame on the cells of a tuned partition; world i sees world j iff
/// some point of cell i sees some point of cell j.
struct QuotientFrame {
  OrderKind order = OrderKind::Reflexive;
  std::vector<Region> cells;
  std::vector<std::vector<std::size_t>> succ;           // sorted
  std::map<std::string, std::vector<std::size_t>> val;  // worlds where the variable holds

  std::size_t worlds() const { return cells.size(); }
  std::size_t dim() const { return cells.empty() ? 0 : cells.front().dim(); }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < succ.size(); ++i) {
      for (auto j : succ[i]) out.emplace_back(i, j);
    }
    return out;
  }

  bool sees(std::size_t i, std::size_t j) const { return std::binary_search(succ[i].begin(), succ[i].end(), j); }
};

inline QuotientFrame quotient_frame(const Partition& p, OrderKind order, const Valuation& v) {
  validate(v);
  require_same_dim(p.dim(), v.dim, "quotient_frame");
  if (auto t = is_tuned(p, order); !t) throw NotTunedError(*t.violation);

  QuotientFrame qf;
  qf.order = order;
  qf.cells = p.cells();
  qf.succ.resize(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Region down = downset(p.cell(j), order);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (intersects(p.cell(i), down)) qf.succ[i].push_back(j);
    }
  }
  for (auto& s : qf.succ) std::sort(s.begin(), s.end());
  for (const auto& [name, region] : v.vars) {
    auto& worlds = qf.val[name];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (is_subset(p.cell(i), region)) {
        worlds.push_back(i);
      } else if (intersects(p.cell(i), region)) {
        throw PreconditionError("quotient_frame: cell " + std::to_string(i) + " splits variable '" + name + "'");
      }
    }
  }
  return qf;
}

namespace detail {

using WorldMemo = std::unordered_map<std::string, std::vector<bool>>;

inline const std::vector<bool>& mc_memo(const QuotientFrame& qf, const Formula& f, WorldMemo& memo) {
  const std::string key = f.str();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::size_t w = qf.worlds();
  std::vector<bool> out(w, false);
  switch (f.op()) {
    case Op::Var: {
      auto it = qf.val.find(f.name());
      if (it == qf.val.end()) throw UnboundVariable(f.name());
      for (auto i : it->second) out[i] = true;
      break;
    }
    case Op::False: break;
    case Op::True: out.assign(w, true); break;
    case Op::Not: {
      const auto& a = mc_memo(qf, f.lhs(), memo);
      for (std::size_t i = 0; i < w; ++i) out[i] = !a[i];
      break;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      const auto a = mc_memo(qf, f.lhs(), memo);
      const auto& b = mc_memo(qf, f.rhs(), memo);
      for (std::size_t i = 0; i < w; ++i) {
        out[i] = f.op() == Op::And ? (a[i] && b[i]) : f.op() == Op::Or ? (a[i] || b[i]) : (!a[i] || b[i]);
      }
      break;
    }
    case Op::Diamond:
    case Op::Box: {
      const auto& a = mc_memo(qf, f.lhs(), memo);
      const bool dia = f.op() == Op::Diamond;
      for (std::size_t i = 0; i < w; ++i) {
        bool any = false, all = true;
        for (auto j : qf.succ[i]) {
          any = any || a[j];
          all = all && a[j];
        }
        out[i] = dia ? any : all;
      }
      break;
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace detail

/// Worlds of the finite frame where f holds.
inline std::vector<bool> mc_finite(const QuotientFrame& qf, const Formula& f) {
  detail::WorldMemo memo;
  return detail::mc_memo(qf, f, memo);
}

inline Region cells_union(const QuotientFrame& qf, const std::vector<bool>& worlds) {
  Region r(qf.dim());
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (worlds[i]) r = unite(r, qf.cells[i]);
  }
  return normalize(r);
}

struct SubformulaCheck {
  Formula formula;
  Region symbolic;
  std::vector<bool> worlds;
  bool agrees = false;
};

struct FiltrationReport {
  Partition base;     // atoms of the variable regions
  Partition refined;  // tuned refinement
  RefinementTrace trace;
  QuotientFrame frame;
  std::vector<SubformulaCheck> subformulas;  // post-order; the last is the input
  Region truth;
  bool globally_true = false;
  bool truth_lemma_holds = false;
};

/// Symbolic truth on omega^n versus truth in the finite quotient over a
/// monotone refinement of the valuation's atoms, for every subformula.
inline FiltrationReport filtration_pipeline(const Formula& f, const Valuation& v) {
  validate(v);
  for (const auto& name : f.variables()) v.at(name);

  FiltrationReport rep;
  std::vector<Region> family;
  for (const auto& [name, r] : v.vars) family.push_back(r);
  rep.base = induced(Region::full(v.dim), family);
  Refinement ref = refine_monotone(rep.base);
  rep.refined = std::move(ref.partition);
  rep.trace = std::move(ref.trace);
  rep.frame = quotient_frame(rep.refined, v.order, v);

  detail::RegionMemo regions;
  detail::WorldMemo worlds;
  rep.truth_lemma_holds = true;
  for (const auto& sub : f.subformulas()) {
    SubformulaCheck c{sub, detail::truth_memo(sub, v, regions), detail::mc_memo(rep.frame, sub, worlds), false};
    c.agrees = set_equal(c.symbolic, cells_union(rep.frame, c.worlds));
    rep.truth_lemma_holds = rep.truth_lemma_holds && c.agrees;
    rep.subformulas.push_back(std::move(c));
  }
  rep.truth = rep.subformulas.back().symbolic;
  rep.globally_true = set_equal(rep.truth, Region::full(v.dim));
  return rep;
}

// ---------------------------------------------------------------------------
// Finitely generated subalgebras

/// Set of atom indices.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static AtomSet all(std::size_t n) {
    AtomSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.insert(i);
    return s;
  }

  std::size_t universe() const { return n_; }
  void insert(std::size_t i) { words_[i / 64] |= 1ULL << (i % 64); }
  bool contains(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  AtomSet operator~() const {
    AtomSet r = all(n_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~words_[k];
    return r;
  }
  AtomSet operator&(const AtomSet& o) const {
    AtomSet r(n_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
    return r;
  }
  AtomSet operator|(const AtomSet& o) const {
    AtomSet r(n_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] | o.words_[k];
    return r;
  }

  auto operator<=>(const AtomSet&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubalgebraResult {
  OrderKind order = OrderKind::Reflexive;
  Partition atoms;  // tuned, so unions of atoms are closed under downset
  RefinementTrace trace;
  std::vector<AtomSet> sees;        // sees[b]: atoms inside downset(atom b)
  std::vector<AtomSet> generators;  // decomposition of each generator
  std::vector<AtomSet> elements;    // closed family, sorted

  std::size_t atom_count() const { return atoms.size(); }
  std::size_t element_count() const { return elements.size(); }

  AtomSet diamond(const AtomSet& s) const {
    AtomSet r(atom_count());
    for (auto b : s.members()) r = r | sees[b];
    return r;
  }

  Region region_of(const AtomSet& s) const {
    Region r(atoms.dim());
    for (auto i : s.members()) r = unite(r, atoms.cell(i));
    return normalize(r);
  }

  /// family closed under complement, pairwise intersection and diamond
  bool closed(const std::vector<AtomSet>& family) const {
    const std::set<AtomSet> in(family.begin(), family.end());
    for (const auto& x : family) {
      if (!in.count(~x) || !in.count(diamond(x))) return false;
      for (const auto& y : family) {
        if (!in.count(x & y)) return false;
      }
    }
    return true;
  }
};

/// Subalgebra of the complex algebra generated by finitely many regions,
/// computed inside the finite Boolean algebra of a tuned refinement of the
/// generators' atoms.
inline SubalgebraResult generate_subalgebra(const std::vector<Region>& generators, std::size_t dim, OrderKind order,
                                            std::size_t max_elements = 1U << 16) {
  if (dim == 0) throw PreconditionError("generate_subalgebra: dimension must be positive");
  for (const auto& g : generators) require_same_dim(g.dim(), dim, "generate_subalgebra");

  SubalgebraResult res;
  res.order = order;
  Refinement ref = refine_monotone(induced(Region::full(dim), generators));
  res.atoms = std::move(ref.partition);
  res.trace = std::move(ref.trace);
  const std::size_t m = res.atoms.size();

  for (std::size_t b = 0; b < m; ++b) {
    const Region down = downset(res.atoms.cell(b), order);
    AtomSet s(m);
    for (std::size_t a = 0; a < m; ++a) {
      if (intersects(res.atoms.cell(a), down)) s.insert(a);
    }
    if (!set_equal(res.region_of(s), down)) throw InternalError("generate_subalgebra: atom partition is not tuned");
    res.sees.push_back(std::move(s));
  }
  for (const auto& g : generators) {
    AtomSet s(m);
    for (std::size_t a = 0; a < m; ++a) {
      if (intersects(res.atoms.cell(a), g)) s.insert(a);
    }
    res.generators.push_back(std::move(s));
  }

  std::set<AtomSet> elements;
  std::vector<AtomSet> work;
  auto add = [&](AtomSet s) {
    if (elements.insert(s).second) {
      if (elements.size() > max_elements) {
        throw PreconditionError("generate_subalgebra: more than " + std::to_string(max_elements) + " elements");
      }
      work.push_back(std::move(s));
    }
  };
  add(AtomSet(m));
  add(AtomSet::all(m));
  for (const auto& g : res.generators) add(g);
  while (!work.empty()) {
    AtomSet x = std::move(work.back());
    work.pop_back();
    add(~x);
    add(res.diamond(x));
    const std::vector<AtomSet> snapshot(elements.begin(), elements.end());
    for (const auto& y : snapshot) add(x & y);
  }
  res.elements.assign(elements.begin(), elements.end());
  if (!res.closed(res.elements)) throw InternalError("generate_subalgebra: fixpoint is not closed");
  return res;
}

}  // namespace omegan

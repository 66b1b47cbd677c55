// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_LOCALITY_HPP
#define PHOA_LOCALITY_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phoa/axioms.hpp"
#include "phoa/constructions.hpp"
#include "phoa/core.hpp"
#include "phoa/interval.hpp"
#include "phoa/presheaf.hpp"
#include "phoa/shapes.hpp"
#include "phoa/topos.hpp"

namespace phoa {

inline constexpr const char* kBudgetPrefix = "budget exceeded: ";

/// Runs a check, turning budget and precondition failures into skips.
template <class Body>
CheckReport guarded(const std::string& name, Body&& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    return CheckReport::skipped(name, std::string(kBudgetPrefix) + e.what());
  } catch (const PreconditionError& e) {
    return CheckReport::skipped(name, e.what());
  }
}

inline bool skipped_for_budget(const CheckReport& r) {
  return r.status == Status::skip && r.reason.find(kBudgetPrefix) != std::string::npos;
}

/// X is u-local: X^u: X^T → X^S is an isomorphism.
inline CheckReport is_local(std::string name, const Presheaf& X, const NatTrans& u) {
  return restriction_report(std::move(name), X, u, RestrictionMode::iso);
}

/// Every map S → A extends uniquely along v: S → T. The witness indexes
/// the offending map in enumeration order.
inline std::optional<Witness> orthogonality_failure(const Presheaf& A, const NatTrans& v) {
  const auto& S = v.source();
  const auto& T = v.target();
  const auto& C = S.base();
  std::optional<Witness> bad;
  int index = 0;
  search_nats(S, A, {}, [&](const std::vector<int>& beta) {
    NatSearchOptions opt;
    opt.fixed.assign(static_cast<std::size_t>(T.total()), -1);
    bool clash = false;
    for (int c = 0; c < C.object_count() && !clash; ++c)
      for (int s = 0; s < S.size(c); ++s) {
        int& slot = opt.fixed[T.offset(c) + v(c, s)];
        const int val = beta[S.offset(c) + s];
        if (slot >= 0 && slot != val) {
          clash = true;
          break;
        }
        slot = val;
      }
    int found = 0;
    if (!clash) search_nats(T, A, opt, [&](const std::vector<int>&) { return ++found < 2; });
    if (found != 1) {
      bad = Witness{found == 0 ? "no-extension" : "extension-not-unique", -1, "", {index},
                    "map " + std::to_string(index) + " out of the domain"};
      return false;
    }
    ++index;
    return true;
  });
  return bad;
}

/// Locality through the external formulation: unique extension along
/// y(c) × u for every object c.
inline CheckReport is_local_external(std::string name, const Presheaf& X, const NatTrans& u) {
  const auto& C = X.base();
  for (int c = 0; c < C.object_count(); ++c) {
    auto y = yoneda(C, c);
    auto v = product_map(identity_nat(y), u);
    if (auto w = orthogonality_failure(X, v)) {
      w->stage = c;
      w->object = C.object_name(c);
      return CheckReport::failed(std::move(name), *w);
    }
  }
  return CheckReport::passed(std::move(name));
}

/// u.α: the pullback of u: S → T to the parts where α: T → I is true.
struct OpenRestriction {
  Subobject source_part;  // S.α ↪ S
  Subobject target_part;  // T.α ↪ T
  NatTrans map;           // S.α → T.α
};

inline OpenRestriction restrict_along_open(const Interval& I, const NatTrans& u, const NatTrans& alpha) {
  if (!(alpha.source() == u.target()) || !(alpha.target() == I.carrier))
    throw StructuralError("restrict_along_open: alpha must be a map from the codomain of u to I");
  auto tp = make_subobject(u.target(), [&](int c, int t) { return alpha(c, t) == I.top(c); });
  auto sp = preimage(u, tp);
  auto map = corestrict(compose(u, sp.inclusion), tp);
  return OpenRestriction{sp, tp, map};
}

// ---------------------------------------------------------------------------
// The synthetic colimit over the slices I/j.

/// Λ_j ↪ Δ²_j over ∫y(c) for an element j ∈ I(c): the display pulled back
/// along j: y(c) → I.
struct SliceFigure {
  int stage = 0;
  int point = 0;
  Elements elements;  // ∫y(c)
  Presheaf triangle;
  Presheaf horn;
  NatTrans inclusion;
  /// Per horn element (global id over ∫y(c)): its stage d, the morphism
  /// g: d → c and the lower coordinate i₂.
  std::vector<int> horn_stage, horn_morphism, horn_lower;
  int top = -1;  // global id of (j ⊒ j) over id_c in `triangle`
};

namespace detail {

/// Position of each element of E inside its fibre of p, as to_elements orders it.
inline std::vector<int> fibre_positions(const NatTrans& p) {
  const auto& E = p.source();
  const auto& B = p.target();
  std::vector<int> count(static_cast<std::size_t>(B.total()), 0), pos(static_cast<std::size_t>(E.total()));
  for (int c = 0; c < E.base().object_count(); ++c)
    for (int e = 0; e < E.size(c); ++e) pos[E.offset(c) + e] = count[B.offset(c) + p(c, e)]++;
  return pos;
}

}  // namespace detail

inline SliceFigure slice_figure(const Interval& I, const Simplex& tri, const Horn& h, const Display& disp, int c,
                                int j) {
  const auto& C = I.base();
  auto y = yoneda(C, c);
  std::vector<int> jf;
  for (int d = 0; d < C.object_count(); ++d)
    for (int g : C.hom(d, c)) jf.push_back(I.carrier.act(g, j));
  NatTrans jmap(y, I.carrier, std::move(jf));
  auto PD = pullback(disp.triangle, jmap);
  auto PL = pullback(disp.horn, jmap);
  std::vector<int> incl;
  for (int d = 0; d < C.object_count(); ++d) {
    std::map<std::pair<int, int>, int> at;
    for (int e = 0; e < PD.object.size(d); ++e) at.emplace(std::make_pair(PD.first(d, e), PD.second(d, e)), e);
    for (int e = 0; e < PL.object.size(d); ++e)
      incl.push_back(at.at({h.inclusion()(d, PL.first(d, e)), PL.second(d, e)}));
  }
  NatTrans to_pd(PL.object, PD.object, std::move(incl));
  SliceFigure F;
  F.stage = c;
  F.point = j;
  F.elements = elements_category(y);
  F.triangle = to_elements(PD.second, F.elements);
  F.horn = to_elements(PL.second, F.elements);
  F.inclusion = to_elements_map(to_pd, PL.second, PD.second);
  auto lpos = detail::fibre_positions(PL.second);
  F.horn_stage.assign(static_cast<std::size_t>(F.horn.total()), -1);
  F.horn_morphism = F.horn_stage;
  F.horn_lower = F.horn_stage;
  for (int d = 0; d < C.object_count(); ++d)
    for (int e = 0; e < PL.object.size(d); ++e) {
      const int hp = PL.second(d, e);
      const int gid = F.horn.offset(F.elements.object(d, hp)) + lpos[PL.object.offset(d) + e];
      F.horn_stage[gid] = d;
      F.horn_morphism[gid] = C.hom(d, c)[hp];
      F.horn_lower[gid] = tri.tuple(d, h.inclusion()(d, PL.first(d, e)))[1];
    }
  auto dpos = detail::fibre_positions(PD.second);
  const int id_pos = C.hom_position(C.identity(c));
  const int jj = tri.find(c, {j, j});
  for (int e = 0; e < PD.object.size(c); ++e)
    if (PD.first(c, e) == jj && PD.second(c, e) == id_pos)
      F.top = F.triangle.offset(F.elements.object(c, id_pos)) + dpos[PD.object.offset(c) + e];
  if (F.top < 0) throw InternalError("slice figure: top element missing");
  return F;
}

/// The synthetic colimit of h: Λ_j → C: the unique extension along
/// Λ_j ↪ Δ²_j evaluated at the top (j ⊒ j). `h` is flat over the horn's
/// global ids. Throws PreconditionError when the extension is not unique.
inline int synthetic_colimit(const SliceFigure& F, const Presheaf& target, const std::vector<int>& h) {
  auto Cw = weaken(target, F.elements);
  NatSearchOptions opt;
  opt.fixed.assign(static_cast<std::size_t>(F.triangle.total()), -1);
  for (int o = 0; o < F.horn.base().object_count(); ++o)
    for (int x = 0; x < F.horn.size(o); ++x) opt.fixed[F.triangle.offset(o) + F.inclusion(o, x)] = h[F.horn.offset(o) + x];
  int found = 0, value = -1;
  search_nats(F.triangle, Cw, opt, [&](const std::vector<int>& a) {
    if (found++ == 0) value = a[F.top];
    return found < 2;
  });
  if (found != 1)
    throw PreconditionError(std::string("synthetic colimit: the figure has ") + (found ? "several" : "no") +
                            " extensions; the target is not based Segal complete");
  return value;
}

// ---------------------------------------------------------------------------
// The interval topos: shapes and constructions computed once per interval.

namespace detail {

template <class T>
class Lazy {
public:
  template <class Make>
  const T& get(Make&& make) const {
    std::call_once(flag_, [&] { value_.emplace(make()); });
    return *value_;
  }

private:
  mutable std::once_flag flag_;
  mutable std::optional<T> value_;
};

template <class T>
class Memo {
public:
  template <class Make>
  std::shared_ptr<const T> get(const Presheaf& key, Make&& make) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    auto v = std::make_shared<const T>(make());
    std::lock_guard lock(mu_);
    return map_.emplace(key, v).first->second;
  }

private:
  mutable std::mutex mu_;
  mutable std::unordered_map<Presheaf, std::shared_ptr<const T>, PresheafHash> map_;
};

}  // namespace detail

struct AxiomProfile {
  std::vector<CheckReport> reports;
  InternalSums sums;

  const CheckReport& report(const std::string& name) const {
    for (const auto& r : reports)
      if (r.name == name) return r;
    throw InternalError("no axiom report named " + name);
  }
  bool holds(const std::string& name) const { return report(name).is_pass(); }
  /// Phoa in every dimension the engine can reach.
  bool phoa() const { return holds("axiom.phoa.1") && holds("axiom.phoa.2") && holds("axiom.phoa.3"); }
  bool phoa_low() const { return holds("axiom.phoa.1") && holds("axiom.phoa.2"); }
};

/// σ_{IsT(j)} for the generic j, as a map of presheaves over ∫I.
struct GenericComparison {
  Elements elements;  // ∫I
  Interval interval;  // I weakened to ∫I
  Presheaf truth;     // (c, i) ↦ {i = 1}
  NatTrans sigma;
};

class IntervalTopos {
public:
  explicit IntervalTopos(Interval I) : I_(std::move(I)) {}
  IntervalTopos(const IntervalTopos&) = delete;
  IntervalTopos& operator=(const IntervalTopos&) = delete;

  const Interval& interval() const { return I_; }
  const FiniteCategory& base() const { return I_.base(); }

  const Simplex& triangle() const {
    return triangle_.get([&] { return simplex(I_, 2); });
  }
  const Horn& horn() const {
    return horn_.get([&] { return phoa::horn(I_, triangle()); });
  }
  const WalkingEquivalence& equivalence() const {
    return equivalence_.get([&] { return walking_equivalence(I_, triangle()); });
  }
  const NatTrans& equivalence_collapse() const {
    return collapse_.get([&] { return to_terminal(equivalence().object()); });
  }
  const Display& display() const {
    return display_.get([&] { return phoa::display(I_, triangle(), horn()); });
  }
  const Elements& interval_elements() const {
    return elements_.get([&] { return elements_category(I_.carrier); });
  }
  const GenericHorn& generic_horn() const {
    return generic_horn_.get([&] { return phoa::generic_horn(I_, triangle(), horn(), interval_elements()); });
  }
  const GenericComparison& generic_comparison() const {
    return generic_comparison_.get([&] {
      const auto& el = interval_elements();
      auto J = weaken_interval(I_, el);
      auto Z = detail::generic_point_truth(I_.one, el);
      auto S = phoa::scone(J, Z);
      auto L = phoa::lift(J, Z);
      return GenericComparison{el, J, Z, comparison(J, S, L)};
    });
  }

  std::shared_ptr<const Lifted> lift(const Presheaf& X) const {
    return lifts_.get(X, [&] { return phoa::lift(I_, X); });
  }
  std::shared_ptr<const SierpinskiCone> scone(const Presheaf& X) const {
    return scones_.get(X, [&] { return phoa::scone(I_, X, interval_elements()); });
  }
  /// σ_X: X⊥ → L(X).
  std::shared_ptr<const NatTrans> sigma(const Presheaf& X) const {
    return sigmas_.get(X, [&] { return comparison(I_, *scone(X), *lift(X)); });
  }

  const SliceFigure& slice(int c, int j) const {
    const auto& figs = slices_.get([&] {
      std::vector<std::vector<SliceFigure>> out(static_cast<std::size_t>(base().object_count()));
      for (int d = 0; d < base().object_count(); ++d)
        for (int i = 0; i < I_.size(d); ++i) out[d].push_back(slice_figure(I_, triangle(), horn(), display(), d, i));
      return out;
    });
    return figs[c][j];
  }

  const AxiomProfile& axioms() const {
    return axioms_.get([&] { return compute_axioms(); });
  }

  /// Cached property report for a presheaf; `compute` runs at most once per
  /// (property, presheaf) unless it throws.
  CheckReport remember(const std::string& property, const std::string& object, const Presheaf& X,
                       const std::function<CheckReport()>& compute) const {
    const std::string name = property + "(" + object + ")";
    auto r = *property_memo(property).get(X, [&] { return guarded(name, compute); });
    r.name = name;
    return r;
  }

private:
  AxiomProfile compute_axioms() const {
    AxiomProfile p;
    auto& rs = p.reports;
    auto run = [&](const std::string& name, auto&& body) {
      rs.push_back(guarded(name, [&] { return timed(body); }));
      return rs.back();
    };
    run("axiom.semilattice", [&] { return check_semilattice(I_); });
    auto dl = run("axiom.distributive_lattice", [&] { return check_distributive_lattice(I_); });
    run("axiom.consistent", [&] { return check_consistent(I_); });
    run("axiom.conservative", [&] { return check_conservative(I_); });
    run("axiom.disjunction", [&] { return check_disjunction(I_); });
    run("interval.truth_meets", [&] { return check_truth_preserves_meets(I_); });
    run("axiom.internal_sums", [&] {
      p.sums = find_internal_sums(I_, *lift(I_.carrier));
      return p.sums.report;
    });
    run("axiom.factors_meets", [&] { return check_factors_meets(I_, *lift(I_.carrier), p.sums); });
    auto phoa1 = run("axiom.phoa.1", [&] { return check_phoa(I_, 1); });
    run("axiom.phoa.2", [&] { return check_phoa(I_, 2); });
    run("axiom.phoa.3", [&] { return check_phoa(I_, 3); });
    auto interp = run("axiom.phoa_interpolation", [&] { return check_phoa_interpolation(I_); });
    if (dl.is_pass() && interp.status != Status::skip && phoa1.status != Status::skip &&
        interp.is_pass() != phoa1.is_pass())
      throw InternalError("interpolation and boundary forms of the Phoa principle disagree on a distributive lattice");
    run("axiom.relative_phoa", [&] {
      if (!I_.has_join()) return CheckReport::skipped("axiom.relative_phoa", "no join supplied");
      return check_relative_phoa(I_, triangle(), horn(), interval_elements(), phoa1);
    });
    return p;
  }

  const detail::Memo<CheckReport>& property_memo(const std::string& property) const {
    std::lock_guard lock(props_mu_);
    auto& m = props_[property];
    if (!m) m = std::make_unique<detail::Memo<CheckReport>>();
    return *m;
  }

  Interval I_;
  detail::Lazy<Simplex> triangle_;
  detail::Lazy<Horn> horn_;
  detail::Lazy<WalkingEquivalence> equivalence_;
  detail::Lazy<NatTrans> collapse_;
  detail::Lazy<Display> display_;
  detail::Lazy<Elements> elements_;
  detail::Lazy<GenericHorn> generic_horn_;
  detail::Lazy<GenericComparison> generic_comparison_;
  detail::Lazy<std::vector<std::vector<SliceFigure>>> slices_;
  detail::Lazy<AxiomProfile> axioms_;
  detail::Memo<Lifted> lifts_;
  detail::Memo<SierpinskiCone> scones_;
  detail::Memo<NatTrans> sigmas_;
  mutable std::mutex props_mu_;
  mutable std::map<std::string, std::unique_ptr<detail::Memo<CheckReport>>> props_;
};

// ---------------------------------------------------------------------------
// Completeness checkers.

using NamedObject = std::pair<std::string, Presheaf>;

inline CheckReport is_segal(const IntervalTopos& T, const std::string& name, const Presheaf& X) {
  return T.remember("segal", name, X, [&] { return is_local("segal", X, T.horn().inclusion()); });
}

inline CheckReport is_rezk(const IntervalTopos& T, const std::string& name, const Presheaf& X) {
  return T.remember("rezk", name, X, [&] { return is_local("rezk", X, T.equivalence_collapse()); });
}

/// I × X is local for Λ ↪ Δ² over I, computed over ∫I.
inline CheckReport is_based_segal(const IntervalTopos& T, const std::string& name, const Presheaf& X) {
  return T.remember("based_segal", name, X, [&] {
    if (!T.interval().has_join()) throw PreconditionError("display requires lattice");
    const auto& g = T.generic_horn();
    return is_local("based_segal", weaken(X, g.elements), g.inclusion);
  });
}

/// Local for σ_Z for every Z in the sample, and for σ_{IsT(j)} at the
/// generic j over ∫I.
inline CheckReport is_sierpinski(const IntervalTopos& T, const std::string& name, const Presheaf& X,
                                 const std::vector<NamedObject>& sample) {
  std::string tag;
  for (const auto& [n, Z] : sample) tag += n + ",";
  tag += "IsT(j)";
  // The sample is part of the question, so it is part of the memo key.
  return T.remember("sierpinski[" + tag + "]", name, X, [&] {
    const std::string nm = "sierpinski";
    if (!T.axioms().holds("axiom.consistent"))
      return CheckReport::skipped(nm, "interval is not consistent, so sigma is not defined");
    // A failure anywhere is definitive; budget overruns only matter if
    // nothing fails.
    std::vector<std::string> over;
    auto attempt = [&](const std::string& label, auto&& run) -> std::optional<CheckReport> {
      try {
        auto r = run();
        if (r.is_fail()) {
          r.witness->detail = "sigma_" + label + ": " + r.witness->detail;
          return r.fact("sample", tag);
        }
      } catch (const BudgetExceeded&) {
        over.push_back(label);
      }
      return std::nullopt;
    };
    for (const auto& [n, Z] : sample)
      if (auto r = attempt(n, [&] { return is_local(nm, X, *T.sigma(Z)); })) return *r;
    const auto& g = T.generic_comparison();
    if (auto r = attempt("IsT(j)", [&] { return is_local(nm, weaken(X, g.elements), g.sigma); })) return *r;
    if (!over.empty()) {
      std::string which;
      for (const auto& o : over) which += (which.empty() ? "" : ",") + o;
      return CheckReport::skipped(nm, std::string(kBudgetPrefix) + "sigma_Z for Z in {" + which + "}").fact("sample",
                                                                                                             tag);
    }
    return CheckReport::passed(nm).fact("sample", tag);
  });
}

inline std::vector<std::string> property_names() {
  return {"segal",
          "rezk",
          "based_segal",
          "sierpinski",
          "infinity_category",
          "segal_well_complete",
          "rezk_well_complete",
          "based_segal_well_complete",
          "sierpinski_well_complete"};
}

/// Dispatches a property by name. The report is named property(object).
inline CheckReport check_property(const IntervalTopos& T, const std::string& property, const std::string& name,
                                  const Presheaf& X, const std::vector<NamedObject>& sample) {
  const std::string suffix = "_well_complete";
  if (property.size() > suffix.size() && property.ends_with(suffix)) {
    const auto kind = property.substr(0, property.size() - suffix.size());
    auto r = guarded(property + "(" + name + ")", [&] {
      auto LX = T.lift(X)->object;
      auto inner = check_property(T, kind, "L(" + name + ")", LX, sample);
      inner.name = property + "(" + name + ")";
      return inner;
    });
    return r;
  }
  if (property == "segal") return is_segal(T, name, X);
  if (property == "rezk") return is_rezk(T, name, X);
  if (property == "based_segal") return is_based_segal(T, name, X);
  if (property == "sierpinski") {
    auto r = is_sierpinski(T, name, X, sample);
    r.name = "sierpinski(" + name + ")";
    return r;
  }
  if (property == "infinity_category") {
    auto s = is_segal(T, name, X);
    if (!s.is_pass()) return (s.name = "infinity_category(" + name + ")", s);
    auto r = is_rezk(T, name, X);
    r.name = "infinity_category(" + name + ")";
    return r;
  }
  throw ReferenceError("unknown property '" + property + "'");
}

// ---------------------------------------------------------------------------
// Fiore's lemma.

/// H1: I is u-local. H2: A is local for u.α for every global α: T → I.
/// H2 internal: A is orthogonal to (y(c) × u).α for every c and every
/// generalized α: y(c) × T → I; this implies H2. C: L(A) is u-local.
/// Passes iff ¬(H1 ∧ H2 internal) ∨ C.
inline CheckReport check_fiore_instance(const IntervalTopos& T, const std::string& u_name, const NatTrans& u,
                                        const std::string& a_name, const Presheaf& A) {
  const std::string name = "fiore(" + u_name + "," + a_name + ")";
  return guarded(name, [&] {
    const auto& I = T.interval();
    const auto& C = I.base();
    auto vacuous = [&](CheckReport r) { return r.fact("verdict", "vacuous"); };
    if (!is_local(name, I.carrier, u).is_pass()) return vacuous(CheckReport::passed(name).fact("H1", "false"));
    for (const auto& a : *all_nats(u.target(), I.carrier)) {
      auto ua = restrict_along_open(I, u, NatTrans(u.target(), I.carrier, a));
      if (!is_local(name, A, ua.map).is_pass())
        return vacuous(CheckReport::passed(name).fact("H1", "true").fact("H2", "false"));
    }
    for (int c = 0; c < C.object_count(); ++c) {
      auto v = product_map(identity_nat(yoneda(C, c)), u);
      for (const auto& a : *all_nats(v.target(), I.carrier)) {
        auto va = restrict_along_open(I, v, NatTrans(v.target(), I.carrier, a));
        if (orthogonality_failure(A, va.map))
          return vacuous(
              CheckReport::passed(name).fact("H1", "true").fact("H2", "true").fact("H2_internal", "false"));
      }
    }
    auto concl = is_local(name, T.lift(A)->object, u);
    concl.fact("H1", "true").fact("H2", "true").fact("H2_internal", "true");
    if (concl.is_fail()) return concl.fact("C", "false");
    return concl.fact("C", "true").fact("verdict", "confirmed");
  });
}

// ---------------------------------------------------------------------------
// The extension f ↦ f̃ along σ_X.

struct TildeExtension {
  NatTrans map;  // L(X) → C
  CheckReport report;
};

/// f̃(j, x) is the synthetic colimit of p ↦ f(x⊥(p)) over IsT(j)⊥. The
/// report checks f̃ ∘ σ_X = f.
inline TildeExtension tilde_extension(const IntervalTopos& T, const Presheaf& X, const Presheaf& target,
                                      const NatTrans& f) {
  const std::string name = "tilde_extension";
  const auto& I = T.interval();
  const auto& C = I.base();
  const auto& S = *T.scone(X);
  const auto& L = *T.lift(X);
  if (!(f.source() == S.object) || !(f.target() == target))
    throw StructuralError("tilde_extension: f must be a map X_bot -> C");
  const auto into_pos = detail::into_positions(C);
  const auto& IX = S.cylinder_product;
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(L.object.total()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int e = 0; e < L.object.size(c); ++e) {
      const int j = L.support_of(c, e);
      const auto& fam = L.family_of(c, e);
      const auto& F = T.slice(c, j);
      std::vector<int> h(static_cast<std::size_t>(F.horn.total()));
      for (std::size_t q = 0; q < h.size(); ++q) {
        const int d = F.horn_stage[q], g = F.horn_morphism[q];
        if (I.carrier.act(g, j) == I.top(d)) {
          const int x = fam[into_pos[g]];
          h[q] = f(d, S.cylinder(d, IX.pair(d, F.horn_lower[q], x)));
        } else {
          h[q] = f(d, S.bottom(d, 0));
        }
      }
      flat.push_back(synthetic_colimit(F, target, h));
    }
  NatTrans ft(L.object, target, std::move(flat));
  if (auto v = validate_nat(ft); v.is_fail()) throw InternalError("tilde_extension: the extension is not natural");
  auto back = compose(ft, *T.sigma(X));
  CheckReport r = CheckReport::passed(name);
  for (int c = 0; c < C.object_count() && r.is_pass(); ++c)
    for (int p = 0; p < S.object.size(c); ++p)
      if (back(c, p) != f(c, p)) {
        r = CheckReport::failed(name, Witness{"retraction-fails", c, C.object_name(c), {p, back(c, p), f(c, p)},
                                              "tilde(f) o sigma differs from f"});
        break;
      }
  return TildeExtension{std::move(ft), std::move(r)};
}

inline constexpr std::size_t kMaxExtensionMaps = 20000;

/// Both extension laws for every map: f̃ ∘ σ = f for all f: X⊥ → C, and
/// (g ∘ σ)~ = g for all g: L(X) → C. Skips unless C is based Segal complete.
inline CheckReport check_extension_laws(const IntervalTopos& T, const std::string& x_name, const Presheaf& X,
                                        const std::string& c_name, const Presheaf& target) {
  const std::string name = "extension(" + x_name + ";" + c_name + ")";
  return guarded(name, [&] {
    if (!T.axioms().holds("axiom.consistent")) return CheckReport::skipped(name, "interval is not consistent");
    auto bs = is_based_segal(T, c_name, target);
    if (!bs.is_pass()) return CheckReport::skipped(name, c_name + " is not based Segal complete");
    const auto& S = *T.scone(X);
    const auto& L = *T.lift(X);
    const auto& sigma = *T.sigma(X);
    auto fs = all_nats(S.object, target);
    auto gs = all_nats(L.object, target);
    if (fs->size() + gs->size() > kMaxExtensionMaps)
      throw BudgetExceeded("extension laws: " + std::to_string(fs->size() + gs->size()) + " maps to check");
    for (std::size_t k = 0; k < fs->size(); ++k) {
      NatTrans f(S.object, target, (*fs)[k]);
      auto t = tilde_extension(T, X, target, f);
      if (t.report.is_fail()) {
        t.report.name = name;
        t.report.witness->detail += " (map " + std::to_string(k) + ")";
        return t.report;
      }
    }
    for (std::size_t k = 0; k < gs->size(); ++k) {
      NatTrans g(L.object, target, (*gs)[k]);
      auto t = tilde_extension(T, X, target, compose(g, sigma));
      if (!(t.map == g))
        return CheckReport::failed(name, Witness{"section-fails", -1, "", {static_cast<int>(k)},
                                                 "the extension of g o sigma differs from g"});
    }
    return CheckReport::passed(name)
        .fact("retraction_maps", std::to_string(fs->size()))
        .fact("section_maps", std::to_string(gs->size()));
  });
}

// ---------------------------------------------------------------------------
// Theorem suite.

struct Theorem {
  std::string id;     // two digits
  std::string title;
  std::vector<std::string> axioms;  // interval hypotheses, by report name
  bool per_object = true;
};

inline const std::vector<Theorem>& theorems() {
  static const std::vector<Theorem> list{
      {"01", "interval_based_segal",
       {"axiom.consistent", "axiom.distributive_lattice", "axiom.phoa.1", "axiom.phoa.2", "axiom.phoa.3",
        "axiom.internal_sums", "axiom.factors_meets"},
       false},
      {"02", "interval_segal", {"axiom.phoa.1", "axiom.phoa.2"}, false},
      {"03", "interval_rezk", {"axiom.phoa.1", "axiom.phoa.2"}, false},
      {"04", "rezk_iff_rezk_well_complete", {"axiom.phoa.1", "axiom.phoa.2"}},
      {"05", "segal_iff_segal_well_complete",
       {"axiom.distributive_lattice", "axiom.disjunction", "axiom.phoa.1", "axiom.phoa.2", "axiom.phoa.3"}},
      {"06", "based_segal_iff_based_segal_well_complete",
       {"axiom.consistent", "axiom.distributive_lattice", "axiom.disjunction", "axiom.phoa.1", "axiom.phoa.2",
        "axiom.phoa.3", "axiom.internal_sums", "axiom.factors_meets"}},
      {"07", "lift_preserves_infinity_categories",
       {"axiom.distributive_lattice", "axiom.disjunction", "axiom.phoa.1", "axiom.phoa.2", "axiom.phoa.3"}},
      {"08", "sierpinski_implies_based_segal", {"axiom.conservative"}},
      {"09", "based_segal_set_is_sierpinski", {"axiom.consistent"}},
      {"10", "lift_closure",
       {"axiom.consistent", "axiom.distributive_lattice", "axiom.disjunction", "axiom.phoa.1", "axiom.phoa.2",
        "axiom.phoa.3", "axiom.internal_sums", "axiom.factors_meets"}},
  };
  return list;
}

namespace detail {

/// The verdict of hypothesis ⇒ conclusion. Object hypotheses are checked in
/// order; a hypothesis that could not be decided for budget reasons skips
/// the theorem, any other undecided hypothesis makes it vacuous.
inline CheckReport implication(const std::string& name, const AxiomProfile& ax, const Theorem& th,
                               const std::vector<std::function<CheckReport()>>& object_hyps,
                               const std::function<CheckReport()>& conclusion) {
  for (const auto& a : th.axioms) {
    if (!ax.holds(a)) {
      auto r = CheckReport::passed(name);
      return r.fact("hypothesis", "false").fact("failed_hypothesis", a).fact("verdict", "vacuous");
    }
  }
  std::vector<std::string> checked;
  for (const auto& h : object_hyps) {
    auto r = h();
    if (skipped_for_budget(r)) return CheckReport::skipped(name, r.name + ": " + r.reason);
    if (!r.is_pass()) {
      auto v = CheckReport::passed(name);
      return v.fact("hypothesis", "false").fact("failed_hypothesis", r.name).fact("verdict", "vacuous");
    }
    checked.push_back(r.name);
  }
  auto c = conclusion();
  if (c.status == Status::skip) return CheckReport::skipped(name, c.name + ": " + c.reason);
  CheckReport out = c.is_pass() ? CheckReport::passed(name) : CheckReport::failed(name, *c.witness);
  out.fact("hypothesis", "true");
  for (const auto& h : checked) out.fact("object_hypothesis", h);
  out.fact("conclusion", c.name).fact("verdict", c.is_pass() ? "confirmed" : "violated");
  return out;
}

/// P ⇔ Q as a single report; the witness comes from the failing side.
inline CheckReport equivalence(const CheckReport& p, const CheckReport& q) {
  const std::string name = p.name + "<=>" + q.name;
  if (p.status == Status::skip) return CheckReport::skipped(name, p.name + ": " + p.reason);
  if (q.status == Status::skip) return CheckReport::skipped(name, q.name + ": " + q.reason);
  if (p.is_pass() == q.is_pass()) return CheckReport::passed(name);
  auto w = p.is_fail() ? *p.witness : *q.witness;
  w.detail = (p.is_fail() ? p.name : q.name) + " fails while " + (p.is_fail() ? q.name : p.name) + " holds: " +
             w.detail;
  return CheckReport::failed(name, w);
}

inline CheckReport both(const CheckReport& p, const CheckReport& q) {
  const std::string name = p.name + "&" + q.name;
  for (const auto* r : {&p, &q}) {
    if (r->is_fail()) {
      auto f = CheckReport::failed(name, *r->witness);
      f.witness->detail = r->name + ": " + f.witness->detail;
      return f;
    }
  }
  for (const auto* r : {&p, &q})
    if (r->status == Status::skip) return CheckReport::skipped(name, r->name + ": " + r->reason);
  return CheckReport::passed(name);
}

}  // namespace detail

/// One report per (theorem, object): interval theorems once for I, the rest
/// for every object of the sample.
inline CheckReport run_theorem(const IntervalTopos& T, const Theorem& th, const std::string& xname, const Presheaf& X,
                               const std::vector<NamedObject>& sample) {
  const std::string name = "theorem." + th.id + "." + th.title + "(" + xname + ")";
  return timed([&] {
    return guarded(name, [&] {
      const auto& ax = T.axioms();
      auto prop = [&](const std::string& p) { return [&, p] { return check_property(T, p, xname, X, sample); }; };
      auto pr = [&](const std::string& p) { return check_property(T, p, xname, X, sample); };
      using Hyps = std::vector<std::function<CheckReport()>>;
      const int k = std::stoi(th.id);
      switch (k) {
      case 1: return detail::implication(name, ax, th, {}, prop("based_segal"));
      case 2: return detail::implication(name, ax, th, {}, prop("segal"));
      case 3: return detail::implication(name, ax, th, {}, prop("rezk"));
      case 4:
      case 5:
      case 6: {
        const std::string kind = k == 4 ? "rezk" : k == 5 ? "segal" : "based_segal";
        return detail::implication(name, ax, th, {},
                                   [&] { return detail::equivalence(pr(kind), pr(kind + "_well_complete")); });
      }
      case 7:
        return detail::implication(name, ax, th, Hyps{prop("infinity_category")},
                                   prop("infinity_category_well_complete"));
      case 8: return detail::implication(name, ax, th, Hyps{prop("sierpinski")}, prop("based_segal"));
      case 9: return detail::implication(name, ax, th, Hyps{prop("based_segal")}, prop("sierpinski"));
      case 10:
        return detail::implication(name, ax, th, Hyps{prop("based_segal")}, [&] {
          return detail::both(pr("based_segal_well_complete"), pr("sierpinski_well_complete"));
        });
      default: throw InternalError("unknown theorem " + th.id);
      }
    });
  });
}

inline std::vector<CheckReport> sort_reports(std::vector<CheckReport> rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return rs;
}

/// Runs independent jobs on `jobs` threads; results keep the job order.
inline std::vector<CheckReport> run_parallel(const std::vector<std::function<CheckReport()>>& work, int jobs) {
  std::vector<CheckReport> out(work.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      try {
        out[i] = work[i]();
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// Every tracked implication on the interval and each sample object, sorted
/// by report name.
inline std::vector<CheckReport> theorem_suite(const IntervalTopos& T, const std::vector<NamedObject>& sample,
                                              int jobs = 1) {
  T.axioms();
  std::vector<std::function<CheckReport()>> work;
  for (const auto& th : theorems()) {
    if (!th.per_object) {
      work.push_back([&T, &th, &sample] { return run_theorem(T, th, "I", T.interval().carrier, sample); });
      continue;
    }
    for (const auto& [n, X] : sample)
      work.push_back([&T, &th, &sample, &n, &X] { return run_theorem(T, th, n, X, sample); });
  }
  return sort_reports(run_parallel(work, jobs));
}

}  // namespace phoa

#endif  // PHOA_LOCALITY_HPP

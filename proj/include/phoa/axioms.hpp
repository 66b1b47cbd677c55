// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_AXIOMS_HPP
#define PHOA_AXIOMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "phoa/constructions.hpp"
#include "phoa/core.hpp"
#include "phoa/interval.hpp"
#include "phoa/shapes.hpp"
#include "phoa/topos.hpp"

namespace phoa {

enum class RestrictionMode { iso, mono };

/// Checks that X^u: X^T → X^S is an isomorphism (or only a mono) stagewise.
/// Witnesses are indices into the exponential stages X^T(c) and X^S(c).
inline CheckReport restriction_report(std::string name, const Presheaf& X, const NatTrans& u,
                                      RestrictionMode mode = RestrictionMode::iso) {
  require_same_base(X, u.source(), name.c_str());
  const auto& C = X.base();
  auto XT = exponential_stages(X, u.target());
  auto XS = exponential_stages(X, u.source());
  std::string lt, ls;
  std::optional<Witness> bad;
  for (int c = 0; c < C.object_count(); ++c) {
    if (c) {
      lt += ",";
      ls += ",";
    }
    lt += std::to_string(XT.size(c));
    ls += std::to_string(XS.size(c));
    if (bad) continue;
    auto r = restriction_component(XT, XS, u, c);
    std::vector<int> seen(static_cast<std::size_t>(XS.size(c)), -1);
    for (int k = 0; k < XT.size(c) && !bad; ++k) {
      if (seen[r[k]] >= 0) {
        bad = Witness{"not-injective", c, C.object_name(c), {seen[r[k]], k},
                      "two maps out of the codomain restrict to the same map"};
      }
      seen[r[k]] = k;
    }
    if (!bad && mode == RestrictionMode::iso)
      for (int s = 0; s < XS.size(c); ++s)
        if (seen[s] < 0) {
          bad = Witness{"not-surjective", c, C.object_name(c), {s}, "a map out of the domain has no extension"};
          break;
        }
  }
  auto r = bad ? CheckReport::failed(std::move(name), *bad) : CheckReport::passed(std::move(name));
  r.fact("codomain_levels", lt).fact("domain_levels", ls);
  return r;
}

// ---------------------------------------------------------------------------
// Internal sums.

inline constexpr std::size_t kMaxSumCandidates = 1'000'000;

inline constexpr std::size_t kMaxSumsKept = 4096;

struct InternalSums {
  CheckReport report;
  std::optional<NatTrans> sum;  // L(I) → I; after check_factors_meets, one that factors meets if any does
  std::vector<NatTrans> all;    // the first kMaxSumsKept solutions
  std::size_t solutions = 0;
  std::size_t candidates = 0;
};

/// Maps τ: L(I) → I whose pullback of 1 is exactly the point (1, λ_.1).
inline InternalSums find_internal_sums(const Interval& I, const Lifted& LI) {
  const std::string name = "axiom.internal_sums";
  const auto& L = LI.object;
  const auto& C = I.base();
  std::vector<int> marked(C.object_count());
  for (int c = 0; c < C.object_count(); ++c) marked[c] = LI.unit(c, I.top(c));
  NatSearchOptions opt;
  opt.fixed.assign(static_cast<std::size_t>(L.total()), -1);
  for (int c = 0; c < C.object_count(); ++c) opt.fixed[L.offset(c) + marked[c]] = I.top(c);
  InternalSums out;
  bool too_many = false;
  search_nats(L, I.carrier, opt, [&](const std::vector<int>& a) {
    if (++out.candidates > kMaxSumCandidates) {
      too_many = true;
      return false;
    }
    for (int c = 0; c < C.object_count(); ++c)
      for (int e = 0; e < L.size(c); ++e)
        if ((a[L.offset(c) + e] == I.top(c)) != (e == marked[c])) return true;
    if (out.solutions++ < kMaxSumsKept) out.all.emplace_back(L, I.carrier, a);
    return true;
  });
  if (too_many) {
    out.report = CheckReport::skipped(name, "more than " + std::to_string(kMaxSumCandidates) + " candidate maps");
    out.all.clear();
    out.solutions = 0;
    return out;
  }
  if (out.solutions == 0) {
    out.report = CheckReport::failed(name, Witness{"no-sum", -1, "", {}, "no map L(I) -> I classifies the marked point"});
  } else {
    out.report = CheckReport::passed(name);
    out.sum = out.all.front();
  }
  out.report.fact("candidates", std::to_string(out.candidates)).fact("solutions", std::to_string(out.solutions));
  return out;
}

namespace detail {

inline std::optional<Witness> factors_meets_failure(const Interval& I, const Lifted& LI, const NatTrans& sum) {
  const auto& C = I.base();
  for (int c = 0; c < C.object_count(); ++c) {
    auto in = C.into(c);
    for (int i = 0; i < I.size(c); ++i)
      for (int j = 0; j < I.size(c); ++j) {
        std::vector<int> fam(in.size(), -1);
        for (int k = 0; k < static_cast<int>(in.size()); ++k)
          if (I.carrier.act(in[k], i) == I.top(C.source(in[k]))) fam[k] = I.carrier.act(in[k], j);
        const int got = sum(c, LI.index_of(c, i, fam));
        if (got != I.meet_at(c, i, j))
          return Witness{"sum-not-meet", c, C.object_name(c), {i, j, got}, "sum of (i, const j) differs from i meet j"};
      }
  }
  return std::nullopt;
}

}  // namespace detail

/// Σ ∘ ⟨i, λ_. j⟩ = i ⊓ j for a given sum structure.
inline CheckReport check_factors_meets(const Interval& I, const Lifted& LI, const std::optional<NatTrans>& sum) {
  const std::string name = "axiom.factors_meets";
  if (!sum) return CheckReport::skipped(name, "no internal sum structure");
  if (auto w = detail::factors_meets_failure(I, LI, *sum)) return CheckReport::failed(name, *w);
  return CheckReport::passed(name);
}

/// Passes when some internal sum structure factors meets; that one becomes
/// sums.sum. The witness is the failure of the first structure.
inline CheckReport check_factors_meets(const Interval& I, const Lifted& LI, InternalSums& sums) {
  const std::string name = "axiom.factors_meets";
  if (sums.all.empty()) return CheckReport::skipped(name, "no internal sum structure");
  std::optional<Witness> first;
  for (std::size_t k = 0; k < sums.all.size(); ++k) {
    auto w = detail::factors_meets_failure(I, LI, sums.all[k]);
    if (!w) {
      sums.sum = sums.all[k];
      return CheckReport::passed(name).fact("structure", std::to_string(k));
    }
    if (!first) first = w;
  }
  return CheckReport::failed(name, *first).fact("structures_tried", std::to_string(sums.all.size()));
}

// ---------------------------------------------------------------------------
// Phoa principle.

/// The boundary map I^{Δⁿ} → I^{n+1}, α ↦ (α(v_n), …, α(v_0)), is an
/// embedding with image Δ^{n+1}.
inline CheckReport check_phoa(const Interval& I, int n) {
  const std::string name = "axiom.phoa." + std::to_string(n);
  if (n < 1 || n + 1 > kMaxSimplexDimension)
    return CheckReport::skipped(name, "dimension outside 1.." + std::to_string(kMaxSimplexDimension - 1));
  const auto& C = I.base();
  auto S = simplex(I, n);
  auto target = simplex(I, n + 1);
  std::vector<NatTrans> corners;
  for (int k = n; k >= 0; --k) corners.push_back(simplex_vertex(I, S, k));
  auto E = exponential_stages(I.carrier, S.object());
  std::string levels;
  std::optional<Witness> bad;
  for (int c = 0; c < C.object_count() && !bad; ++c) {
    const int id_pos = C.hom_position(C.identity(c));
    auto table_at_id = [&](int k) {
      std::vector<int> t;
      for (int x = 0; x < S.object().size(c); ++x) t.push_back(E.element(c, k)[E.probe_index(c, c, id_pos, x)]);
      return t;
    };
    std::vector<int> hit(static_cast<std::size_t>(target.cube.object.size(c)), -1);
    for (int k = 0; k < E.size(c) && !bad; ++k) {
      std::vector<int> t;
      for (const auto& v : corners) t.push_back(E.element(c, k)[E.probe_index(c, c, id_pos, v(c, 0))]);
      const int code = target.cube.encode(c, t);
      if (!target.sub.contains(c, code)) {
        std::vector<int> elems{k};
        elems.insert(elems.end(), t.begin(), t.end());
        bad = Witness{"non-monotone", c, C.object_name(c), elems, "table at identity: " + join_ints(table_at_id(k))};
      } else if (hit[code] >= 0) {
        bad = Witness{"boundary-not-injective", c, C.object_name(c), {hit[code], k},
                      "two maps share the boundary " + join_ints(t)};
      } else {
        hit[code] = k;
      }
    }
    if (!bad)
      for (int x = 0; x < target.object().size(c); ++x)
        if (hit[target.sub.inclusion(c, x)] < 0) {
          bad = Witness{"not-interpolated", c, C.object_name(c), target.tuple(c, x),
                        "descending tuple with no map through it"};
          break;
        }
  }
  for (int c = 0; c < C.object_count(); ++c) levels += (c ? "," : "") + std::to_string(E.size(c));
  auto r = bad ? CheckReport::failed(name, *bad) : CheckReport::passed(name);
  r.fact("exponential_levels", levels);
  return r;
}

/// α(i) = α(0) ⊔ (i ⊓ α(1)) for every α: I → I, at every stage.
inline CheckReport check_phoa_interpolation(const Interval& I) {
  const std::string name = "axiom.phoa_interpolation";
  if (!I.has_join()) return CheckReport::skipped(name, "no join supplied");
  const auto& C = I.base();
  auto E = exponential_stages(I.carrier, I.carrier);
  for (int c = 0; c < C.object_count(); ++c)
    for (int k = 0; k < E.size(c); ++k) {
      const auto& a = E.element(c, k);
      for (int d = 0; d < C.object_count(); ++d) {
        const int nh = static_cast<int>(C.hom(d, c).size());
        for (int hp = 0; hp < nh; ++hp) {
          const int at0 = a[E.probe_index(c, d, hp, I.bottom(d))];
          const int at1 = a[E.probe_index(c, d, hp, I.top(d))];
          for (int i = 0; i < I.size(d); ++i) {
            const int want = I.join_at(d, at0, I.meet_at(d, i, at1));
            if (a[E.probe_index(c, d, hp, i)] != want)
              return CheckReport::failed(name, Witness{"not-interpolated", c, C.object_name(c), {k, d, hp, i},
                                                       "alpha(i) differs from alpha(0) join (i meet alpha(1))"});
          }
        }
      }
    }
  return CheckReport::passed(name);
}

/// Over ∫I: the endpoint pair {0, j} ↪ I/j is an epimorphism for I, i.e.
/// I^{I/j} → I^{{0,j}} is a mono.
inline CheckReport check_relative_phoa(const Interval& I, const Simplex& tri, const Horn& h, const Elements& el,
                                       const CheckReport& phoa_1) {
  const std::string name = "axiom.relative_phoa";
  if (!phoa_1.is_pass()) return CheckReport::skipped(name, "Phoa principle in dimension 1 does not hold");
  if (!I.has_join()) return CheckReport::skipped(name, "no join supplied");
  auto d = display(I, tri, h);
  auto ends = make_subobject(tri.object(), [&](int c, int x) {
    auto t = tri.tuple(c, x);
    return t[1] == I.bottom(c) || t[1] == t[0];
  });
  auto on_ends = compose(d.triangle, ends.inclusion);
  auto u = to_elements_map(ends.inclusion, on_ends, d.triangle);
  auto r = restriction_report(name, weaken(I.carrier, el), u, RestrictionMode::mono);
  return r;
}

}  // namespace phoa

#endif  // PHOA_AXIOMS_HPP

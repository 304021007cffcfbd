#include <algorithm>
#include <deque>

#include "voak/models.hpp"

namespace voak {

CmResult cm_subspace(const TruncatedVOA& v, const TruncatedModule& w, long m) {
  if (m < 1) throw std::invalid_argument("cm_subspace: m >= 1");
  Subspace span(w.space);
  for (int elem = 0; elem < v.elem_count(); ++elem) {
    if (!(v.elem_weight(elem) > Rational(0))) continue;
    for (const auto& [key, d] : w.space->levels) {
      for (int i = 0; i < d; ++i) {
        GVec u = GVec::unit(w.space, key, i);
        auto r = act(v, w, elem, -m, u);
        if (!r.ok || r.value.is_zero()) continue;
        span.insert_homogeneous(r.value);
      }
    }
  }
  CmResult out{std::move(span), 0, {}};
  for (const auto& [key, d] : w.space->levels) {
    int q = d - out.span.rank_at(key);
    out.quotient_dim_by_level[key] = q;
    out.quotient_dim += q;
  }
  return out;
}

Subspace b2_complement(const TruncatedVOA& v, const Subspace& c2span,
                       std::vector<GVec>* basis_out) {
  Subspace b(v.space);
  for (const auto& [key, d] : v.space->levels) {
    RowSpan acc(d);
    auto it = c2span.per_level.find(key);
    if (it != c2span.per_level.end())
      for (const auto& row : it->second.rows()) acc.insert(row);
    for (int i = 0; i < d; ++i) {
      std::vector<Rational> e = dense_zero(d);
      e[i] = Rational(1);
      if (acc.insert(e)) {
        GVec u = GVec::unit(v.space, key, i);
        b.insert_homogeneous(u);
        if (basis_out) basis_out->push_back(u);
      }
    }
  }
  return b;
}

namespace {

// submodule generated by a vector, at truncation (in-window closure)
Subspace spin_submodule(const TruncatedVOA& v, const TruncatedModule& w, const GVec& gen) {
  Subspace s(w.space);
  std::deque<GVec> queue;
  if (!gen.is_zero()) {
    s.insert_homogeneous(gen);
    queue.push_back(gen);
  }
  long span = 0;
  if (!w.space->levels.empty())
    span = ((w.space->weight_of(w.space->levels.rbegin()->first) -
             w.space->weight_of(w.space->levels.begin()->first)))
               .to_long();
  while (!queue.empty()) {
    GVec x = queue.front();
    queue.pop_front();
    for (int elem = 0; elem < v.elem_count(); ++elem) {
      long wt = v.elem_weight(elem).to_long();
      for (long n = wt - 1 - span; n <= wt - 1 + span; ++n) {
        auto r = act(v, w, elem, n, x);
        if (!r.ok || r.value.is_zero()) continue;
        // grow level spans; enqueue only if something grew
        bool grew = false;
        for (const auto& [k, p] : r.value.parts) {
          auto it = s.per_level.find(k);
          if (it == s.per_level.end())
            it = s.per_level.emplace(k, RowSpan(w.space->dim(k))).first;
          if (it->second.insert(p)) grew = true;
        }
        if (grew) queue.push_back(r.value);
      }
    }
  }
  return s;
}

struct SpanDfs {
  const TruncatedVOA& v;
  const TruncatedModule& w;
  const std::vector<GVec>& b2;
  Rational bound;
  Subspace* target;           // spanned so far
  const Subspace* submodule;  // goal
  int depth_cap;

  bool goal_reached() const {
    for (const auto& [k, rs] : submodule->per_level) {
      if (w.space->weight_of(k) > bound) continue;
      if (target->rank_at(k) < rs.rank()) return false;
    }
    return true;
  }

  void run(const GVec& x, long last_n, int depth) {
    if (depth >= depth_cap || goal_reached()) return;
    for (std::size_t bi = 0; bi < b2.size(); ++bi) {
      // weights of b2 vectors are homogeneous by construction
      Rational wt_b = v.space->weight_of(b2[bi].parts.begin()->first);
      // smallest level weight of x
      Rational wt_x = w.space->weight_of(x.parts.begin()->first);
      long hi = std::min(last_n - 1, (wt_b + wt_x - Rational(1)).to_long());
      long lo = (wt_b + wt_x - Rational(1) - bound).to_long();
      for (long n = hi; n >= lo; --n) {
        auto r = act_elem(v, w, b2[bi], n, x);
        if (!r.ok || r.value.is_zero()) continue;
        bool keep = false;
        for (const auto& [k, p] : r.value.parts) {
          if (w.space->weight_of(k) > bound) continue;
          auto it = target->per_level.find(k);
          if (it == target->per_level.end())
            it = target->per_level.emplace(k, RowSpan(w.space->dim(k))).first;
          if (it->second.insert(p)) keep = true;
        }
        run(r.value, n, depth + 1);
        if (goal_reached()) return;
        (void)keep;
      }
    }
  }
};

}  // namespace

SpanningCheckReport c2_spanning_check(const TruncatedVOA& v, const TruncatedModule& w,
                                      const GVec& generator,
                                      const std::vector<GVec>& b2_basis,
                                      const Rational& level_bound) {
  SpanningCheckReport rep{true, {}};
  if (generator.is_zero()) return rep;  // zero submodule, vacuous
  if (generator.parts.size() != 1)
    throw std::invalid_argument("c2_spanning_check: generator must be homogeneous");

  Subspace sub = spin_submodule(v, w, generator);
  Subspace spanned(w.space);
  spanned.insert_homogeneous(generator);

  SpanDfs dfs{v, w, b2_basis, level_bound, &spanned, &sub, 24};
  // first applied mode unconstrained from above except by lower truncation
  Rational wt_g = w.space->weight_of(generator.parts.begin()->first);
  long first_hi = 0;
  {
    Rational top(0);
    for (const auto& b : b2_basis) {
      Rational wb = v.space->weight_of(b.parts.begin()->first);
      if (wb > top) top = wb;
    }
    first_hi = (top + wt_g).to_long() + 1;
  }
  dfs.run(generator, first_hi + 1, 0);

  for (const auto& [k, d] : w.space->levels) {
    Rational wt = w.space->weight_of(k);
    if (wt > level_bound) continue;
    int sd = sub.rank_at(k);
    int td = spanned.rank_at(k);
    bool ok = td >= sd;
    if (!ok) rep.passed = false;
    rep.levels.push_back({wt, sd, td, ok});
  }
  return rep;
}

}  // namespace voak

#include "voak/module.hpp"

#include <algorithm>
#include <stdexcept>

namespace voak {

const GradedMap* TruncatedModule::mode(int elem, long n) const {
  auto it = action.find({elem, n});
  return it == action.end() ? nullptr : &it->second;
}

long TruncatedVOA::elem_level(int id) const {
  for (long k : flat.keys) {
    int off = flat.offset.at(k);
    int d = space->dim(k);
    if (id >= off && id < off + d) return k;
  }
  throw std::out_of_range("TruncatedVOA::elem_level");
}

int TruncatedVOA::elem_index_in_level(int id) const {
  long k = elem_level(id);
  return id - flat.offset.at(k);
}

std::string TruncatedVOA::elem_label(int id) const {
  long k = elem_level(id);
  return space->label(k, elem_index_in_level(id));
}

GVec TruncatedVOA::elem_vec(int id) const {
  long k = elem_level(id);
  return GVec::unit(space, k, elem_index_in_level(id));
}

Windowed<GVec> act(const TruncatedVOA& v, const TruncatedModule& m, int elem, long n,
                   const GVec& u) {
  const GradedMap* g = m.mode(elem, n);
  if (g) return g->apply(u);
  // no table entry: zero inside the window, unknown beyond it
  Rational deg = v.elem_weight(elem) - Rational(n) - Rational(1);
  Windowed<GVec> out{GVec::zero(m.space), true};
  for (const auto& [k, p] : u.parts) {
    if (is_zero_vec(p)) continue;
    if (m.space->weight_of(k) + deg > m.space->cutoff) out.ok = false;
  }
  return out;
}

Windowed<GVec> act_elem(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x,
                        long n, const GVec& u) {
  Windowed<GVec> out{GVec::zero(m.space), true};
  for (const auto& [k, p] : x.parts) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      if (p[i].is_zero()) continue;
      int elem = v.elem_id(k, i);
      auto r = act(v, m, elem, n, u);
      if (!r.ok) out.ok = false;
      out.value.add(r.value, p[i]);
    }
  }
  return out;
}

Windowed<GVec> act_L(const TruncatedVOA& v, const TruncatedModule& m, long k, const GVec& u) {
  return act_elem(v, m, v.omega, k + 1, u);
}

GradedMap elem_mode_map(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x,
                        long n) {
  GradedMap acc = GradedMap::zero(m.space, m.space, Rational(0));
  bool first = true;
  for (const auto& [k, p] : x.parts) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      if (p[i].is_zero()) continue;
      int elem = v.elem_id(k, i);
      Rational deg = v.elem_weight(elem) - Rational(n) - Rational(1);
      const GradedMap* g = m.mode(elem, n);
      GradedMap gm = g ? g->scaled(p[i]) : GradedMap::zero(m.space, m.space, deg);
      if (first) {
        acc = std::move(gm);
        first = false;
      } else {
        acc = acc.plus(gm);
      }
    }
  }
  return acc;
}

Windowed<GVec> voa_product(const TruncatedVOA& v, int elem, long n, const GVec& w) {
  return act_elem(v, v.adjoint, v.elem_vec(elem), n, w);
}

std::vector<std::pair<Rational, int>> graded_dimension(const GradedSpace& s) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& [k, d] : s.levels)
    if (s.weight_of(k) <= s.cutoff) out.emplace_back(s.weight_of(k), d);
  return out;
}

SpacePtr restrict_space(const GradedSpace& s, const Rational& cutoff) {
  auto t = std::make_shared<GradedSpace>();
  t->cutoff = cutoff;
  t->denom = s.denom;
  for (const auto& [k, d] : s.levels) {
    if (s.weight_of(k) > cutoff) continue;
    t->levels[k] = d;
    auto lit = s.labels.find(k);
    if (lit != s.labels.end()) t->labels[k] = lit->second;
    auto nit = s.l0_nil.find(k);
    if (nit != s.l0_nil.end()) t->l0_nil[k] = nit->second;
  }
  return t;
}

TruncatedModule restrict_module(const TruncatedModule& m, SpacePtr target) {
  TruncatedModule out;
  out.name = m.name;
  out.space = target;
  for (const auto& [key, g] : m.action) {
    GradedMap h = GradedMap::zero(target, target, g.degree);
    bool any = false;
    for (const auto& [k, b] : g.blocks) {
      if (!target->levels.count(k)) continue;
      auto tk = h.target_key(k);
      if (!tk || !target->levels.count(*tk)) continue;
      if (m.space->weight_of(k) + g.degree > target->cutoff) continue;
      h.blocks[k] = b;
      any = true;
    }
    for (long k : g.oow) {
      if (!target->levels.count(k)) continue;
      if (target->weight_of(k) + g.degree > target->cutoff) continue;
      throw std::logic_error("restrict_module: unresolved block inside the window");
    }
    h.mark_boundary();
    if (any || !h.oow.empty()) out.action[key] = std::move(h);
  }
  return out;
}

TruncatedModule restricted_dual(const TruncatedVOA& v, const TruncatedModule& m,
                                SpacePtr* dual_space_out) {
  // the adjoint formula needs a Virasoro action on m; reject tables without one
  bool any_omega = false;
  for (const auto& [k, p] : v.omega.parts)
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
      if (!p[i].is_zero()) {
        int elem = v.elem_id(k, i);
        for (const auto& [key, g] : m.action)
          if (key.first == elem) { any_omega = true; break; }
      }
  if (!any_omega && m.space->total_dim() > 0)
    throw std::invalid_argument("restricted_dual: module lacks a Virasoro action");

  auto dual = std::make_shared<GradedSpace>();
  dual->cutoff = m.space->cutoff;
  dual->denom = m.space->denom;
  dual->levels = m.space->levels;
  for (const auto& [k, d] : m.space->levels) {
    std::vector<std::string> ls;
    for (int i = 0; i < d; ++i) ls.push_back(m.space->label(k, i) + "'");
    dual->labels[k] = ls;
  }
  for (const auto& [k, n] : m.space->l0_nil) dual->l0_nil[k] = n.transpose();

  TruncatedModule out;
  out.name = m.name + "'";
  out.space = dual;

  long span = 0;  // max integer level-weight spread of m
  if (!m.space->levels.empty()) {
    Rational lo_w = m.space->weight_of(m.space->levels.begin()->first);
    Rational hi_w = m.space->weight_of(m.space->levels.rbegin()->first);
    Rational diff = hi_w - lo_w;
    span = diff.is_integer() ? diff.to_long()
                             : (diff * Rational(m.space->denom)).to_long();
  }

  // v'_m = sum_j (-1)^{wt v} / j! * transpose of (L(1)^j v)_{2 wt v - j - m - 2}
  for (int elem = 0; elem < v.elem_count(); ++elem) {
    Rational wt = v.elem_weight(elem);
    if (!wt.is_integer()) throw std::invalid_argument("restricted_dual: non-integer VOA weight");
    long k = wt.to_long();
    Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);

    // L(1)^j v, computed in V
    std::vector<GVec> l1pow{v.elem_vec(elem)};
    while (true) {
      auto r = act_L(v, v.adjoint, 1, l1pow.back());
      if (!r.ok) throw std::logic_error("restricted_dual: L(1) power left the window");
      if (r.value.is_zero()) break;
      l1pow.push_back(r.value);
    }

    for (long mm = k - 1 - span; mm <= k - 1 + span; ++mm) {
      GradedMap acc = GradedMap::zero(dual, dual, Rational(k) - Rational(mm) - Rational(1));
      bool any = false;
      for (std::size_t j = 0; j < l1pow.size(); ++j) {
        long nmode = 2 * k - static_cast<long>(j) - mm - 2;
        GradedMap g = elem_mode_map(v, m, l1pow[j], nmode);
        if (g.blocks.empty()) continue;
        // transpose: blocks of g map M_a -> M_b; dual blocks map M'_b -> M'_a
        for (const auto& [src, b] : g.blocks) {
          auto tk = g.target_key(src);
          if (!tk) continue;
          Rational coeff = sign / factorial(static_cast<long>(j));
          SparseMatrix tb = b.transpose().scaled(coeff);
          if (tb.is_zero()) continue;
          // accumulate into acc at source level *tk
          auto it = acc.blocks.find(*tk);
          if (it == acc.blocks.end())
            acc.blocks[*tk] = tb;
          else
            it->second = it->second.plus(tb);
          any = true;
        }
      }
      for (auto it = acc.blocks.begin(); it != acc.blocks.end();) {
        if (it->second.is_zero())
          it = acc.blocks.erase(it);
        else
          ++it;
      }
      if (any && !acc.blocks.empty()) out.action[{elem, mm}] = std::move(acc);
    }
  }
  if (dual_space_out) *dual_space_out = dual;
  return out;
}

void Subspace::insert_homogeneous(const GVec& v) {
  for (const auto& [k, p] : v.parts) {
    if (is_zero_vec(p)) continue;
    auto it = per_level.find(k);
    if (it == per_level.end())
      it = per_level.emplace(k, RowSpan(ambient->dim(k))).first;
    it->second.insert(p);
  }
}

bool Subspace::contains(const GVec& v) const {
  for (const auto& [k, p] : v.parts) {
    if (is_zero_vec(p)) continue;
    auto it = per_level.find(k);
    if (it == per_level.end()) return false;
    if (!it->second.contains(p)) return false;
  }
  return true;
}

int Subspace::rank_at(long key) const {
  auto it = per_level.find(key);
  return it == per_level.end() ? 0 : it->second.rank();
}

long Subspace::total_rank() const {
  long t = 0;
  for (const auto& [k, s] : per_level) t += s.rank();
  return t;
}

long Subspace::codim() const {
  long t = 0;
  for (const auto& [k, d] : ambient->levels) {
    if (ambient->weight_of(k) > ambient->cutoff) continue;
    t += d - rank_at(k);
  }
  return t;
}

}  // namespace voak

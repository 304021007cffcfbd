#include "voak/zhu.hpp"

#include <algorithm>

#include "voak/models.hpp"

namespace voak {

Windowed<GVec> zhu_circle(const TruncatedVOA& v, int velem, const GVec& u, long n) {
  Windowed<GVec> out{GVec::zero(v.space), true};
  long wt = v.elem_weight(velem).to_long();
  for (long i = 0; i <= wt + n; ++i) {
    Rational c = binomial(wt + n, i);
    if (c.is_zero()) continue;
    auto t = voa_product(v, velem, i - 2 * n - 2, u);
    if (!t.ok) { out.ok = false; continue; }
    out.value.add(t.value, c);
  }
  return out;
}

namespace {

Windowed<GVec> star_once(const TruncatedVOA& v, int velem, const GVec& u, long n) {
  // v * u = sum_{m=0}^{n} (-1)^m binom(m+n, n)
  //         sum_i binom(wt v + n, i) v_{i-n-m-1} u
  Windowed<GVec> out{GVec::zero(v.space), true};
  long wt = v.elem_weight(velem).to_long();
  for (long m = 0; m <= n; ++m) {
    Rational cm = binomial(m + n, n);
    if (m % 2 == 1) cm = -cm;
    for (long i = 0; i <= wt + n; ++i) {
      Rational c = cm * binomial(wt + n, i);
      if (c.is_zero()) continue;
      auto t = voa_product(v, velem, i - n - m - 1, u);
      if (!t.ok) { out.ok = false; continue; }
      out.value.add(t.value, c);
    }
  }
  return out;
}

}  // namespace

Windowed<GVec> zhu_star(const TruncatedVOA& v, const GVec& x, const GVec& u, long n) {
  Windowed<GVec> out{GVec::zero(v.space), true};
  for (const auto& [k, p] : x.parts)
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      if (p[i].is_zero()) continue;
      auto r = star_once(v, v.elem_id(k, i), u, n);
      if (!r.ok) out.ok = false;
      out.value.add(r.value, p[i]);
    }
  return out;
}

FlatSpan o_n_span(const TruncatedVOA& v, long n, const OnSpanOptions& opt) {
  FlatSpan s(v.space);
  for (int ve = 0; ve < v.elem_count(); ++ve) {
    Rational wv = v.elem_weight(ve);
    if (opt.positive_only && !(wv > Rational(0))) continue;
    for (const auto& [ukey, ud] : v.space->levels) {
      // top component weight of the circle element
      if (wv + v.space->weight_of(ukey) + Rational(2 * n + 1) > v.space->cutoff) continue;
      for (int ui = 0; ui < ud; ++ui) {
        auto r = zhu_circle(v, ve, GVec::unit(v.space, ukey, ui), n);
        if (!r.ok || r.value.is_zero()) continue;
        s.insert(r.value);
      }
    }
  }
  if (opt.include_l_family) {
    for (int ve = 0; ve < v.elem_count(); ++ve) {
      GVec x = v.elem_vec(ve);
      auto l = act_L(v, v.adjoint, -1, x);
      if (!l.ok) continue;
      GVec e = l.value;
      e.add(x, v.elem_weight(ve));  // (L(-1) + L(0)) v
      if (!e.is_zero()) s.insert(e);
    }
  }
  return s;
}

FlatSpan o_tilde_span(const TruncatedVOA& v, const TruncatedModule& w, long n) {
  FlatSpan s(w.space);
  for (int ve = 0; ve < v.elem_count(); ++ve) {
    long wt = v.elem_weight(ve).to_long();
    for (const auto& [ukey, ud] : w.space->levels) {
      if (v.elem_weight(ve) + w.space->weight_of(ukey) + Rational(2 * n + 1) >
          w.space->cutoff)
        continue;
      for (int ui = 0; ui < ud; ++ui) {
        GVec u = GVec::unit(w.space, ukey, ui);
        Windowed<GVec> acc{GVec::zero(w.space), true};
        for (long i = 0; i <= wt + n; ++i) {
          Rational c = binomial(wt + n, i);
          if (c.is_zero()) continue;
          auto t = act(v, w, ve, i - 2 * n - 2, u);
          if (!t.ok) { acc.ok = false; continue; }
          acc.value.add(t.value, c);
        }
        if (acc.ok && !acc.value.is_zero()) s.insert(acc.value);
      }
    }
  }
  return s;
}

std::vector<Rational> ZhuQuotient::reduce(const GVec& x) const {
  std::vector<Rational> flatv = x.flatten(span.flat.keys);
  span.span.reduce(flatv);
  std::vector<Rational> out;
  out.reserve(rep_flat_indices.size());
  for (int idx : rep_flat_indices) out.push_back(flatv[idx]);
  return out;
}

ZhuQuotient zhu_algebra(const VOAPtr& v, long n, const OnSpanOptions& opt) {
  ZhuQuotient q{v, n, o_n_span(*v, n, opt), {}, {}, {}, {}, true, false};
  auto freec = q.span.span.free_cols();
  q.rep_flat_indices = freec;
  // turn flat indices back into homogeneous unit vectors
  for (int idx : freec) {
    int off = 0;
    for (long key : q.span.flat.keys) {
      int d = v->space->dim(key);
      if (idx < off + d) {
        q.reps.push_back(GVec::unit(v->space, key, idx - off));
        break;
      }
      off += d;
    }
  }
  q.identity_coords = q.reduce(v->elem_vec(v->vacuum_elem));
  // star table
  long d = q.dim();
  q.star_table.assign(d, std::vector<std::vector<Rational>>(d));
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      auto r = zhu_star(*v, q.reps[i], q.reps[j], n);
      if (!r.ok) {
        q.table_complete = false;
        continue;
      }
      q.star_table[i][j] = q.reduce(r.value);
    }
  // associativity on all triples via the table
  q.associative = true;
  if (q.table_complete && d > 0) {
    auto mul = [&](const std::vector<Rational>& a,
                   const std::vector<Rational>& b) -> std::vector<Rational> {
      std::vector<Rational> out(d);
      for (long i = 0; i < d; ++i) {
        if (a[i].is_zero()) continue;
        for (long j = 0; j < d; ++j) {
          if (b[j].is_zero()) continue;
          const auto& cell = q.star_table[i][j];
          for (long k = 0; k < d; ++k) out[k] += a[i] * b[j] * cell[k];
        }
      }
      return out;
    };
    for (long i = 0; i < d && q.associative; ++i)
      for (long j = 0; j < d && q.associative; ++j)
        for (long k = 0; k < d && q.associative; ++k) {
          std::vector<Rational> ei(d), ej(d), ek(d);
          ei[i] = Rational(1);
          ej[j] = Rational(1);
          ek[k] = Rational(1);
          auto ab_c = mul(mul(ei, ej), ek);
          auto a_bc = mul(ei, mul(ej, ek));
          if (ab_c != a_bc) q.associative = false;
        }
  } else if (!q.table_complete) {
    q.associative = false;
  }
  return q;
}

StabilizationResult zhu_dim_stabilization(const std::function<VOAPtr(long)>& builder,
                                          long L, long n, const OnSpanOptions& opt) {
  StabilizationResult out;
  for (long c = std::max<long>(0, L - 2); c <= L; ++c) {
    auto v = builder(c);
    out.dims.push_back(o_n_span(*v, n, opt).codim());
  }
  out.stable = out.dims.size() == 3 && out.dims[0] == out.dims[1] &&
               out.dims[1] == out.dims[2];
  return out;
}

GradedMap o_operator(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x,
                     long n) {
  GradedMap acc = GradedMap::zero(m.space, m.space, Rational(0));
  Rational minw = m.space->levels.empty()
                      ? Rational(0)
                      : m.space->weight_of(m.space->levels.begin()->first);
  for (const auto& [k, p] : x.parts)
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      if (p[i].is_zero()) continue;
      int elem = v.elem_id(k, i);
      long wt = v.elem_weight(elem).to_long();
      const GradedMap* g = m.mode(elem, wt - 1);
      if (!g) continue;
      acc = acc.plus(g->scaled(p[i]));
    }
  // restrict to the first n+1 levels
  GradedMap out = GradedMap::zero(m.space, m.space, Rational(0));
  for (const auto& [k, b] : acc.blocks)
    if (m.space->weight_of(k) <= minw + Rational(n)) out.blocks[k] = b;
  for (long k : acc.oow)
    if (m.space->weight_of(k) <= minw + Rational(n)) out.oow.insert(k);
  return out;
}

BOtildeReport b_plus_otilde_check(const TruncatedVOA& v, const TruncatedModule& w, long N,
                                  const std::vector<GVec>& b_basis,
                                  const Rational& level_bound) {
  BOtildeReport rep;
  // precondition: B + C_{2N+2}(W) covers the checked levels
  CmResult cm = cm_subspace(v, w, 2 * N + 2);
  {
    Subspace bc(w.space);
    for (const auto& [k, rs] : cm.span.per_level)
      for (const auto& row : rs.rows()) {
        GVec g{w.space, {}};
        g.parts[k] = row;
        g.prune();
        if (!g.is_zero()) bc.insert_homogeneous(g);
      }
    for (const auto& b : b_basis) bc.insert_homogeneous(b);
    for (const auto& [k, d] : w.space->levels) {
      if (w.space->weight_of(k) > level_bound) continue;
      if (bc.rank_at(k) < d) rep.precondition_ok = false;
    }
  }

  FlatSpan cover(w.space);
  for (const auto& b : b_basis) cover.insert(b);
  FlatSpan ot = o_tilde_span(v, w, N);
  for (const auto& row : ot.span.rows()) {
    GVec g{w.space, {}};
    int off = 0;
    for (long key : ot.flat.keys) {
      int d = w.space->dim(key);
      std::vector<Rational> part(row.begin() + off, row.begin() + off + d);
      if (!is_zero_vec(part)) g.parts[key] = part;
      off += d;
    }
    cover.insert(g);
  }

  for (const auto& [k, d] : w.space->levels) {
    Rational wt = w.space->weight_of(k);
    if (wt > level_bound) continue;
    int covered = 0;
    for (int i = 0; i < d; ++i)
      if (cover.contains(GVec::unit(w.space, k, i))) ++covered;
    bool ok = covered == d;
    if (!ok) rep.passed = false;
    rep.levels.push_back({wt, d, covered, ok});
  }
  if (!rep.precondition_ok) rep.passed = false;
  return rep;
}

std::vector<long> omega_ideal_reduction(const ZhuQuotient& q,
                                        const std::vector<Rational>& keep, long s_max) {
  std::vector<long> dims;
  long d = q.dim();
  if (d == 0 || !q.table_complete) return dims;
  auto mul = [&](const std::vector<Rational>& a,
                 const std::vector<Rational>& b) -> std::vector<Rational> {
    std::vector<Rational> out(d);
    for (long i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (long j = 0; j < d; ++j) {
        if (b[j].is_zero()) continue;
        const auto& cell = q.star_table[i][j];
        for (long k = 0; k < d; ++k) out[k] += a[i] * b[j] * cell[k];
      }
    }
    return out;
  };
  std::vector<Rational> omega_cls = q.reduce(q.voa->omega);
  std::vector<Rational> unit = q.identity_coords;

  for (long s = 1; s <= s_max; ++s) {
    std::vector<Rational> gen = unit;
    for (const Rational& c : keep) {
      std::vector<Rational> x = omega_cls;
      for (long i = 0; i < d; ++i) x[i] -= c * unit[i];
      for (long e = 0; e < s; ++e) gen = mul(gen, x);
    }
    RowSpan ideal(static_cast<int>(d));
    std::vector<std::vector<Rational>> gens{gen};
    std::size_t head = 0;
    while (head < gens.size()) {
      auto g = gens[head++];
      if (!ideal.insert(g)) continue;
      for (long i = 0; i < d; ++i) {
        std::vector<Rational> ei(d);
        ei[i] = Rational(1);
        gens.push_back(mul(ei, g));
        gens.push_back(mul(g, ei));
      }
    }
    dims.push_back(d - ideal.rank());
  }
  return dims;
}

}  // namespace voak

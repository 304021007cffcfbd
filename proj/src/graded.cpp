#include "voak/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace voak {

std::optional<long> GradedSpace::key_of(const Rational& w) const {
  Rational k = w * Rational(denom);
  if (!k.is_integer()) return std::nullopt;
  return k.to_long();
}

int GradedSpace::dim(long key) const {
  auto it = levels.find(key);
  return it == levels.end() ? 0 : it->second;
}

long GradedSpace::total_dim() const {
  long t = 0;
  for (const auto& [k, d] : levels) t += d;
  return t;
}

bool GradedSpace::has_jordan_levels() const {
  for (const auto& [k, n] : l0_nil)
    if (!n.is_zero()) return true;
  return false;
}

std::string GradedSpace::label(long key, int i) const {
  auto it = labels.find(key);
  if (it != labels.end() && i < static_cast<int>(it->second.size())) return it->second[i];
  return "w" + weight_of(key).str() + "#" + std::to_string(i);
}

GVec GVec::unit(SpacePtr s, long key, int i) {
  GVec v{s, {}};
  int d = s->dim(key);
  if (i < 0 || i >= d) throw std::out_of_range("GVec::unit");
  v.parts[key] = dense_zero(d);
  v.parts[key][i] = Rational(1);
  return v;
}

bool GVec::is_zero() const {
  for (const auto& [k, p] : parts)
    if (!is_zero_vec(p)) return false;
  return true;
}

void GVec::add(const GVec& o, const Rational& scale) {
  if (o.space != space) throw std::invalid_argument("GVec::add: space mismatch");
  for (const auto& [k, p] : o.parts) {
    auto it = parts.find(k);
    if (it == parts.end()) {
      auto q = p;
      for (auto& x : q) x *= scale;
      parts[k] = std::move(q);
    } else {
      axpy(it->second, scale, p);
    }
  }
  prune();
}

void GVec::scale(const Rational& c) {
  if (c.is_zero()) {
    parts.clear();
    return;
  }
  for (auto& [k, p] : parts)
    for (auto& x : p) x *= c;
}

void GVec::prune() {
  for (auto it = parts.begin(); it != parts.end();) {
    if (is_zero_vec(it->second))
      it = parts.erase(it);
    else
      ++it;
  }
}

std::vector<Rational> GVec::flatten(const std::vector<long>& keys) const {
  std::vector<Rational> out;
  for (long k : keys) {
    int d = space->dim(k);
    auto it = parts.find(k);
    if (it == parts.end()) {
      for (int i = 0; i < d; ++i) out.push_back(Rational(0));
    } else {
      for (int i = 0; i < d; ++i) out.push_back(it->second[i]);
    }
  }
  return out;
}

GradedMap GradedMap::zero(SpacePtr src, SpacePtr dst, const Rational& degree, bool exact) {
  GradedMap g{std::move(src), std::move(dst), degree, {}, {}};
  g.exact = exact;
  return g;
}

GradedMap GradedMap::identity(SpacePtr s) {
  GradedMap m{s, s, Rational(0), {}, {}};
  m.exact = true;
  for (const auto& [k, d] : s->levels) m.blocks[k] = SparseMatrix::identity(d);
  return m;
}

std::optional<long> GradedMap::target_key(long src_key) const {
  return dst->key_of(src->weight_of(src_key) + degree);
}

bool GradedMap::in_window(long src_key) const {
  return src->weight_of(src_key) + degree <= dst->cutoff;
}

const SparseMatrix* GradedMap::block(long src_key) const {
  auto it = blocks.find(src_key);
  return it == blocks.end() ? nullptr : &it->second;
}

void GradedMap::set_block(long src_key, SparseMatrix b) {
  oow.erase(src_key);
  if (b.is_zero())
    blocks.erase(src_key);
  else
    blocks[src_key] = std::move(b);
}

void GradedMap::mark_boundary() {
  if (exact) return;
  for (const auto& [k, d] : src->levels)
    if (!in_window(k)) mark_oow(k);
}

Windowed<GVec> GradedMap::apply(const GVec& v) const {
  if (v.space != src) throw std::invalid_argument("GradedMap::apply: space mismatch");
  Windowed<GVec> out{GVec::zero(dst), true};
  for (const auto& [k, p] : v.parts) {
    if (is_zero_vec(p)) continue;
    if (!in_window(k)) {
      out.ok = false;
      continue;
    }
    if (oow.count(k)) {
      out.ok = false;
      continue;
    }
    auto it = blocks.find(k);
    if (it == blocks.end()) continue;
    auto tk = target_key(k);
    if (!tk) continue;
    auto y = it->second.apply(p);
    if (is_zero_vec(y)) continue;
    auto jt = out.value.parts.find(*tk);
    if (jt == out.value.parts.end())
      out.value.parts[*tk] = std::move(y);
    else
      axpy(jt->second, Rational(1), y);
  }
  out.value.prune();
  return out;
}

bool GradedMap::is_zero_in_window() const {
  for (long k : oow)
    if (in_window(k)) return false;
  for (const auto& [k, b] : blocks)
    if (!b.is_zero()) return false;
  return true;
}

GradedMap GradedMap::composed_after(const GradedMap& first) const {
  if (first.dst != src)
    throw std::invalid_argument("GradedMap::composed_after: space mismatch");
  if (is_exactly_zero() || first.is_exactly_zero())
    return zero(first.src, dst, first.degree + degree, true);
  GradedMap out{first.src, dst, first.degree + degree, {}, {}};
  out.exact = exact && first.exact;
  for (long k : first.oow) out.oow.insert(k);
  for (const auto& [k, b] : first.blocks) {
    if (b.is_zero()) continue;
    auto mid = first.target_key(k);
    if (!mid) continue;  // target weight not representable: level is zero
    if (!in_window(*mid) || oow.count(*mid)) {
      out.mark_oow(k);
      continue;
    }
    const SparseMatrix* g = block(*mid);
    if (!g) continue;
    SparseMatrix prod = g->mul(b);
    if (!prod.is_zero()) out.blocks[k] = std::move(prod);
  }
  return out;
}

GradedMap GradedMap::plus(const GradedMap& o, const Rational& scale) const {
  if (o.src != src || o.dst != dst || !(o.degree == degree))
    throw std::invalid_argument("GradedMap::plus: mismatch");
  if (o.is_exactly_zero() || scale.is_zero()) return *this;
  if (is_exactly_zero()) return o.scaled(scale);
  GradedMap out{src, dst, degree, blocks, oow};
  out.exact = exact && o.exact;
  for (long k : o.oow) out.oow.insert(k);
  for (long k : out.oow) out.blocks.erase(k);
  for (const auto& [k, b] : o.blocks) {
    if (out.oow.count(k)) continue;
    auto it = out.blocks.find(k);
    if (it == out.blocks.end()) {
      auto s = b.scaled(scale);
      if (!s.is_zero()) out.blocks[k] = std::move(s);
    } else {
      it->second = it->second.plus(b, scale);
      if (it->second.is_zero()) out.blocks.erase(it);
    }
  }
  return out;
}

GradedMap GradedMap::scaled(const Rational& c) const {
  if (c.is_zero()) return zero(src, dst, degree, true);
  GradedMap out{src, dst, degree, {}, oow};
  out.exact = exact;
  for (const auto& [k, b] : blocks) out.blocks[k] = b.scaled(c);
  return out;
}

GradedMap GradedMap::transposed_dual() const {
  // blocks reinterpreted as maps between dual levels; caller fixes spaces
  GradedMap out{dst, src, -degree, {}, {}};
  for (const auto& [k, b] : blocks) {
    auto tk = target_key(k);
    if (tk) out.blocks[*tk] = b.transpose();
  }
  return out;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  if (a.src != b.src || a.dst != b.dst || !(a.degree == b.degree)) return false;
  if (a.oow != b.oow) return false;
  // compare ignoring explicitly-zero blocks
  auto nonzero = [](const std::map<long, SparseMatrix>& m) {
    std::map<long, const SparseMatrix*> out;
    for (const auto& [k, v] : m)
      if (!v.is_zero()) out[k] = &v;
    return out;
  };
  auto na = nonzero(a.blocks), nb = nonzero(b.blocks);
  if (na.size() != nb.size()) return false;
  for (const auto& [k, pa] : na) {
    auto it = nb.find(k);
    if (it == nb.end() || !(*pa == *it->second)) return false;
  }
  return true;
}

FlatIndex::FlatIndex(const GradedSpace& s, std::optional<Rational> up_to,
                     bool descending) {
  for (const auto& [k, d] : s.levels) {
    if (up_to && s.weight_of(k) > *up_to) continue;
    keys.push_back(k);
  }
  if (descending) std::reverse(keys.begin(), keys.end());
  for (long k : keys) {
    offset[k] = total;
    total += s.levels.at(k);
  }
}

int FlatIndex::index(long key, int i) const {
  auto it = offset.find(key);
  if (it == offset.end()) throw std::out_of_range("FlatIndex::index");
  return it->second + i;
}

L0SplitResult l0_split(const std::map<long, SparseMatrix>& op, const GradedSpace& s) {
  L0SplitResult out;
  for (const auto& [k, d] : s.levels) {
    Rational wt = s.weight_of(k);
    out.semisimple[k] = wt;
    SparseMatrix n(d, d);
    auto it = op.find(k);
    if (it != op.end()) {
      if (it->second.rows() != d || it->second.cols() != d)
        throw std::invalid_argument("l0_split: block shape mismatch");
      n = it->second.plus(SparseMatrix::identity(d), -wt);
    } else {
      n = n.plus(SparseMatrix::identity(d), -wt);
    }
    // nilpotency check: N^dim = 0
    SparseMatrix p = n;
    for (int e = 1; e < d && !p.is_zero(); ++e) p = p.mul(n);
    if (d > 0 && !p.is_zero())
      throw NotGeneralizedEigen("level " + s.weight_of(k).str() +
                                ": operator is not wt*id + nilpotent");
    out.nilpotent[k] = n;
  }
  return out;
}

}  // namespace voak

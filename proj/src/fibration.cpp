#include "lmt/fibration.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace lmt {

bool is_opcartesian(const FinFunctor& p, int F) {
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  int a = Y.dom(F), b = Y.cod(F);
  for (int G = 0; G < Y.num_morphisms(); ++G) {
    if (Y.dom(G) != a) continue;
    int c = Y.cod(G);
    for (int h = 0; h < X.num_morphisms(); ++h) {
      if (X.dom(h) != p.omap[b] || X.cod(h) != p.omap[c]) continue;
      if (X.compose(p.mmap[F], h) != p.mmap[G]) continue;
      int count = 0;
      for (int H : Y.hom(b, c))
        if (p.mmap[H] == h && Y.compose(F, H) == G) ++count;
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_weakly_opcartesian(const FinFunctor& p, int F) {
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  int a = Y.dom(F), b = Y.cod(F);
  int idb = X.id(p.omap[b]);
  for (int G = 0; G < Y.num_morphisms(); ++G) {
    if (Y.dom(G) != a || p.omap[Y.cod(G)] != p.omap[b]) continue;
    if (p.mmap[G] != p.mmap[F]) continue;
    int count = 0;
    for (int H : Y.hom(b, Y.cod(G)))
      if (p.mmap[H] == idb && Y.compose(F, H) == G) ++count;
    if (count != 1) return false;
  }
  return true;
}

bool is_cartesian(const FinFunctor& p, int F) { return is_opcartesian(opposite_functor(p), F); }

namespace {
LiftWitness opfibration_check(const FinFunctor& p, bool weak) {
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  for (int a = 0; a < Y.num_objects(); ++a)
    for (int f = 0; f < X.num_morphisms(); ++f) {
      if (X.dom(f) != p.omap[a]) continue;
      bool found = false;
      for (int F = 0; F < Y.num_morphisms() && !found; ++F) {
        if (Y.dom(F) != a || p.mmap[F] != f) continue;
        if (weak ? is_weakly_opcartesian(p, F) : is_opcartesian(p, F)) found = true;
      }
      if (!found) return {false, a, f};
    }
  return {};
}
}  // namespace

LiftWitness is_opfibration(const FinFunctor& p) { return opfibration_check(p, false); }
LiftWitness is_preopfibration(const FinFunctor& p) { return opfibration_check(p, true); }
LiftWitness is_fibration(const FinFunctor& p) { return is_opfibration(opposite_functor(p)); }
LiftWitness is_prefibration(const FinFunctor& p) { return is_preopfibration(opposite_functor(p)); }

bool cleavage_is_split(const FinFunctor& p, const Cleavage& c) {
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  for (int a = 0; a < Y.num_objects(); ++a) {
    if (c.lift[a][X.id(p.omap[a])] != Y.id(a)) return false;
    for (int f = 0; f < X.num_morphisms(); ++f) {
      if (X.dom(f) != p.omap[a]) continue;
      int F = c.lift[a][f];
      for (int g = 0; g < X.num_morphisms(); ++g) {
        if (X.dom(g) != X.cod(f)) continue;
        int G = c.lift[Y.cod(F)][g];
        if (c.lift[a][X.compose(f, g)] != Y.compose(F, G)) return false;
      }
    }
  }
  return true;
}

CleavageSearch choose_cleavage(const FinFunctor& p, bool split_required) {
  CleavageSearch out;
  if (!is_opfibration(p).ok) return out;
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  // candidate opcartesian lifts per opliftable pair, in index order
  std::vector<std::vector<std::vector<int>>> cands(Y.num_objects());
  for (int a = 0; a < Y.num_objects(); ++a) {
    cands[a].resize(X.num_morphisms());
    for (int f = 0; f < X.num_morphisms(); ++f) {
      if (X.dom(f) != p.omap[a]) continue;
      for (int F = 0; F < Y.num_morphisms(); ++F)
        if (Y.dom(F) == a && p.mmap[F] == f && is_opcartesian(p, F)) cands[a][f].push_back(F);
    }
  }
  Cleavage c;
  c.lift.assign(Y.num_objects(), std::vector<int>(X.num_morphisms(), -1));
  for (int a = 0; a < Y.num_objects(); ++a)
    for (int f = 0; f < X.num_morphisms(); ++f)
      if (!cands[a][f].empty()) c.lift[a][f] = cands[a][f][0];
  if (!split_required) {
    out.cleavage = std::move(c);
    return out;
  }
  // prefer identity lifts on identities, then search over candidate
  // combinations for a functorial choice
  for (int a = 0; a < Y.num_objects(); ++a) {
    int idf = X.id(p.omap[a]);
    auto& cs = cands[a][idf];
    if (std::find(cs.begin(), cs.end(), Y.id(a)) != cs.end()) c.lift[a][idf] = Y.id(a);
  }
  if (cleavage_is_split(p, c)) {
    c.split = true;
    out.cleavage = std::move(c);
    return out;
  }
  // exhaustive backtracking over the (tiny) candidate sets
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < Y.num_objects(); ++a)
    for (int f = 0; f < X.num_morphisms(); ++f)
      if (!cands[a][f].empty()) slots.emplace_back(a, f);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == slots.size()) return cleavage_is_split(p, c);
    auto [a, f] = slots[i];
    for (int F : cands[a][f]) {
      c.lift[a][f] = F;
      if (rec(i + 1)) return true;
    }
    c.lift[a][f] = cands[a][f][0];
    return false;
  };
  if (rec(0)) {
    c.split = true;
    out.cleavage = std::move(c);
    return out;
  }
  // report the first composable pair violating functoriality of the greedy pick
  for (int a = 0; a < Y.num_objects(); ++a)
    for (int f = 0; f < X.num_morphisms(); ++f) {
      if (c.lift[a][f] < 0) continue;
      for (int g = 0; g < X.num_morphisms(); ++g) {
        if (X.dom(g) != X.cod(f)) continue;
        int F = c.lift[a][f];
        if (c.lift[a][X.compose(f, g)] != Y.compose(F, c.lift[Y.cod(F)][g])) {
          out.bad_f = f;
          out.bad_g = g;
          return out;
        }
      }
    }
  return out;
}

FibreExtract extract_fibre(const FinFunctor& p, int x) {
  FibreExtract out;
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  auto c = std::make_shared<FinCategory>();
  c->name = Y.name + "_" + X.objects[x];
  out.obj_back.assign(Y.num_objects(), -1);
  out.mor_back.assign(Y.num_morphisms(), -1);
  for (int a = 0; a < Y.num_objects(); ++a)
    if (p.omap[a] == x) {
      out.obj_back[a] = static_cast<int>(out.obj_orig.size());
      out.obj_orig.push_back(a);
      c->objects.push_back(Y.objects[a]);
    }
  int idx = X.id(x);
  for (int f = 0; f < Y.num_morphisms(); ++f)
    if (p.mmap[f] == idx) {
      out.mor_back[f] = static_cast<int>(out.mor_orig.size());
      out.mor_orig.push_back(f);
      c->morphisms.push_back(
          {Y.morphisms[f].name, out.obj_back[Y.dom(f)], out.obj_back[Y.cod(f)]});
    }
  c->identity.resize(c->objects.size());
  for (size_t i = 0; i < out.obj_orig.size(); ++i) c->identity[i] = out.mor_back[Y.id(out.obj_orig[i])];
  const int M = static_cast<int>(out.mor_orig.size());
  c->comp.assign(M, std::vector<int>(M, -1));
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g) {
      if (c->cod(f) != c->dom(g)) continue;
      c->comp[f][g] = out.mor_back[Y.compose(out.mor_orig[f], out.mor_orig[g])];
    }
  out.cat = c;
  return out;
}

FinFunctor reindexing_functor(const FinFunctor& p, const Cleavage& c, int f,
                              const FibreExtract& from, const FibreExtract& to) {
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  FinFunctor r;
  r.src = from.cat;
  r.dst = to.cat;
  r.omap.resize(from.cat->num_objects());
  r.mmap.resize(from.cat->num_morphisms());
  for (int i = 0; i < from.cat->num_objects(); ++i) {
    int a = from.obj_orig[i];
    r.omap[i] = to.obj_back[Y.cod(c.lift[a][f])];
  }
  int idy = X.id(X.cod(f));
  for (int i = 0; i < from.cat->num_morphisms(); ++i) {
    int G = from.mor_orig[i];
    int a = Y.dom(G), a2 = Y.cod(G);
    int Fa = c.lift[a][f], Fa2 = c.lift[a2][f];
    int target = Y.compose(G, Fa2);
    // unique H above id_y with lift_a(f);H = G;lift_{a'}(f)
    int found = -1;
    for (int H : Y.hom(Y.cod(Fa), Y.cod(Fa2)))
      if (p.mmap[H] == idy && Y.compose(Fa, H) == target) {
        found = H;
        break;
      }
    if (found < 0) throw std::logic_error("reindexing_functor: universal property failed");
    r.mmap[i] = to.mor_back[found];
  }
  return r;
}

Report validate_opindexed(const StrictOpIndexedCat& I) {
  Report r;
  auto fail = [&](const std::string& s) { r.violations.push_back(s); };
  const auto& X = *I.base;
  if (static_cast<int>(I.fibre.size()) != X.num_objects() ||
      static_cast<int>(I.reindex.size()) != X.num_morphisms()) {
    fail("opindexed size mismatch");
    return r;
  }
  for (int f = 0; f < X.num_morphisms(); ++f) {
    if (I.reindex[f].src.get() != I.fibre[X.dom(f)].get() ||
        I.reindex[f].dst.get() != I.fibre[X.cod(f)].get())
      fail("reindexing typing mismatch at " + X.morphisms[f].name);
    Report fr = validate_functor(I.reindex[f]);
    for (auto& v : fr.violations) fail("reindex(" + X.morphisms[f].name + "): " + v);
  }
  if (!r.ok()) return r;
  for (int x = 0; x < X.num_objects(); ++x)
    if (!functors_equal(I.reindex[X.id(x)], identity_functor(I.fibre[x])))
      fail("reindex(id) not the identity functor at " + X.objects[x]);
  for (int f = 0; f < X.num_morphisms(); ++f)
    for (int g = 0; g < X.num_morphisms(); ++g) {
      if (X.cod(f) != X.dom(g)) continue;
      if (!functors_equal(I.reindex[X.compose(f, g)],
                          compose_functors(I.reindex[f], I.reindex[g])))
        fail("reindexing not strictly functorial on (" + X.morphisms[f].name + "," +
             X.morphisms[g].name + ")");
    }
  return r;
}

StrictOpIndexedCat to_opindexed(const FinFunctor& p, const Cleavage& c) {
  if (!c.split) throw std::invalid_argument("to_opindexed: cleavage must be split");
  const auto& X = *p.dst;
  StrictOpIndexedCat I;
  I.base = p.dst;
  std::vector<FibreExtract> fx;
  for (int x = 0; x < X.num_objects(); ++x) {
    fx.push_back(extract_fibre(p, x));
    I.fibre.push_back(fx.back().cat);
  }
  for (int f = 0; f < X.num_morphisms(); ++f)
    I.reindex.push_back(reindexing_functor(p, c, f, fx[X.dom(f)], fx[X.cod(f)]));
  Report r = validate_opindexed(I);
  if (!r.ok()) throw std::logic_error("to_opindexed: invariants fail:\n" + r.str());
  return I;
}

Grothendieck grothendieck(const StrictOpIndexedCat& I) {
  Grothendieck out;
  const auto& X = *I.base;
  auto c = std::make_shared<FinCategory>();
  c->name = "Gr(" + X.name + ")";
  for (int x = 0; x < X.num_objects(); ++x)
    for (int a = 0; a < I.fibre[x]->num_objects(); ++a) {
      out.obj_pair.emplace_back(x, a);
      c->objects.push_back("(" + X.objects[x] + "," + I.fibre[x]->objects[a] + ")");
    }
  auto oidx = [&](int x, int a) {
    for (size_t i = 0; i < out.obj_pair.size(); ++i)
      if (out.obj_pair[i] == std::make_pair(x, a)) return static_cast<int>(i);
    return -1;
  };
  // morphisms (f, F) : (x,a) -> (y,b) with F : I(f)(a) -> b in fibre(y)
  for (int f = 0; f < X.num_morphisms(); ++f) {
    int x = X.dom(f), y = X.cod(f);
    for (int a = 0; a < I.fibre[x]->num_objects(); ++a) {
      int fa = I.reindex[f].omap[a];
      for (int F = 0; F < I.fibre[y]->num_morphisms(); ++F) {
        if (I.fibre[y]->dom(F) != fa) continue;
        out.mor_pair.emplace_back(f, F);
        Morphism m;
        m.name = "(" + X.morphisms[f].name + "," + I.fibre[y]->morphisms[F].name + ")";
        m.dom = oidx(x, a);
        m.cod = oidx(y, I.fibre[y]->cod(F));
        c->morphisms.push_back(m);
      }
    }
  }
  auto midx = [&](int f, int F, int domobj) {
    for (size_t i = 0; i < out.mor_pair.size(); ++i)
      if (out.mor_pair[i] == std::make_pair(f, F) &&
          c->morphisms[i].dom == domobj)
        return static_cast<int>(i);
    return -1;
  };
  c->identity.resize(c->objects.size());
  for (size_t i = 0; i < out.obj_pair.size(); ++i) {
    auto [x, a] = out.obj_pair[i];
    c->identity[i] = midx(X.id(x), I.fibre[x]->id(a), static_cast<int>(i));
  }
  const int M = static_cast<int>(out.mor_pair.size());
  c->comp.assign(M, std::vector<int>(M, -1));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      if (c->morphisms[i].cod != c->morphisms[j].dom) continue;
      auto [f, F] = out.mor_pair[i];
      auto [g, G] = out.mor_pair[j];
      int fg = X.compose(f, g);
      int z = X.cod(g);
      int comp = I.fibre[z]->compose(I.reindex[g].mmap[F], G);
      c->comp[i][j] = midx(fg, comp, c->morphisms[i].dom);
    }
  out.total = c;
  Report r = validate_category(*c);
  if (!r.ok()) throw std::logic_error("grothendieck: total category invalid:\n" + r.str());
  out.proj.src = c;
  out.proj.dst = I.base;
  out.proj.omap.resize(c->num_objects());
  out.proj.mmap.resize(c->num_morphisms());
  for (size_t i = 0; i < out.obj_pair.size(); ++i) out.proj.omap[i] = out.obj_pair[i].first;
  for (size_t i = 0; i < out.mor_pair.size(); ++i) out.proj.mmap[i] = out.mor_pair[i].first;
  return out;
}

bool roundtrip_equivalence_check(const FinFunctor& p, const Cleavage& c) {
  const auto& Y = *p.src;
  StrictOpIndexedCat I = to_opindexed(p, c);
  Grothendieck gr = grothendieck(I);
  std::vector<FibreExtract> fx;
  for (int x = 0; x < p.dst->num_objects(); ++x) fx.push_back(extract_fibre(p, x));
  // iso on objects: (x, a) |-> original object of a
  FinFunctor iso;
  iso.src = gr.total;
  iso.dst = p.src;
  iso.omap.resize(gr.total->num_objects());
  iso.mmap.resize(gr.total->num_morphisms());
  for (int i = 0; i < gr.total->num_objects(); ++i) {
    auto [x, a] = gr.obj_pair[i];
    iso.omap[i] = fx[x].obj_orig[a];
  }
  // (f, F) |-> lift(f at dom) ; F~
  for (int i = 0; i < gr.total->num_morphisms(); ++i) {
    auto [f, F] = gr.mor_pair[i];
    int dompair = gr.total->dom(i);
    auto [x, a] = gr.obj_pair[dompair];
    int y = p.dst->cod(f);
    iso.mmap[i] = Y.compose(c.lift[fx[x].obj_orig[a]][f], fx[y].mor_orig[F]);
  }
  if (!validate_functor(iso).ok()) return false;
  // bijective on objects and morphisms
  {
    std::vector<int> seen(Y.num_objects(), 0);
    for (int v : iso.omap) seen[v]++;
    for (int s : seen)
      if (s != 1) return false;
  }
  {
    std::vector<int> seen(Y.num_morphisms(), 0);
    for (int v : iso.mmap) seen[v]++;
    for (int s : seen)
      if (s != 1) return false;
  }
  // commutes with the projections
  FinFunctor lhs = compose_functors(iso, p);
  return lhs.omap == gr.proj.omap && lhs.mmap == gr.proj.mmap;
}

bool check_morphism_of_opfibrations(const OpfibMorphism& m, const FinFunctor& p,
                                    const FinFunctor& q) {
  if (!validate_functor(m.H).ok() || !validate_functor(m.K).ok()) return false;
  if (m.H.src.get() != p.src.get() || m.K.src.get() != p.dst.get()) return false;
  FinFunctor left = compose_functors(m.H, q);
  FinFunctor right = compose_functors(p, m.K);
  if (left.omap != right.omap || left.mmap != right.mmap) return false;
  for (int F = 0; F < p.src->num_morphisms(); ++F)
    if (is_opcartesian(p, F) && !is_opcartesian(q, m.H.mmap[F])) return false;
  return true;
}

bool check_split_morphism(const OpfibMorphism& m, const FinFunctor& p, const Cleavage& cp,
                          const FinFunctor& q, const Cleavage& cq) {
  if (!check_morphism_of_opfibrations(m, p, q)) return false;
  const auto& Y = *p.src;
  const auto& X = *p.dst;
  for (int a = 0; a < Y.num_objects(); ++a)
    for (int f = 0; f < X.num_morphisms(); ++f) {
      if (X.dom(f) != p.omap[a]) continue;
      if (m.H.mmap[cp.lift[a][f]] != cq.lift[m.H.omap[a]][m.K.mmap[f]]) return false;
    }
  return true;
}

Pullback pullback_opfibration(const FinFunctor& p, const FinFunctor& K) {
  if (K.dst.get() != p.dst.get()) throw std::invalid_argument("pullback: base mismatch");
  Pullback out;
  const auto& Y = *p.src;
  const auto& W = *K.src;
  auto c = std::make_shared<FinCategory>();
  c->name = "Pb(" + W.name + "," + Y.name + ")";
  std::vector<std::pair<int, int>> objs, mors;
  for (int w = 0; w < W.num_objects(); ++w)
    for (int y = 0; y < Y.num_objects(); ++y)
      if (K.omap[w] == p.omap[y]) {
        objs.emplace_back(w, y);
        c->objects.push_back("(" + W.objects[w] + "," + Y.objects[y] + ")");
      }
  auto oidx = [&](int w, int y) {
    for (size_t i = 0; i < objs.size(); ++i)
      if (objs[i] == std::make_pair(w, y)) return static_cast<int>(i);
    return -1;
  };
  for (int u = 0; u < W.num_morphisms(); ++u)
    for (int g = 0; g < Y.num_morphisms(); ++g)
      if (K.mmap[u] == p.mmap[g]) {
        mors.emplace_back(u, g);
        c->morphisms.push_back({"(" + W.morphisms[u].name + "," + Y.morphisms[g].name + ")",
                                oidx(W.dom(u), Y.dom(g)), oidx(W.cod(u), Y.cod(g))});
      }
  auto midx = [&](int u, int g) {
    for (size_t i = 0; i < mors.size(); ++i)
      if (mors[i] == std::make_pair(u, g)) return static_cast<int>(i);
    return -1;
  };
  c->identity.resize(objs.size());
  for (size_t i = 0; i < objs.size(); ++i)
    c->identity[i] = midx(W.id(objs[i].first), Y.id(objs[i].second));
  const int M = static_cast<int>(mors.size());
  c->comp.assign(M, std::vector<int>(M, -1));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      auto [u1, g1] = mors[i];
      auto [u2, g2] = mors[j];
      if (W.cod(u1) != W.dom(u2) || Y.cod(g1) != Y.dom(g2)) continue;
      c->comp[i][j] = midx(W.compose(u1, u2), Y.compose(g1, g2));
    }
  out.total = c;
  out.q.src = c;
  out.q.dst = K.src;
  out.to_total.src = c;
  out.to_total.dst = p.src;
  out.q.omap.resize(objs.size());
  out.to_total.omap.resize(objs.size());
  for (size_t i = 0; i < objs.size(); ++i) {
    out.q.omap[i] = objs[i].first;
    out.to_total.omap[i] = objs[i].second;
  }
  out.q.mmap.resize(mors.size());
  out.to_total.mmap.resize(mors.size());
  for (size_t i = 0; i < mors.size(); ++i) {
    out.q.mmap[i] = mors[i].first;
    out.to_total.mmap[i] = mors[i].second;
  }
  return out;
}

FinFunctor compose_opfibrations(const FinFunctor& p, const FinFunctor& q) {
  return compose_functors(p, q);
}

bool check_retrofunctor(const RetrofunctorData& r) {
  const auto& Y = *r.total;
  const auto& X = *r.base;
  for (int a = 0; a < Y.num_objects(); ++a) {
    for (int f = 0; f < X.num_morphisms(); ++f) {
      bool applicable = X.dom(f) == r.p0[a];
      int v = r.phi[a][f];
      if (applicable != (v >= 0)) return false;
      if (v >= 0) {
        if (Y.dom(v) != a) return false;
        if (r.p0[Y.cod(v)] != X.cod(f)) return false;
      }
    }
    if (r.phi[a][X.id(r.p0[a])] != Y.id(a)) return false;
  }
  for (int a = 0; a < Y.num_objects(); ++a)
    for (int f = 0; f < X.num_morphisms(); ++f) {
      if (r.phi[a][f] < 0) continue;
      int aphi = Y.cod(r.phi[a][f]);
      for (int g = 0; g < X.num_morphisms(); ++g) {
        if (X.dom(g) != X.cod(f)) continue;
        if (r.phi[a][X.compose(f, g)] != Y.compose(r.phi[a][f], r.phi[aphi][g])) return false;
      }
    }
  return true;
}

RetrofunctorData cleavage_as_retrofunctor(const FinFunctor& p, const Cleavage& c) {
  RetrofunctorData r;
  r.total = p.src;
  r.base = p.dst;
  r.p0.assign(p.omap.begin(), p.omap.end());
  r.phi = c.lift;
  return r;
}

}  // namespace lmt

#include "lmt/fincat.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lmt {

int FinCategory::object(const std::string& n) const {
  for (int i = 0; i < num_objects(); ++i)
    if (objects[i] == n) return i;
  return -1;
}

int FinCategory::morphism(const std::string& n) const {
  for (int i = 0; i < num_morphisms(); ++i)
    if (morphisms[i].name == n) return i;
  return -1;
}

std::vector<int> FinCategory::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < num_morphisms(); ++f)
    if (morphisms[f].dom == x && morphisms[f].cod == y) out.push_back(f);
  return out;
}

std::vector<int> FinCategory::morphisms_from(int x) const {
  std::vector<int> out;
  for (int f = 0; f < num_morphisms(); ++f)
    if (morphisms[f].dom == x) out.push_back(f);
  return out;
}

CatPtr FinCategory::make(std::string name, std::vector<std::string> objects,
                         std::vector<Morphism> morphisms, std::vector<int> identity,
                         std::vector<std::vector<int>> comp) {
  auto c = std::make_shared<FinCategory>();
  c->name = std::move(name);
  c->objects = std::move(objects);
  c->morphisms = std::move(morphisms);
  c->identity = std::move(identity);
  c->comp = std::move(comp);
  return c;
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v << "\n";
  return os.str();
}

Report validate_category(const FinCategory& c) {
  Report r;
  auto fail = [&](const std::string& s) { r.violations.push_back(s); };

  std::set<std::string> onames(c.objects.begin(), c.objects.end());
  if (static_cast<int>(onames.size()) != c.num_objects()) fail("duplicate object ids");
  std::set<std::string> mnames;
  for (const auto& m : c.morphisms) mnames.insert(m.name);
  if (static_cast<int>(mnames.size()) != c.num_morphisms()) fail("duplicate morphism ids");

  const int O = c.num_objects(), M = c.num_morphisms();
  for (int f = 0; f < M; ++f) {
    if (c.dom(f) < 0 || c.dom(f) >= O || c.cod(f) < 0 || c.cod(f) >= O)
      fail("morphism " + c.morphisms[f].name + " has out-of-range dom/cod");
  }
  if (static_cast<int>(c.identity.size()) != O) {
    fail("identity table size mismatch");
    return r;
  }
  for (int x = 0; x < O; ++x) {
    int i = c.identity[x];
    if (i < 0 || i >= M || c.dom(i) != x || c.cod(i) != x)
      fail("identity of " + c.objects[x] + " is not an endomorphism of it");
  }
  if (static_cast<int>(c.comp.size()) != M) {
    fail("compose table size mismatch");
    return r;
  }
  for (int f = 0; f < M; ++f) {
    if (static_cast<int>(c.comp[f].size()) != M) {
      fail("compose table row size mismatch");
      return r;
    }
    for (int g = 0; g < M; ++g) {
      int h = c.comp[f][g];
      bool composable = c.cod(f) == c.dom(g);
      if (!composable && h != -1)
        fail("compose defined on non-composable pair (" + c.morphisms[f].name + "," +
             c.morphisms[g].name + ")");
      if (composable) {
        if (h < 0 || h >= M) {
          fail("compose missing on composable pair (" + c.morphisms[f].name + "," +
               c.morphisms[g].name + ")");
        } else if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) {
          fail("typing: dom/cod of " + c.morphisms[f].name + ";" + c.morphisms[g].name +
               " mismatch");
        }
      }
    }
  }
  if (!r.ok()) return r;  // typing errors make the law checks unreliable

  for (int f = 0; f < M; ++f) {
    int l = c.compose(c.id(c.dom(f)), f);
    int rr = c.compose(f, c.id(c.cod(f)));
    if (l != f)
      fail("unitality: id_" + c.objects[c.dom(f)] + ";" + c.morphisms[f].name + " != " +
           c.morphisms[f].name);
    if (rr != f)
      fail("unitality: " + c.morphisms[f].name + ";id_" + c.objects[c.cod(f)] + " != " +
           c.morphisms[f].name);
  }
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      for (int h = 0; h < M; ++h) {
        if (c.cod(g) != c.dom(h)) continue;
        if (c.compose(c.compose(f, g), h) != c.compose(f, c.compose(g, h)))
          fail("associativity fails on (" + c.morphisms[f].name + "," + c.morphisms[g].name +
               "," + c.morphisms[h].name + ")");
      }
    }
  return r;
}

Report validate_functor(const FinFunctor& F) {
  Report r;
  auto fail = [&](const std::string& s) { r.violations.push_back(s); };
  const auto& A = *F.src;
  const auto& B = *F.dst;
  if (static_cast<int>(F.omap.size()) != A.num_objects() ||
      static_cast<int>(F.mmap.size()) != A.num_morphisms()) {
    fail("functor map size mismatch");
    return r;
  }
  for (int x = 0; x < A.num_objects(); ++x)
    if (F.omap[x] < 0 || F.omap[x] >= B.num_objects()) fail("object map out of range");
  for (int f = 0; f < A.num_morphisms(); ++f) {
    int g = F.mmap[f];
    if (g < 0 || g >= B.num_morphisms()) {
      fail("morphism map out of range");
      continue;
    }
    if (B.dom(g) != F.omap[A.dom(f)] || B.cod(g) != F.omap[A.cod(f)])
      fail("dom/cod not preserved on " + A.morphisms[f].name);
  }
  if (!r.ok()) return r;
  for (int x = 0; x < A.num_objects(); ++x)
    if (F.mmap[A.id(x)] != B.id(F.omap[x]))
      fail("identity of " + A.objects[x] + " not preserved");
  for (int f = 0; f < A.num_morphisms(); ++f)
    for (int g = 0; g < A.num_morphisms(); ++g) {
      if (A.cod(f) != A.dom(g)) continue;
      if (F.mmap[A.compose(f, g)] != B.compose(F.mmap[f], F.mmap[g]))
        fail("composition not preserved on (" + A.morphisms[f].name + "," +
             A.morphisms[g].name + ")");
    }
  return r;
}

bool is_natural(const NatTransf& t) {
  const auto& A = *t.F.src;
  const auto& B = *t.F.dst;
  for (int x = 0; x < A.num_objects(); ++x) {
    int c = t.component[x];
    if (c < 0 || B.dom(c) != t.F.omap[x] || B.cod(c) != t.G.omap[x]) return false;
  }
  for (int f = 0; f < A.num_morphisms(); ++f) {
    int x = A.dom(f), y = A.cod(f);
    if (B.compose(t.F.mmap[f], t.component[y]) != B.compose(t.component[x], t.G.mmap[f]))
      return false;
  }
  return true;
}

FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor F;
  F.src = F.dst = c;
  F.omap.resize(c->num_objects());
  F.mmap.resize(c->num_morphisms());
  for (int i = 0; i < c->num_objects(); ++i) F.omap[i] = i;
  for (int i = 0; i < c->num_morphisms(); ++i) F.mmap[i] = i;
  return F;
}

FinFunctor compose_functors(const FinFunctor& f, const FinFunctor& g) {
  if (f.dst.get() != g.src.get()) throw std::invalid_argument("compose_functors: type mismatch");
  FinFunctor h;
  h.src = f.src;
  h.dst = g.dst;
  h.omap.resize(f.omap.size());
  h.mmap.resize(f.mmap.size());
  for (size_t i = 0; i < f.omap.size(); ++i) h.omap[i] = g.omap[f.omap[i]];
  for (size_t i = 0; i < f.mmap.size(); ++i) h.mmap[i] = g.mmap[f.mmap[i]];
  return h;
}

bool functors_equal(const FinFunctor& f, const FinFunctor& g) {
  return f.src.get() == g.src.get() && f.dst.get() == g.dst.get() && f.omap == g.omap &&
         f.mmap == g.mmap;
}

CatPtr product_category(const CatPtr& a, const CatPtr& b) {
  auto c = std::make_shared<FinCategory>();
  c->name = "(" + a->name + "x" + b->name + ")";
  const int AO = a->num_objects(), BO = b->num_objects();
  const int AM = a->num_morphisms(), BM = b->num_morphisms();
  for (int i = 0; i < AO; ++i)
    for (int j = 0; j < BO; ++j) c->objects.push_back("(" + a->objects[i] + "," + b->objects[j] + ")");
  auto oidx = [&](int i, int j) { return i * BO + j; };
  auto midx = [&](int f, int g) { return f * BM + g; };
  for (int f = 0; f < AM; ++f)
    for (int g = 0; g < BM; ++g) {
      Morphism m;
      m.name = "(" + a->morphisms[f].name + "," + b->morphisms[g].name + ")";
      m.dom = oidx(a->dom(f), b->dom(g));
      m.cod = oidx(a->cod(f), b->cod(g));
      c->morphisms.push_back(m);
    }
  c->identity.resize(AO * BO);
  for (int i = 0; i < AO; ++i)
    for (int j = 0; j < BO; ++j) c->identity[oidx(i, j)] = midx(a->id(i), b->id(j));
  const int M = AM * BM;
  c->comp.assign(M, std::vector<int>(M, -1));
  for (int f1 = 0; f1 < AM; ++f1)
    for (int g1 = 0; g1 < BM; ++g1)
      for (int f2 = 0; f2 < AM; ++f2)
        for (int g2 = 0; g2 < BM; ++g2) {
          if (a->cod(f1) != a->dom(f2) || b->cod(g1) != b->dom(g2)) continue;
          c->comp[midx(f1, g1)][midx(f2, g2)] = midx(a->compose(f1, f2), b->compose(g1, g2));
        }
  return c;
}

FinFunctor product_proj1(const CatPtr& prod, const CatPtr& a, const CatPtr& b) {
  FinFunctor F;
  F.src = prod;
  F.dst = a;
  const int BO = b->num_objects(), BM = b->num_morphisms();
  F.omap.resize(prod->num_objects());
  F.mmap.resize(prod->num_morphisms());
  for (int i = 0; i < prod->num_objects(); ++i) F.omap[i] = i / BO;
  for (int i = 0; i < prod->num_morphisms(); ++i) F.mmap[i] = i / BM;
  return F;
}

FinFunctor product_proj2(const CatPtr& prod, const CatPtr& a, const CatPtr& b) {
  FinFunctor F;
  F.src = prod;
  F.dst = b;
  const int BO = b->num_objects(), BM = b->num_morphisms();
  (void)a;
  F.omap.resize(prod->num_objects());
  F.mmap.resize(prod->num_morphisms());
  for (int i = 0; i < prod->num_objects(); ++i) F.omap[i] = i % BO;
  for (int i = 0; i < prod->num_morphisms(); ++i) F.mmap[i] = i % BM;
  return F;
}

FinFunctor pair_into_product(const CatPtr& prod, const FinFunctor& h, const FinFunctor& k) {
  if (h.src.get() != k.src.get()) throw std::invalid_argument("pair_into_product: sources differ");
  FinFunctor F;
  F.src = h.src;
  F.dst = prod;
  const int BO = k.dst->num_objects(), BM = k.dst->num_morphisms();
  F.omap.resize(h.omap.size());
  F.mmap.resize(h.mmap.size());
  for (size_t i = 0; i < h.omap.size(); ++i) F.omap[i] = h.omap[i] * BO + k.omap[i];
  for (size_t i = 0; i < h.mmap.size(); ++i) F.mmap[i] = h.mmap[i] * BM + k.mmap[i];
  return F;
}

CatPtr opposite(const CatPtr& c) {
  auto o = std::make_shared<FinCategory>();
  o->name = c->name + "^op";
  o->objects = c->objects;
  o->morphisms = c->morphisms;
  for (auto& m : o->morphisms) std::swap(m.dom, m.cod);
  o->identity = c->identity;
  const int M = c->num_morphisms();
  o->comp.assign(M, std::vector<int>(M, -1));
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g)
      if (c->comp[g][f] != -1) o->comp[f][g] = c->comp[g][f];
  return o;
}

FinFunctor opposite_functor(const FinFunctor& f) {
  FinFunctor g;
  g.src = opposite(f.src);
  g.dst = opposite(f.dst);
  g.omap = f.omap;
  g.mmap = f.mmap;
  return g;
}

Report validate_monoidal(const StrictMonStructure& m) {
  Report r;
  auto fail = [&](const std::string& s) { r.violations.push_back(s); };
  const auto& c = *m.carrier;
  const int O = c.num_objects(), M = c.num_morphisms();
  if (m.unit < 0 || m.unit >= O) fail("unit object out of range");
  for (int x = 0; x < O; ++x)
    for (int y = 0; y < O; ++y)
      if (m.obj_tensor[x][y] < 0 || m.obj_tensor[x][y] >= O) fail("object tensor out of range");
  if (!r.ok()) return r;
  for (int x = 0; x < O; ++x) {
    if (m.tensor_obj(m.unit, x) != x || m.tensor_obj(x, m.unit) != x)
      fail("object unit law fails at " + c.objects[x]);
    for (int y = 0; y < O; ++y)
      for (int z = 0; z < O; ++z)
        if (m.tensor_obj(m.tensor_obj(x, y), z) != m.tensor_obj(x, m.tensor_obj(y, z)))
          fail("object tensor not associative");
  }
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g) {
      int t = m.mor_tensor[f][g];
      if (t < 0 || t >= M) {
        fail("morphism tensor out of range");
        continue;
      }
      if (c.dom(t) != m.tensor_obj(c.dom(f), c.dom(g)) ||
          c.cod(t) != m.tensor_obj(c.cod(f), c.cod(g)))
        fail("morphism tensor typing fails");
    }
  if (!r.ok()) return r;
  int idI = c.id(m.unit);
  for (int f = 0; f < M; ++f)
    if (m.tensor_mor(idI, f) != f || m.tensor_mor(f, idI) != f)
      fail("morphism unit law fails at " + c.morphisms[f].name);
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g)
      for (int h = 0; h < M; ++h)
        if (m.tensor_mor(m.tensor_mor(f, g), h) != m.tensor_mor(f, m.tensor_mor(g, h)))
          fail("morphism tensor not associative");
  for (int x = 0; x < O; ++x)
    for (int y = 0; y < O; ++y)
      if (m.tensor_mor(c.id(x), c.id(y)) != c.id(m.tensor_obj(x, y)))
        fail("id (x) id != id");
  // interchange
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      for (int h = 0; h < M; ++h)
        for (int k = 0; k < M; ++k) {
          if (c.cod(h) != c.dom(k)) continue;
          if (m.tensor_mor(c.compose(f, g), c.compose(h, k)) !=
              c.compose(m.tensor_mor(f, h), m.tensor_mor(g, k)))
            fail("interchange fails");
        }
    }
  return r;
}

Report validate_symmetric(const SymmetricStructure& s) {
  Report r = validate_monoidal(s.mon);
  if (!r.ok()) return r;
  auto fail = [&](const std::string& v) { r.violations.push_back(v); };
  const auto& c = *s.mon.carrier;
  const int O = c.num_objects(), M = c.num_morphisms();
  for (int x = 0; x < O; ++x)
    for (int y = 0; y < O; ++y) {
      int sw = s.swap_mor[x][y];
      if (sw < 0 || c.dom(sw) != s.mon.tensor_obj(x, y) || c.cod(sw) != s.mon.tensor_obj(y, x)) {
        fail("symmetry typing fails");
        continue;
      }
      if (c.compose(sw, s.swap_mor[y][x]) != c.id(s.mon.tensor_obj(x, y)))
        fail("symmetry not involutive");
    }
  if (!r.ok()) return r;
  // naturality
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g) {
      int l = c.compose(s.mon.tensor_mor(f, g), s.swap_mor[c.cod(f)][c.cod(g)]);
      int rr = c.compose(s.swap_mor[c.dom(f)][c.dom(g)], s.mon.tensor_mor(g, f));
      if (l != rr) fail("symmetry not natural");
    }
  // hexagon (strict): swap_{x(x)y, z} = (id_x (x) swap_{y,z}) ; (swap_{x,z} (x) id_y)
  for (int x = 0; x < O; ++x)
    for (int y = 0; y < O; ++y)
      for (int z = 0; z < O; ++z) {
        int lhs = s.swap_mor[s.mon.tensor_obj(x, y)][z];
        int rhs = c.compose(s.mon.tensor_mor(c.id(x), s.swap_mor[y][z]),
                            s.mon.tensor_mor(s.swap_mor[x][z], c.id(y)));
        if (lhs != rhs) fail("hexagon fails");
      }
  return r;
}

int CartesianStructure::pairing(int f, int g) const {
  const auto& c = *carrier;
  if (c.dom(f) != c.dom(g)) return -1;
  int a = c.cod(f), b = c.cod(g);
  int ab = prod_obj[a][b];
  int found = -1;
  for (int h : c.hom(c.dom(f), ab)) {
    if (c.compose(h, proj1[a][b]) == f && c.compose(h, proj2[a][b]) == g) {
      if (found != -1) return -1;  // not unique
      found = h;
    }
  }
  return found;
}

CartesianSearch find_cartesian_structure(const CatPtr& c) {
  CartesianSearch out;
  const int O = c->num_objects();
  // terminal: smallest object with exactly one morphism from each object
  int terminal = -1;
  for (int t = 0; t < O && terminal < 0; ++t) {
    bool ok = true;
    for (int x = 0; x < O; ++x)
      if (c->hom(x, t).size() != 1) ok = false;
    if (ok) terminal = t;
  }
  if (terminal < 0) {
    out.witness = "no terminal object";
    return out;
  }
  CartesianStructure cs;
  cs.carrier = c;
  cs.terminal = terminal;
  cs.bang.resize(O);
  for (int x = 0; x < O; ++x) cs.bang[x] = c->hom(x, terminal)[0];
  cs.prod_obj.assign(O, std::vector<int>(O, -1));
  cs.proj1.assign(O, std::vector<int>(O, -1));
  cs.proj2.assign(O, std::vector<int>(O, -1));
  for (int a = 0; a < O; ++a)
    for (int b = 0; b < O; ++b) {
      bool found = false;
      for (int p = 0; p < O && !found; ++p) {
        for (int pa : c->hom(p, a)) {
          if (found) break;
          for (int pb : c->hom(p, b)) {
            // check universal property: every cone factors uniquely
            bool universal = true;
            for (int x = 0; x < O && universal; ++x)
              for (int f : c->hom(x, a)) {
                if (!universal) break;
                for (int g : c->hom(x, b)) {
                  int count = 0;
                  for (int h : c->hom(x, p))
                    if (c->compose(h, pa) == f && c->compose(h, pb) == g) ++count;
                  if (count != 1) {
                    universal = false;
                    break;
                  }
                }
              }
            if (universal) {
              cs.prod_obj[a][b] = p;
              cs.proj1[a][b] = pa;
              cs.proj2[a][b] = pb;
              found = true;
              break;
            }
          }
        }
      }
      if (!found) {
        out.witness = "no product of (" + c->objects[a] + "," + c->objects[b] + ")";
        return out;
      }
    }
  out.structure = std::move(cs);
  return out;
}

Report check_cartesian_structure(const CartesianStructure& cs) {
  Report r;
  auto fail = [&](const std::string& s) { r.violations.push_back(s); };
  const auto& c = *cs.carrier;
  const int O = c.num_objects();
  for (int x = 0; x < O; ++x) {
    auto h = c.hom(x, cs.terminal);
    if (h.size() != 1 || h[0] != cs.bang[x]) fail("terminal universal property fails");
  }
  for (int a = 0; a < O; ++a)
    for (int b = 0; b < O; ++b) {
      int p = cs.prod_obj[a][b];
      int pa = cs.proj1[a][b], pb = cs.proj2[a][b];
      if (p < 0 || pa < 0 || pb < 0 || c.dom(pa) != p || c.cod(pa) != a || c.dom(pb) != p ||
          c.cod(pb) != b) {
        fail("product typing fails");
        continue;
      }
      for (int x = 0; x < O; ++x)
        for (int f : c.hom(x, a))
          for (int g : c.hom(x, b)) {
            int count = 0;
            for (int h : c.hom(x, p))
              if (c.compose(h, pa) == f && c.compose(h, pb) == g) ++count;
            if (count != 1)
              fail("product universal property fails at (" + c.objects[a] + "," + c.objects[b] +
                   ") cone from " + c.objects[x]);
          }
    }
  return r;
}

namespace {
CatPtr build(const std::string& name, std::vector<std::string> objs,
             std::vector<std::tuple<std::string, int, int>> mors,
             std::vector<std::tuple<int, int, int>> comps) {
  auto c = std::make_shared<FinCategory>();
  c->name = name;
  c->objects = std::move(objs);
  const int O = c->num_objects();
  // identities first
  for (int x = 0; x < O; ++x) c->morphisms.push_back({"id_" + c->objects[x], x, x});
  c->identity.resize(O);
  for (int x = 0; x < O; ++x) c->identity[x] = x;
  for (auto& [n, d, cd] : mors) c->morphisms.push_back({n, d, cd});
  const int M = c->num_morphisms();
  c->comp.assign(M, std::vector<int>(M, -1));
  for (int f = 0; f < M; ++f)
    for (int g = 0; g < M; ++g) {
      if (c->cod(f) != c->dom(g)) continue;
      if (c->is_identity(f)) c->comp[f][g] = g;
      else if (c->is_identity(g)) c->comp[f][g] = f;
    }
  for (auto& [f, g, h] : comps) c->comp[f][g] = h;
  return c;
}
}  // namespace

CatPtr cat_terminal() {
  static CatPtr c = build("CAT_1", {"*"}, {}, {});
  return c;
}

CatPtr cat_arrow() {
  static CatPtr c = build("CAT_2", {"0", "1"}, {{"u", 0, 1}}, {});
  return c;
}

CatPtr cat_parallel() {
  static CatPtr c = build("CAT_PAR", {"0", "1"}, {{"u", 0, 1}, {"v", 0, 1}}, {});
  return c;
}

CatPtr cat_01() {
  static CatPtr c = build("CAT_01", {"e", "1"}, {{"!", 0, 1}}, {});
  return c;
}

CatPtr cat_composable() {
  // morphism indices: 0,1,2 identities; 3 = f, 4 = g, 5 = h = f;g
  static CatPtr c = build("X3", {"x", "y", "z"}, {{"f", 0, 1}, {"g", 1, 2}, {"h", 0, 2}},
                          {{3, 4, 5}});
  return c;
}

CatPtr cat_iso() {
  // 0,1 identities; 2 = u: 0->1, 3 = v: 1->0 with u;v = id_0, v;u = id_1
  static CatPtr c = build("CAT_ISO", {"0", "1"}, {{"u", 0, 1}, {"v", 1, 0}},
                          {{2, 3, 0}, {3, 2, 1}});
  return c;
}

}  // namespace lmt

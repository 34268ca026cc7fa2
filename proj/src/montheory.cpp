#include "lmt/montheory.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace lmt {

std::string word_str(const std::vector<std::string>& colours, const Word& w) {
  if (w.empty()) return "eps";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += colours[w[i]];
  }
  return s;
}

int MonSignature::colour(const std::string& n) const {
  for (size_t i = 0; i < colours.size(); ++i)
    if (colours[i] == n) return static_cast<int>(i);
  return -1;
}

int MonSignature::gen(const std::string& n) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == n) return static_cast<int>(i);
  return -1;
}

TermPtr t_gen(const MonSignature& sig, int g) {
  auto t = std::make_shared<MonTerm>();
  t->kind = MonTerm::Kind::Gen;
  t->gen = g;
  t->dom = sig.gens[g].arity;
  t->cod = sig.gens[g].coarity;
  return t;
}

TermPtr t_gen(const MonSignature& sig, const std::string& name) {
  int g = sig.gen(name);
  if (g < 0) throw SortError("unknown generator " + name);
  return t_gen(sig, g);
}

TermPtr t_id(int colour) {
  auto t = std::make_shared<MonTerm>();
  t->kind = MonTerm::Kind::IdColour;
  t->colour = colour;
  t->dom = {colour};
  t->cod = {colour};
  return t;
}

TermPtr t_id_eps() {
  auto t = std::make_shared<MonTerm>();
  t->kind = MonTerm::Kind::IdEps;
  return t;
}

TermPtr t_id_word(const Word& w) {
  if (w.empty()) return t_id_eps();
  TermPtr t = t_id(w[0]);
  for (size_t i = 1; i < w.size(); ++i) t = t_tensor(t, t_id(w[i]));
  return t;
}

TermPtr t_comp(const TermPtr& a, const TermPtr& b) {
  if (a->cod != b->dom) throw SortError("comp: middle sorts differ");
  auto t = std::make_shared<MonTerm>();
  t->kind = MonTerm::Kind::Comp;
  t->left = a;
  t->right = b;
  t->dom = a->dom;
  t->cod = b->cod;
  t->size = a->size + b->size + 1;
  return t;
}

TermPtr t_tensor(const TermPtr& a, const TermPtr& b) {
  auto t = std::make_shared<MonTerm>();
  t->kind = MonTerm::Kind::Tensor;
  t->left = a;
  t->right = b;
  t->dom = a->dom;
  t->dom.insert(t->dom.end(), b->dom.begin(), b->dom.end());
  t->cod = a->cod;
  t->cod.insert(t->cod.end(), b->cod.begin(), b->cod.end());
  t->size = a->size + b->size + 1;
  return t;
}

std::string term_str(const MonSignature& sig, const TermPtr& t) {
  switch (t->kind) {
    case MonTerm::Kind::Gen:
      return sig.gens[t->gen].name;
    case MonTerm::Kind::IdColour:
      return "id[" + sig.colours[t->colour] + "]";
    case MonTerm::Kind::IdEps:
      return "id[]";
    case MonTerm::Kind::Comp:
      return "(" + term_str(sig, t->left) + " ; " + term_str(sig, t->right) + ")";
    case MonTerm::Kind::Tensor:
      return "(" + term_str(sig, t->left) + " * " + term_str(sig, t->right) + ")";
  }
  return "?";
}

// --- interchange normal form ------------------------------------------------

namespace {

void collect_slices(const MonSignature& sig, const TermPtr& t, int shift,
                    std::vector<DiagramNF::Slice>& out) {
  switch (t->kind) {
    case MonTerm::Kind::Gen:
      out.push_back({shift, t->gen});
      return;
    case MonTerm::Kind::IdColour:
    case MonTerm::Kind::IdEps:
      return;
    case MonTerm::Kind::Comp:
      collect_slices(sig, t->left, shift, out);
      collect_slices(sig, t->right, shift, out);
      return;
    case MonTerm::Kind::Tensor:
      collect_slices(sig, t->left, shift, out);
      collect_slices(sig, t->right, shift + static_cast<int>(t->left->cod.size()), out);
      return;
  }
}

void bubble_normalize(const MonSignature& sig, std::vector<DiagramNF::Slice>& s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      auto [o1, g1] = s[i];
      auto [o2, g2] = s[i + 1];
      int ar2 = static_cast<int>(sig.gens[g2].arity.size());
      int co2 = static_cast<int>(sig.gens[g2].coarity.size());
      if (o2 + ar2 > o1) continue;  // blocks not disjoint with e2 on the left
      if (o2 < o1 || (o2 == o1 && g2 < g1)) {
        s[i] = {o2, g2};
        s[i + 1] = {o1 + co2 - ar2, g1};
        changed = true;
      }
    }
  }
}

}  // namespace

DiagramNF diagram_nf(const MonSignature& sig, const TermPtr& t) {
  DiagramNF nf;
  nf.dom = t->dom;
  nf.cod = t->cod;
  collect_slices(sig, t, 0, nf.slices);
  bubble_normalize(sig, nf.slices);
  return nf;
}

bool equal_structural(const MonSignature& sig, const TermPtr& t, const TermPtr& s) {
  if (t->dom != s->dom || t->cod != s->cod) throw SortError("equal_structural: not parallel");
  return diagram_nf(sig, t) == diagram_nf(sig, s);
}

namespace {

// frontier words before each slice (and after the last)
std::vector<Word> frontiers(const MonSignature& sig, const DiagramNF& nf) {
  std::vector<Word> out;
  Word w = nf.dom;
  out.push_back(w);
  for (auto& sl : nf.slices) {
    const auto& g = sig.gens[sl.gen];
    int ar = static_cast<int>(g.arity.size());
    if (sl.offset < 0 || sl.offset + ar > static_cast<int>(w.size()))
      throw std::logic_error("diagram slice out of range");
    for (int i = 0; i < ar; ++i)
      if (w[sl.offset + i] != g.arity[i]) throw std::logic_error("diagram slice colour mismatch");
    Word next(w.begin(), w.begin() + sl.offset);
    next.insert(next.end(), g.coarity.begin(), g.coarity.end());
    next.insert(next.end(), w.begin() + sl.offset + ar, w.end());
    w = std::move(next);
    out.push_back(w);
  }
  if (w != nf.cod) throw std::logic_error("diagram cod mismatch");
  return out;
}

}  // namespace

TermPtr nf_to_term(const MonSignature& sig, const DiagramNF& nf) {
  auto fr = frontiers(sig, nf);
  if (nf.slices.empty()) return t_id_word(nf.dom);
  TermPtr acc;
  for (size_t i = 0; i < nf.slices.size(); ++i) {
    const auto& sl = nf.slices[i];
    const Word& w = fr[i];
    const auto& g = sig.gens[sl.gen];
    Word left(w.begin(), w.begin() + sl.offset);
    Word right(w.begin() + sl.offset + g.arity.size(), w.end());
    TermPtr slice = t_gen(sig, sl.gen);
    if (!left.empty()) slice = t_tensor(t_id_word(left), slice);
    if (!right.empty()) slice = t_tensor(slice, t_id_word(right));
    acc = acc ? t_comp(acc, slice) : slice;
  }
  return acc;
}

std::string nf_str(const MonSignature& sig, const DiagramNF& nf) {
  std::ostringstream os;
  os << word_str(sig.colours, nf.dom) << " -> " << word_str(sig.colours, nf.cod) << " [";
  for (size_t i = 0; i < nf.slices.size(); ++i) {
    if (i) os << ", ";
    os << nf.slices[i].offset << ":" << sig.gens[nf.slices[i].gen].name;
  }
  os << "]";
  return os.str();
}

// --- builtin theories and schema packs ---------------------------------------

int MonTheory::sym_gen(int a, int b) const {
  return sig.gen("sw_" + sig.colours[a] + "_" + sig.colours[b]);
}
int MonTheory::comonoid_d(int a) const { return sig.gen("d_" + sig.colours[a]); }
int MonTheory::comonoid_e(int a) const { return sig.gen("e_" + sig.colours[a]); }
int MonTheory::monoid_m(int a) const { return sig.gen("m_" + sig.colours[a]); }
int MonTheory::monoid_u(int a) const { return sig.gen("u_" + sig.colours[a]); }

namespace {

// symmetry of a single colour past a word: a w -> w a
TermPtr sym_colour_word(const MonTheory& th, int a, const Word& w) {
  if (w.empty()) return t_id(a);
  TermPtr head = t_gen(th.sig, th.sym_gen(a, w[0]));
  Word rest(w.begin() + 1, w.end());
  if (rest.empty()) return head;
  TermPtr step1 = t_tensor(head, t_id_word(rest));
  TermPtr step2 = t_tensor(t_id(w[0]), sym_colour_word(th, a, rest));
  return t_comp(step1, step2);
}

}  // namespace

TermPtr sym_word(const MonTheory& th, const Word& v, const Word& w) {
  if (v.empty()) return t_id_word(w);
  if (w.empty()) return t_id_word(v);
  int a = v[0];
  Word v2(v.begin() + 1, v.end());
  // a v' w -> a w v' -> w a v'
  TermPtr inner = v2.empty() ? sym_colour_word(th, a, w)
                             : t_comp(t_tensor(t_id(a), sym_word(th, v2, w)),
                                      t_tensor(sym_colour_word(th, a, w), t_id_word(v2)));
  return inner;
}

TermPtr comon_d_word(const MonTheory& th, const Word& w) {
  if (w.empty()) return t_id_eps();
  int a = w[0];
  Word rest(w.begin() + 1, w.end());
  TermPtr da = t_gen(th.sig, th.comonoid_d(a));
  if (rest.empty()) return da;
  TermPtr dr = comon_d_word(th, rest);
  // a w' -> aa w'w' -> a w' a w'
  TermPtr step1 = t_tensor(da, dr);
  TermPtr mid = t_tensor(t_tensor(t_id(a), sym_colour_word(th, a, rest)), t_id_word(rest));
  return t_comp(step1, mid);
}

TermPtr comon_e_word(const MonTheory& th, const Word& w) {
  if (w.empty()) return t_id_eps();
  TermPtr t = t_gen(th.sig, th.comonoid_e(w[0]));
  for (size_t i = 1; i < w.size(); ++i) t = t_tensor(t, t_gen(th.sig, th.comonoid_e(w[i])));
  return t;
}

TermPtr mon_m_word(const MonTheory& th, const Word& w) {
  if (w.empty()) return t_id_eps();
  int a = w[0];
  Word rest(w.begin() + 1, w.end());
  TermPtr ma = t_gen(th.sig, th.monoid_m(a));
  if (rest.empty()) return ma;
  TermPtr mr = mon_m_word(th, rest);
  // a w' a w' -> a a w' w' -> a w'
  TermPtr mid = t_tensor(t_tensor(t_id(a), sym_word(th, rest, {a})), t_id_word(rest));
  return t_comp(mid, t_tensor(ma, mr));
}

TermPtr mon_u_word(const MonTheory& th, const Word& w) {
  if (w.empty()) return t_id_eps();
  TermPtr t = t_gen(th.sig, th.monoid_u(w[0]));
  for (size_t i = 1; i < w.size(); ++i) t = t_tensor(t, t_gen(th.sig, th.monoid_u(w[i])));
  return t;
}

namespace {

void add_eq(MonTheory& th, const std::string& name, const TermPtr& l, const TermPtr& r) {
  if (l->dom != r->dom || l->cod != r->cod)
    throw SortError("equation " + name + " is not parallel");
  // skip exact duplicates (schema materialization may regenerate)
  for (auto& e : th.equations)
    if (e.name == name) return;
  th.equations.push_back({name, l, r});
}

}  // namespace

void materialize_schema_equations(MonTheory& th) {
  const auto& sig = th.sig;
  if (th.schema_symmetric) {
    for (const auto& ca : th.sym_colours)
      for (const auto& cb : th.sym_colours) {
        int a = sig.colour(ca), b = sig.colour(cb);
        TermPtr l = t_comp(t_gen(sig, th.sym_gen(a, b)), t_gen(sig, th.sym_gen(b, a)));
        add_eq(th, "sym_inv_" + ca + "_" + cb, l, t_id_word({a, b}));
      }
    for (int g = 0; g < sig.num_gens(); ++g) {
      const auto& gd = sig.gens[g];
      for (const auto& cc : th.sym_colours) {
        int c = sig.colour(cc);
        // (g (x) id_c) ; sym(cod, c) = sym(dom, c) ; (id_c (x) g)
        TermPtr l = t_comp(t_tensor(t_gen(sig, g), t_id(c)), sym_word(th, gd.coarity, {c}));
        TermPtr r = t_comp(sym_word(th, gd.arity, {c}), t_tensor(t_id(c), t_gen(sig, g)));
        add_eq(th, "sym_nat_r_" + gd.name + "_" + cc, l, r);
        TermPtr l2 = t_comp(t_tensor(t_id(c), t_gen(sig, g)), sym_word(th, {c}, gd.coarity));
        TermPtr r2 = t_comp(sym_word(th, {c}, gd.arity), t_tensor(t_gen(sig, g), t_id(c)));
        add_eq(th, "sym_nat_l_" + gd.name + "_" + cc, l2, r2);
      }
    }
  }
  if (th.schema_uniform_comonoids) {
    for (const auto& ca : th.sym_colours) {
      int a = sig.colour(ca);
      TermPtr d = t_gen(sig, th.comonoid_d(a));
      TermPtr e = t_gen(sig, th.comonoid_e(a));
      TermPtr ida = t_id(a);
      add_eq(th, "comon_assoc_" + ca, t_comp(d, t_tensor(d, ida)), t_comp(d, t_tensor(ida, d)));
      add_eq(th, "comon_counit_l_" + ca, t_comp(d, t_tensor(e, ida)), ida);
      add_eq(th, "comon_counit_r_" + ca, t_comp(d, t_tensor(ida, e)), ida);
      add_eq(th, "comon_cocomm_" + ca, t_comp(d, t_gen(sig, th.sym_gen(a, a))), d);
    }
    for (int g = 0; g < sig.num_gens(); ++g) {
      const auto& gd = sig.gens[g];
      TermPtr tg = t_gen(sig, g);
      add_eq(th, "comon_nat_d_" + gd.name, t_comp(tg, comon_d_word(th, gd.coarity)),
             t_comp(comon_d_word(th, gd.arity), t_tensor(tg, tg)));
      add_eq(th, "comon_nat_e_" + gd.name, t_comp(tg, comon_e_word(th, gd.coarity)),
             comon_e_word(th, gd.arity));
    }
  }
  if (th.schema_natural_monoids) {
    for (const auto& ca : th.sym_colours) {
      int a = sig.colour(ca);
      TermPtr m = t_gen(sig, th.monoid_m(a));
      TermPtr u = t_gen(sig, th.monoid_u(a));
      TermPtr ida = t_id(a);
      add_eq(th, "mon_assoc_" + ca, t_comp(t_tensor(m, ida), m), t_comp(t_tensor(ida, m), m));
      add_eq(th, "mon_unit_l_" + ca, t_comp(t_tensor(u, ida), m), ida);
      add_eq(th, "mon_unit_r_" + ca, t_comp(t_tensor(ida, u), m), ida);
    }
    for (int g = 0; g < sig.num_gens(); ++g) {
      const auto& gd = sig.gens[g];
      if (gd.arity.size() != 1 || gd.coarity.size() != 1) continue;
      int a = gd.arity[0], b = gd.coarity[0];
      if (!th.sym_colours.count(sig.colours[a]) || !th.sym_colours.count(sig.colours[b]))
        continue;
      TermPtr tg = t_gen(sig, g);
      add_eq(th, "mon_nat_m_" + gd.name,
             t_comp(t_gen(sig, th.monoid_m(a)), tg),
             t_comp(t_tensor(tg, tg), t_gen(sig, th.monoid_m(b))));
      add_eq(th, "mon_nat_u_" + gd.name, t_comp(t_gen(sig, th.monoid_u(a)), tg),
             t_gen(sig, th.monoid_u(b)));
    }
  }
}

MonTheory theory_monoids() {
  MonTheory th;
  th.sig.colours = {"o"};
  th.sig.gens.push_back({"m", {0, 0}, {0}});
  th.sig.gens.push_back({"u", {}, {0}});
  TermPtr m = t_gen(th.sig, "m"), u = t_gen(th.sig, "u"), ido = t_id(0);
  add_eq(th, "assoc", t_comp(t_tensor(m, ido), m), t_comp(t_tensor(ido, m), m));
  add_eq(th, "unit_l", t_comp(t_tensor(u, ido), m), ido);
  add_eq(th, "unit_r", t_comp(t_tensor(ido, u), m), ido);
  return th;
}

MonTheory theory_comonoids() {
  MonTheory th;
  th.sig.colours = {"o"};
  th.sig.gens.push_back({"d", {0}, {0, 0}});
  th.sig.gens.push_back({"e", {0}, {}});
  TermPtr d = t_gen(th.sig, "d"), e = t_gen(th.sig, "e"), ido = t_id(0);
  add_eq(th, "coassoc", t_comp(d, t_tensor(d, ido)), t_comp(d, t_tensor(ido, d)));
  add_eq(th, "counit_l", t_comp(d, t_tensor(e, ido)), ido);
  add_eq(th, "counit_r", t_comp(d, t_tensor(ido, e)), ido);
  return th;
}

namespace {
void add_symmetry_gens(MonTheory& th) {
  for (const auto& a : th.sym_colours)
    for (const auto& b : th.sym_colours) {
      int ia = th.sig.colour(a), ib = th.sig.colour(b);
      th.sig.gens.push_back({"sw_" + a + "_" + b, {ia, ib}, {ib, ia}});
    }
}
}  // namespace

MonTheory theory_symmetric(const std::vector<std::string>& colours) {
  MonTheory th;
  th.sig.colours = colours;
  th.sym_colours.insert(colours.begin(), colours.end());
  th.schema_symmetric = true;
  add_symmetry_gens(th);
  materialize_schema_equations(th);
  return th;
}

MonTheory theory_uniform_comonoids(const std::vector<std::string>& colours) {
  MonTheory th;
  th.sig.colours = colours;
  th.sym_colours.insert(colours.begin(), colours.end());
  th.schema_symmetric = true;
  th.schema_uniform_comonoids = true;
  add_symmetry_gens(th);
  for (const auto& a : colours) {
    int ia = th.sig.colour(a);
    th.sig.gens.push_back({"d_" + a, {ia}, {ia, ia}});
    th.sig.gens.push_back({"e_" + a, {ia}, {}});
  }
  materialize_schema_equations(th);
  return th;
}

MonTheory theory_natural_monoids(const std::vector<std::string>& colours) {
  MonTheory th;
  th.sig.colours = colours;
  th.sym_colours.insert(colours.begin(), colours.end());
  th.schema_symmetric = true;
  th.schema_natural_monoids = true;
  add_symmetry_gens(th);
  for (const auto& a : colours) {
    int ia = th.sig.colour(a);
    th.sig.gens.push_back({"m_" + a, {ia, ia}, {ia}});
    th.sig.gens.push_back({"u_" + a, {}, {ia}});
  }
  materialize_schema_equations(th);
  return th;
}

MonTheory theory_indexed_monoids(const std::vector<std::string>& colours) {
  MonTheory th;
  th.sig.colours = colours;
  th.sym_colours.insert(colours.begin(), colours.end());
  th.schema_symmetric = true;
  th.schema_uniform_comonoids = true;
  th.schema_natural_monoids = true;
  add_symmetry_gens(th);
  for (const auto& a : colours) {
    int ia = th.sig.colour(a);
    th.sig.gens.push_back({"d_" + a, {ia}, {ia, ia}});
    th.sig.gens.push_back({"e_" + a, {ia}, {}});
    th.sig.gens.push_back({"m_" + a, {ia, ia}, {ia}});
    th.sig.gens.push_back({"u_" + a, {}, {ia}});
  }
  materialize_schema_equations(th);
  return th;
}

MonTheory theory_im(const CatPtr& x) {
  MonTheory th;
  th.sig.colours = x->objects;
  th.sym_colours.insert(x->objects.begin(), x->objects.end());
  th.schema_symmetric = true;
  th.schema_uniform_comonoids = true;
  th.schema_natural_monoids = true;
  add_symmetry_gens(th);
  for (const auto& a : x->objects) {
    int ia = th.sig.colour(a);
    th.sig.gens.push_back({"d_" + a, {ia}, {ia, ia}});
    th.sig.gens.push_back({"e_" + a, {ia}, {}});
    th.sig.gens.push_back({"m_" + a, {ia, ia}, {ia}});
    th.sig.gens.push_back({"u_" + a, {}, {ia}});
  }
  // hom generators
  for (int f = 0; f < x->num_morphisms(); ++f)
    th.sig.gens.push_back({x->morphisms[f].name, {x->dom(f)}, {x->cod(f)}});
  materialize_schema_equations(th);
  // identities collapse, composites contract
  for (int ob = 0; ob < x->num_objects(); ++ob) {
    int g = th.sig.gen(x->morphisms[x->id(ob)].name);
    add_eq(th, "id_gen_" + x->objects[ob], t_gen(th.sig, g), t_id(ob));
  }
  for (int f = 0; f < x->num_morphisms(); ++f)
    for (int g = 0; g < x->num_morphisms(); ++g) {
      if (x->cod(f) != x->dom(g)) continue;
      int h = x->compose(f, g);
      add_eq(th, "comp_" + x->morphisms[f].name + "_" + x->morphisms[g].name,
             t_comp(t_gen(th.sig, x->morphisms[f].name), t_gen(th.sig, x->morphisms[g].name)),
             t_gen(th.sig, x->morphisms[h].name));
    }
  return th;
}

// --- prover ------------------------------------------------------------------

namespace {

struct RuleNF {
  std::string name;
  bool reversed;
  DiagramNF lhs, rhs;  // oriented: rewrite lhs -> rhs
};

// Wire-identity bookkeeping: who produced and consumed each wire, and where
// zero-input slices anchor. Used to re-sequence slices soundly.
struct WireSim {
  // per slice: consumed wire ids, produced wire ids, anchors for insertion
  std::vector<std::vector<int>> consumed, produced;
  std::vector<int> left_anchor;   // wire id left of the block, -1 = left boundary
  std::vector<int> right_anchor;  // wire id right of the block, -2 = right boundary
  std::vector<int> wire_colour;
  std::vector<int> dom_ids;
};

WireSim simulate_ids(const MonSignature& sig, const DiagramNF& d) {
  WireSim ws;
  std::vector<int> frontier;
  for (int c : d.dom) {
    ws.wire_colour.push_back(c);
    frontier.push_back(static_cast<int>(ws.wire_colour.size()) - 1);
  }
  ws.dom_ids = frontier;
  for (auto& sl : d.slices) {
    const auto& g = sig.gens[sl.gen];
    int ar = static_cast<int>(g.arity.size());
    std::vector<int> cons(frontier.begin() + sl.offset, frontier.begin() + sl.offset + ar);
    std::vector<int> prod;
    for (int c : g.coarity) {
      ws.wire_colour.push_back(c);
      prod.push_back(static_cast<int>(ws.wire_colour.size()) - 1);
    }
    ws.consumed.push_back(cons);
    ws.produced.push_back(prod);
    ws.left_anchor.push_back(sl.offset > 0 ? frontier[sl.offset - 1] : -1);
    ws.right_anchor.push_back(sl.offset + ar < static_cast<int>(frontier.size())
                                  ? frontier[sl.offset + ar]
                                  : -2);
    frontier.erase(frontier.begin() + sl.offset, frontier.begin() + sl.offset + ar);
    frontier.insert(frontier.begin() + sl.offset, prod.begin(), prod.end());
  }
  return ws;
}

// Replay a permutation of d's slices under wire identities; returns the
// re-offset slice list, or nullopt when the ordering is not realizable.
std::optional<std::vector<DiagramNF::Slice>> replay_order(const MonSignature& sig,
                                                          const DiagramNF& d, const WireSim& ws,
                                                          const std::vector<int>& order) {
  std::vector<int> frontier = ws.dom_ids;
  std::vector<DiagramNF::Slice> out;
  for (int si : order) {
    const auto& cons = ws.consumed[si];
    int offset;
    if (!cons.empty()) {
      auto it = std::find(frontier.begin(), frontier.end(), cons[0]);
      if (it == frontier.end()) return std::nullopt;
      offset = static_cast<int>(it - frontier.begin());
      for (size_t i = 0; i < cons.size(); ++i) {
        if (offset + static_cast<int>(i) >= static_cast<int>(frontier.size()) ||
            frontier[offset + i] != cons[i])
          return std::nullopt;
      }
    } else {
      int la = ws.left_anchor[si], ra = ws.right_anchor[si];
      if (la == -1) {
        offset = 0;
        if (ra != -2 && (frontier.empty() || frontier[0] != ra)) return std::nullopt;
      } else {
        auto it = std::find(frontier.begin(), frontier.end(), la);
        if (it == frontier.end()) return std::nullopt;
        offset = static_cast<int>(it - frontier.begin()) + 1;
        if (ra == -2) {
          if (offset != static_cast<int>(frontier.size())) return std::nullopt;
        } else if (offset >= static_cast<int>(frontier.size()) || frontier[offset] != ra) {
          return std::nullopt;
        }
      }
    }
    out.push_back({offset, d.slices[si].gen});
    frontier.erase(frontier.begin() + offset, frontier.begin() + offset + cons.size());
    frontier.insert(frontier.begin() + offset, ws.produced[si].begin(), ws.produced[si].end());
  }
  return out;
}

// Find all rewrites of `d` by the oriented rule, as successor normal forms.
// Occurrences are monotone slice subsets; interleaved slices are re-sequenced
// before or after the pattern block when wire dependencies allow.
void find_rewrites(const MonSignature& sig, const DiagramNF& d, const RuleNF& rule,
                   std::vector<DiagramNF>& out) {
  auto fr = frontiers(sig, d);
  const auto& l = rule.lhs;
  const auto& r = rule.rhs;
  const int n = static_cast<int>(d.slices.size());
  auto push_result = [&](std::vector<DiagramNF::Slice> slices) {
    DiagramNF nf;
    nf.dom = d.dom;
    nf.cod = d.cod;
    nf.slices = std::move(slices);
    bubble_normalize(sig, nf.slices);
    frontiers(sig, nf);  // surgery sanity
    out.push_back(std::move(nf));
  };

  if (l.slices.empty()) {
    // insertion of r at any time position / offset where the boundary matches
    for (int pos = 0; pos <= n; ++pos) {
      const Word& w = fr[pos];
      for (int delta = 0; delta + static_cast<int>(l.dom.size()) <= static_cast<int>(w.size());
           ++delta) {
        bool match = true;
        for (size_t i = 0; i < l.dom.size(); ++i)
          if (w[delta + i] != l.dom[i]) match = false;
        if (!match) continue;
        std::vector<DiagramNF::Slice> slices(d.slices.begin(), d.slices.begin() + pos);
        for (auto sl : r.slices) slices.push_back({sl.offset + delta, sl.gen});
        for (int j = pos; j < n; ++j) slices.push_back(d.slices[j]);
        push_result(std::move(slices));
      }
    }
    return;
  }

  const int k = static_cast<int>(l.slices.size());
  WireSim ws = simulate_ids(sig, d);
  // direct dependency: j consumes a wire produced by i
  auto depends = [&](int i, int j) {
    for (int w : ws.consumed[j])
      for (int p : ws.produced[i])
        if (w == p) return true;
    return false;
  };

  // enumerate monotone subsets matching l's generator sequence
  std::vector<int> sel;
  std::function<void(int, int)> enumerate = [&](int from, int t) {
    if (t == k) {
      int first = sel[0], last = sel[k - 1];
      std::vector<int> inS(n, 0);
      for (int s : sel) inS[s] = 1;
      // classify window slices by transitive dependency with the pattern
      std::vector<int> window;
      for (int j = first; j <= last; ++j)
        if (!inS[j]) window.push_back(j);
      std::vector<int> reach_from_S(n, 0), reach_to_S(n, 0);
      for (int j = first; j <= last; ++j) {
        if (inS[j]) reach_from_S[j] = 1;
        else
          for (int i = first; i < j; ++i)
            if ((reach_from_S[i]) && depends(i, j)) reach_from_S[j] = 1;
      }
      for (int j = last; j >= first; --j) {
        if (inS[j]) reach_to_S[j] = 1;
        else
          for (int i = j + 1; i <= last; ++i)
            if (reach_to_S[i] && depends(j, i)) reach_to_S[j] = 1;
      }
      bool feasible = true;
      std::vector<int> must_before, must_after, free_slices;
      for (int j : window) {
        bool after = reach_from_S[j] && !inS[j];
        bool before = reach_to_S[j] && !inS[j];
        if (after && before) {
          feasible = false;
          break;
        }
        if (after) must_after.push_back(j);
        else if (before) must_before.push_back(j);
        else free_slices.push_back(j);
      }
      if (feasible) {
        for (int variant = 0; variant < 2; ++variant) {
          std::vector<int> order;
          for (int j = 0; j < first; ++j) order.push_back(j);
          std::vector<int> pre = must_before, post = must_after;
          for (int j : free_slices) (variant == 0 ? pre : post).push_back(j);
          std::sort(pre.begin(), pre.end());
          std::sort(post.begin(), post.end());
          for (int j : pre) order.push_back(j);
          for (int s : sel) order.push_back(s);
          int pat_begin = static_cast<int>(order.size()) - k;
          for (int j : post) order.push_back(j);
          for (int j = last + 1; j < n; ++j) order.push_back(j);
          auto replayed = replay_order(sig, d, ws, order);
          if (!replayed) {
            if (free_slices.empty()) break;  // variants identical
            continue;
          }
          auto& rs = *replayed;
          // the pattern block must be l shifted by a uniform delta
          int delta = rs[pat_begin].offset - l.slices[0].offset;
          if (delta < 0) continue;
          bool match = true;
          for (int t2 = 0; t2 < k; ++t2)
            if (rs[pat_begin + t2].offset != l.slices[t2].offset + delta ||
                rs[pat_begin + t2].gen != l.slices[t2].gen)
              match = false;
          if (match) {
            // boundary word check at the pattern start
            Word w = d.dom;
            for (int j = 0; j < pat_begin; ++j) {
              const auto& g = sig.gens[rs[j].gen];
              w.erase(w.begin() + rs[j].offset, w.begin() + rs[j].offset + g.arity.size());
              w.insert(w.begin() + rs[j].offset, g.coarity.begin(), g.coarity.end());
            }
            if (delta + static_cast<int>(l.dom.size()) <= static_cast<int>(w.size())) {
              bool bd = true;
              for (size_t i = 0; i < l.dom.size(); ++i)
                if (w[delta + i] != l.dom[i]) bd = false;
              if (bd) {
                std::vector<DiagramNF::Slice> slices(rs.begin(), rs.begin() + pat_begin);
                for (auto sl : r.slices) slices.push_back({sl.offset + delta, sl.gen});
                for (size_t j = pat_begin + k; j < rs.size(); ++j) slices.push_back(rs[j]);
                push_result(std::move(slices));
              }
            }
          }
          if (free_slices.empty()) break;
        }
      }
      return;
    }
    for (int j = from; j < n; ++j)
      if (d.slices[j].gen == l.slices[t].gen) {
        sel.push_back(j);
        enumerate(j + 1, t + 1);
        sel.pop_back();
      }
  };
  enumerate(0, 0);
}

struct SearchNode {
  DiagramNF parent;
  int rule = -1;  // index into oriented rules; -1 for the root
};

}  // namespace

ProveResult prove_equal(const MonTheory& th, const TermPtr& t, const TermPtr& s, long budget) {
  ProveResult res;
  if (t->dom != s->dom || t->cod != s->cod) throw SortError("prove_equal: not parallel");
  const auto& sig = th.sig;
  DiagramNF start = diagram_nf(sig, t);
  DiagramNF goal = diagram_nf(sig, s);
  if (start == goal) {
    res.verdict = Verdict::Proved;
    return res;
  }
  if (th.equations.empty()) {
    res.verdict = Verdict::Refuted;
    return res;
  }
  std::vector<RuleNF> rules;
  for (auto& e : th.equations) {
    DiagramNF l = diagram_nf(sig, e.lhs), r = diagram_nf(sig, e.rhs);
    if (l == r) continue;
    rules.push_back({e.name, false, l, r});
    rules.push_back({e.name, true, r, l});
  }
  // bidirectional BFS; trees record (parent, oriented rule)
  std::map<DiagramNF, SearchNode> treeL, treeR;
  treeL[start] = {};
  treeR[goal] = {};
  std::deque<DiagramNF> qL{start}, qR{goal};
  long nodes = 0;
  std::optional<DiagramNF> meet;
  bool meet_on_left_expand = false;
  while (!qL.empty() && !qR.empty() && !meet) {
    bool expand_left = treeL.size() <= treeR.size();
    auto& q = expand_left ? qL : qR;
    auto& tree = expand_left ? treeL : treeR;
    auto& other = expand_left ? treeR : treeL;
    if (q.empty()) break;
    DiagramNF cur = q.front();
    q.pop_front();
    if (++nodes > budget) {
      res.nodes = nodes;
      return res;  // Unknown
    }
    for (size_t ri = 0; ri < rules.size() && !meet; ++ri) {
      std::vector<DiagramNF> succs;
      find_rewrites(sig, cur, rules[ri], succs);
      for (auto& nf : succs) {
        if (tree.count(nf)) continue;
        tree[nf] = {cur, static_cast<int>(ri)};
        q.push_back(nf);
        if (other.count(nf)) {
          meet = nf;
          meet_on_left_expand = expand_left;
          break;
        }
      }
    }
  }
  res.nodes = nodes;
  if (!meet) return res;
  (void)meet_on_left_expand;
  // reconstruct the chain start -> meet -> goal as trace steps
  std::vector<ProveStep> left_part;
  for (DiagramNF cur = *meet;;) {
    auto& node = treeL.at(cur);
    if (node.rule < 0) break;
    ProveStep st;
    st.rule = rules[node.rule].name;
    st.reversed = rules[node.rule].reversed;
    st.before = nf_to_term(sig, node.parent);
    st.after = nf_to_term(sig, cur);
    left_part.push_back(st);
    cur = node.parent;
  }
  std::reverse(left_part.begin(), left_part.end());
  std::vector<ProveStep> right_part;
  for (DiagramNF cur = *meet;;) {
    auto& node = treeR.at(cur);
    if (node.rule < 0) break;
    ProveStep st;  // reversed direction: parent <- cur means cur -> parent in the chain
    st.rule = rules[node.rule].name;
    st.reversed = !rules[node.rule].reversed;
    st.before = nf_to_term(sig, cur);
    st.after = nf_to_term(sig, node.parent);
    right_part.push_back(st);
    cur = node.parent;
  }
  res.trace = std::move(left_part);
  res.trace.insert(res.trace.end(), right_part.begin(), right_part.end());
  res.verdict = Verdict::Proved;
  return res;
}

bool replay_trace(const MonTheory& th, const TermPtr& t, const TermPtr& s,
                  const std::vector<ProveStep>& trace) {
  const auto& sig = th.sig;
  DiagramNF cur = diagram_nf(sig, t);
  for (auto& st : trace) {
    if (!(diagram_nf(sig, st.before) == cur)) return false;
    const MonEquation* eq = nullptr;
    for (auto& e : th.equations)
      if (e.name == st.rule) eq = &e;
    if (!eq) return false;
    RuleNF rule{eq->name, st.reversed, diagram_nf(sig, st.reversed ? eq->rhs : eq->lhs),
                diagram_nf(sig, st.reversed ? eq->lhs : eq->rhs)};
    std::vector<DiagramNF> succs;
    find_rewrites(sig, cur, rule, succs);
    DiagramNF next = diagram_nf(sig, st.after);
    bool found = false;
    for (auto& nf : succs)
      if (nf == next) found = true;
    if (!found) return false;
    cur = next;
  }
  return cur == diagram_nf(sig, s);
}

// --- signature morphisms, models ---------------------------------------------

TermPtr apply_signature_morphism(const SigMorphism& f, const TermPtr& t) {
  switch (t->kind) {
    case MonTerm::Kind::Gen:
      return t_gen(*f.dst, f.gen_map[t->gen]);
    case MonTerm::Kind::IdColour:
      return t_id(f.colour_map[t->colour]);
    case MonTerm::Kind::IdEps:
      return t_id_eps();
    case MonTerm::Kind::Comp:
      return t_comp(apply_signature_morphism(f, t->left), apply_signature_morphism(f, t->right));
    case MonTerm::Kind::Tensor:
      return t_tensor(apply_signature_morphism(f, t->left),
                      apply_signature_morphism(f, t->right));
  }
  throw SortError("bad term");
}

int interpret_obj(const ModelData& m, const Word& w) {
  int obj = m.target.unit;
  for (int c : w) obj = m.target.tensor_obj(obj, m.colour_obj[c]);
  return obj;
}

int interpret(const ModelData& m, const TermPtr& t) {
  const auto& c = *m.target.carrier;
  switch (t->kind) {
    case MonTerm::Kind::Gen:
      return m.gen_mor[t->gen];
    case MonTerm::Kind::IdColour:
      return c.id(m.colour_obj[t->colour]);
    case MonTerm::Kind::IdEps:
      return c.id(m.target.unit);
    case MonTerm::Kind::Comp:
      return c.compose(interpret(m, t->left), interpret(m, t->right));
    case MonTerm::Kind::Tensor:
      return m.target.tensor_mor(interpret(m, t->left), interpret(m, t->right));
  }
  throw SortError("bad term");
}

bool check_model(const MonTheory& th, const ModelData& m) {
  for (int g = 0; g < th.sig.num_gens(); ++g) {
    const auto& c = *m.target.carrier;
    int v = m.gen_mor[g];
    if (c.dom(v) != interpret_obj(m, th.sig.gens[g].arity) ||
        c.cod(v) != interpret_obj(m, th.sig.gens[g].coarity))
      return false;
  }
  for (auto& e : th.equations)
    if (interpret(m, e.lhs) != interpret(m, e.rhs)) return false;
  return true;
}

// --- enumeration and the structural oracle ------------------------------------

std::vector<TermPtr> enumerate_terms(const MonSignature& sig, int size_bound) {
  std::vector<std::vector<TermPtr>> by_size(size_bound + 1);
  std::set<std::string> seen;
  auto add = [&](int n, const TermPtr& t) {
    std::string key = term_str(sig, t);
    if (seen.insert(key).second) by_size[n].push_back(t);
  };
  if (size_bound >= 1) {
    add(1, t_id_eps());
    for (size_t c = 0; c < sig.colours.size(); ++c) add(1, t_id(static_cast<int>(c)));
    for (int g = 0; g < sig.num_gens(); ++g) add(1, t_gen(sig, g));
  }
  for (int n = 3; n <= size_bound; n += 2)
    for (int n1 = 1; n1 < n - 1; ++n1) {
      int n2 = n - 1 - n1;
      if (n2 < 1) continue;
      for (auto& a : by_size[n1])
        for (auto& b : by_size[n2]) {
          if (a->cod == b->dom) add(n, t_comp(a, b));
          add(n, t_tensor(a, b));
        }
    }
  std::vector<TermPtr> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {
bool gen_free(const TermPtr& t) {
  if (t->kind == MonTerm::Kind::Gen) return false;
  if (t->left && !gen_free(t->left)) return false;
  if (t->right && !gen_free(t->right)) return false;
  return true;
}
}  // namespace

StructuralOracle structural_closure_oracle(const MonSignature& sig, int size_bound) {
  StructuralOracle out;
  out.terms = enumerate_terms(sig, size_bound);
  const int N = static_cast<int>(out.terms.size());
  std::map<std::string, int> index;
  for (int i = 0; i < N; ++i) index[term_str(sig, out.terms[i])] = i;
  auto find_term = [&](const TermPtr& t) -> int {
    auto it = index.find(term_str(sig, t));
    return it == index.end() ? -1 : it->second;
  };
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto unite = [&](int a, int b) {
    if (a < 0 || b < 0) return;
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  // seeds: structural identities applied at the roots of enumerated terms
  std::map<std::pair<Word, Word>, int> genfree_rep;
  for (int i = 0; i < N; ++i) {
    const TermPtr& t = out.terms[i];
    if (gen_free(t)) {
      auto key = std::make_pair(t->dom, t->cod);
      if (t->dom == t->cod) {  // all identity-shaped terms of one sort agree
        auto it = genfree_rep.find(key);
        if (it == genfree_rep.end()) genfree_rep[key] = i;
        else unite(i, it->second);
      }
    }
    if (t->kind == MonTerm::Kind::Comp) {
      if (gen_free(t->left)) unite(i, find_term(t->right));
      if (gen_free(t->right)) unite(i, find_term(t->left));
      if (t->left->kind == MonTerm::Kind::Comp)
        unite(i, find_term(t_comp(t->left->left, t_comp(t->left->right, t->right))));
      if (t->right->kind == MonTerm::Kind::Comp)
        unite(i, find_term(t_comp(t_comp(t->left, t->right->left), t->right->right)));
      // interchange
      if (t->left->kind == MonTerm::Kind::Tensor && t->right->kind == MonTerm::Kind::Tensor) {
        const TermPtr &a = t->left->left, &b = t->left->right, &c = t->right->left,
                      &d = t->right->right;
        if (a->cod == c->dom && b->cod == d->dom)
          unite(i, find_term(t_tensor(t_comp(a, c), t_comp(b, d))));
      }
    }
    if (t->kind == MonTerm::Kind::Tensor) {
      if (t->left->kind == MonTerm::Kind::IdEps) unite(i, find_term(t->right));
      if (t->right->kind == MonTerm::Kind::IdEps) unite(i, find_term(t->left));
      if (t->left->kind == MonTerm::Kind::Tensor)
        unite(i, find_term(t_tensor(t->left->left, t_tensor(t->left->right, t->right))));
      if (t->right->kind == MonTerm::Kind::Tensor)
        unite(i, find_term(t_tensor(t_tensor(t->left, t->right->left), t->right->right)));
      if (t->left->kind == MonTerm::Kind::Comp && t->right->kind == MonTerm::Kind::Comp)
        unite(i, find_term(t_comp(t_tensor(t->left->left, t->right->left),
                                  t_tensor(t->left->right, t->right->right))));
    }
  }
  // congruence closure to fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::tuple<int, int, int>, int> sigs;  // (kind, cls(left), cls(right)) -> term
    for (int i = 0; i < N; ++i) {
      const TermPtr& t = out.terms[i];
      if (t->kind != MonTerm::Kind::Comp && t->kind != MonTerm::Kind::Tensor) continue;
      int l = find_term(t->left), r = find_term(t->right);
      if (l < 0 || r < 0) continue;
      auto key = std::make_tuple(static_cast<int>(t->kind), find(l), find(r));
      auto it = sigs.find(key);
      if (it == sigs.end()) {
        sigs[key] = i;
      } else if (find(i) != find(it->second)) {
        unite(i, it->second);
        changed = true;
      }
    }
  }
  out.cls.resize(N);
  for (int i = 0; i < N; ++i) out.cls[i] = find(i);
  return out;
}

HomEnumeration enumerate_hom(const MonTheory& th, const Word& a, const Word& b, int size_bound,
                             long merge_budget) {
  HomEnumeration out;
  const auto& sig = th.sig;
  // generate terms by size, deduplicating by normal form per sort as we go
  std::vector<std::map<std::pair<Word, Word>, std::map<DiagramNF, TermPtr>>> by_size(
      size_bound + 1);
  auto add = [&](int n, const TermPtr& t) {
    auto& cell = by_size[n][{t->dom, t->cod}];
    DiagramNF nf = diagram_nf(sig, t);
    // also skip if an earlier (smaller) size already holds this NF
    for (int m = 1; m < n; ++m) {
      auto it = by_size[m].find({t->dom, t->cod});
      if (it != by_size[m].end() && it->second.count(nf)) return;
    }
    cell.emplace(std::move(nf), t);
  };
  if (size_bound >= 1) {
    add(1, t_id_eps());
    for (size_t c = 0; c < sig.colours.size(); ++c) add(1, t_id(static_cast<int>(c)));
    for (int g = 0; g < sig.num_gens(); ++g) add(1, t_gen(sig, g));
  }
  for (int n = 3; n <= size_bound; n += 2)
    for (int n1 = 1; n1 < n - 1; ++n1) {
      int n2 = n - 1 - n1;
      if (n2 < 1) continue;
      for (auto& [s1, cell1] : by_size[n1])
        for (auto& [s2, cell2] : by_size[n2]) {
          for (auto& [nf1, t1] : cell1)
            for (auto& [nf2, t2] : cell2) {
              if (s1.second == s2.first) add(n, t_comp(t1, t2));
              add(n, t_tensor(t1, t2));
            }
        }
    }
  // collect the (a, b) cell
  std::vector<HomClass> raw;
  for (int n = 1; n <= size_bound; ++n) {
    auto it = by_size[n].find({a, b});
    if (it == by_size[n].end()) continue;
    for (auto& [nf, t] : it->second) raw.push_back({nf, t, 1});
  }
  // merge by the prover when equations are present
  if (!th.equations.empty() && raw.size() > 1) {
    out.complete_up_to_budget = false;
    std::vector<int> cls(raw.size());
    std::iota(cls.begin(), cls.end(), 0);
    std::function<int(int)> find = [&](int v) {
      while (cls[v] != v) v = cls[v] = cls[cls[v]];
      return v;
    };
    for (size_t i = 0; i < raw.size(); ++i)
      for (size_t j = i + 1; j < raw.size(); ++j) {
        if (find(i) == find(j)) continue;
        auto pr = prove_equal(th, raw[i].rep, raw[j].rep, merge_budget);
        if (pr.verdict == Verdict::Proved) {
          int ri = find(static_cast<int>(i)), rj = find(static_cast<int>(j));
          cls[std::max(ri, rj)] = std::min(ri, rj);
        }
      }
    for (size_t i = 0; i < raw.size(); ++i) {
      if (find(static_cast<int>(i)) == static_cast<int>(i)) {
        HomClass hc = raw[i];
        for (size_t j = 0; j < raw.size(); ++j)
          if (j != i && find(static_cast<int>(j)) == static_cast<int>(i)) hc.merged_from++;
        out.classes.push_back(hc);
      }
    }
  } else {
    out.classes = std::move(raw);
  }
  return out;
}

}  // namespace lmt

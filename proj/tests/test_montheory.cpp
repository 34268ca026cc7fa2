#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmt/montheory.hpp"

using namespace lmt;

namespace {

MonSignature two_colour_sig() {
  MonSignature sig;
  sig.colours = {"a", "b"};
  sig.gens.push_back({"f", {0}, {1}});     // f : a -> b
  sig.gens.push_back({"g", {1}, {0}});     // g : b -> a
  sig.gens.push_back({"p", {0, 1}, {0}});  // p : a b -> a
  return sig;
}

// one-object strict monoidal category from Z/2 (morphisms 1, g)
StrictMonStructure z2_category() {
  auto c = FinCategory::make("Z2", {"*"}, {{"one", 0, 0}, {"g", 0, 0}}, {0},
                             {{0, 1}, {1, 0}});
  REQUIRE(validate_category(*c).ok());
  StrictMonStructure m;
  m.carrier = c;
  m.unit = 0;
  m.obj_tensor = {{0}};
  m.mor_tensor = {{0, 1}, {1, 0}};
  REQUIRE(validate_monoidal(m).ok());
  return m;
}

}  // namespace

TEST_CASE("sorting") {
  auto sig = two_colour_sig();
  CHECK(t_id(0)->dom == Word{0});
  CHECK(t_id(0)->cod == Word{0});
  auto mon = theory_monoids();
  auto m = t_gen(mon.sig, "m");
  CHECK(m->dom == Word{0, 0});
  CHECK(m->cod == Word{0});
  auto t = t_tensor(t_id(0), t_gen(sig, "f"));
  CHECK(t->dom == Word{0, 0});
  CHECK(t->cod == Word{0, 1});
  CHECK_THROWS_AS(t_comp(t_gen(sig, "f"), t_gen(sig, "f")), SortError);
}

TEST_CASE("structural equality basics") {
  auto sig = two_colour_sig();
  auto f = t_gen(sig, "f"), g = t_gen(sig, "g");
  // (f (x) id) ; (id (x) f) == f (x) f
  auto lhs = t_comp(t_tensor(f, t_id(0)), t_tensor(t_id(1), f));
  auto rhs = t_tensor(f, f);
  CHECK(equal_structural(sig, lhs, rhs));
  // the other sliding order too
  auto lhs2 = t_comp(t_tensor(t_id(0), f), t_tensor(f, t_id(1)));
  CHECK(equal_structural(sig, lhs2, rhs));
  // id_{ab} == id_a (x) id_b
  CHECK(equal_structural(sig, t_id_word({0, 1}), t_tensor(t_id(0), t_id(1))));
  // distinct generators of equal sort differ
  MonSignature s2;
  s2.colours = {"a"};
  s2.gens.push_back({"s", {0}, {0}});
  s2.gens.push_back({"t", {0}, {0}});
  CHECK(!equal_structural(s2, t_gen(s2, "s"), t_gen(s2, "t")));
  CHECK_THROWS_AS(equal_structural(sig, f, g), SortError);
}

TEST_CASE("normal form and canonical term round trip") {
  auto sig = two_colour_sig();
  auto f = t_gen(sig, "f"), p = t_gen(sig, "p");
  auto t = t_comp(t_tensor(t_id(0), t_tensor(f, t_id(1))), t_tensor(p, t_id(1)));
  auto nf = diagram_nf(sig, t);
  auto back = nf_to_term(sig, nf);
  CHECK(equal_structural(sig, t, back));
  CHECK(diagram_nf(sig, back) == nf);
}

TEST_CASE("structural oracle agrees with the normal form") {
  auto sig = two_colour_sig();
  auto oracle = structural_closure_oracle(sig, 5);
  INFO("terms: ", oracle.terms.size());
  long pairs = 0, disagreements = 0;
  for (size_t i = 0; i < oracle.terms.size(); ++i)
    for (size_t j = i + 1; j < oracle.terms.size(); ++j) {
      const auto &t = oracle.terms[i], &s = oracle.terms[j];
      if (t->dom != s->dom || t->cod != s->cod) continue;
      ++pairs;
      bool by_nf = equal_structural(sig, t, s);
      bool by_oracle = oracle.cls[i] == oracle.cls[j];
      if (by_nf != by_oracle) {
        ++disagreements;
        if (disagreements < 5) {
          MESSAGE("disagree: ", term_str(sig, t), "  vs  ", term_str(sig, s), " nf=", by_nf,
                  " oracle=", by_oracle);
        }
      }
    }
  CHECK(pairs > 100);
  CHECK(disagreements == 0);
}

TEST_CASE("monoid theory prover") {
  auto th = theory_monoids();
  auto m = t_gen(th.sig, "m");
  auto ido = t_id(0);
  auto lhs = t_comp(t_tensor(m, ido), m);
  auto rhs = t_comp(t_tensor(ido, m), m);
  auto pr = prove_equal(th, lhs, rhs, 10000);
  REQUIRE(pr.verdict == Verdict::Proved);
  CHECK(replay_trace(th, lhs, rhs, pr.trace));

  // unit law: (u (x) id) ; m == id
  auto u = t_gen(th.sig, "u");
  auto pr2 = prove_equal(th, t_comp(t_tensor(u, ido), m), ido, 10000);
  REQUIRE(pr2.verdict == Verdict::Proved);
  CHECK(replay_trace(th, t_comp(t_tensor(u, ido), m), ido, pr2.trace));
}

TEST_CASE("catalan trees of m with 4 leaves all merge") {
  auto th = theory_monoids();
  auto m = t_gen(th.sig, "m");
  auto ido = t_id(0);
  // the five bracketings of m applied to 4 inputs
  std::vector<TermPtr> trees;
  trees.push_back(t_comp(t_tensor(t_comp(t_tensor(m, ido), m), ido), m));  // ((xy)z)w
  trees.push_back(t_comp(t_tensor(t_comp(t_tensor(ido, m), m), ido), m));  // (x(yz))w
  trees.push_back(t_comp(t_tensor(m, m), m));                              // (xy)(zw)
  trees.push_back(t_comp(t_tensor(ido, t_comp(t_tensor(m, ido), m)), m));  // x((yz)w)
  trees.push_back(t_comp(t_tensor(ido, t_comp(t_tensor(ido, m), m)), m));  // x(y(zw))
  for (auto& t : trees) {
    CHECK(t->dom == Word{0, 0, 0, 0});
    CHECK(t->cod == Word{0});
  }
  for (size_t i = 0; i < trees.size(); ++i)
    for (size_t j = i + 1; j < trees.size(); ++j) {
      auto pr = prove_equal(th, trees[i], trees[j], 10000);
      INFO("pair ", i, ",", j, " nodes=", pr.nodes);
      REQUIRE(pr.verdict == Verdict::Proved);
      CHECK(replay_trace(th, trees[i], trees[j], pr.trace));
    }
}

TEST_CASE("comonoid theory prover (dual)") {
  auto th = theory_comonoids();
  auto d = t_gen(th.sig, "d");
  auto ido = t_id(0);
  auto lhs = t_comp(d, t_tensor(d, ido));
  auto rhs = t_comp(d, t_tensor(ido, d));
  auto pr = prove_equal(th, lhs, rhs, 10000);
  REQUIRE(pr.verdict == Verdict::Proved);
  CHECK(replay_trace(th, lhs, rhs, pr.trace));
}

TEST_CASE("empty theory refutes distinct generators") {
  MonTheory th;
  th.sig.colours = {"a"};
  th.sig.gens.push_back({"s", {0}, {0}});
  th.sig.gens.push_back({"t", {0}, {0}});
  auto pr = prove_equal(th, t_gen(th.sig, "s"), t_gen(th.sig, "t"), 100);
  CHECK(pr.verdict == Verdict::Refuted);
}

TEST_CASE("symmetric theory") {
  auto th = theory_symmetric({"a"});
  CHECK(th.sig.gen("sw_a_a") >= 0);
  // involution proves sw;sw == id
  auto sw = t_gen(th.sig, "sw_a_a");
  auto pr = prove_equal(th, t_comp(sw, sw), t_id_word({0, 0}), 2000);
  CHECK(pr.verdict == Verdict::Proved);
}

TEST_CASE("uniform comonoid naturality instances prove sliding") {
  auto th = theory_uniform_comonoids({"a"});
  // naturality of e at d: d ; (e x e) == e  requires d;e_{aa} = e_a instance
  auto d = t_gen(th.sig, "d_a"), e = t_gen(th.sig, "e_a");
  auto lhs = t_comp(d, t_tensor(e, e));
  auto pr = prove_equal(th, lhs, e, 5000);
  CHECK(pr.verdict == Verdict::Proved);
}

TEST_CASE("model interpretation in Z/2") {
  auto th = theory_monoids();
  auto z2 = z2_category();
  ModelData md;
  md.target = z2;
  md.colour_obj = {0};
  md.gen_mor.resize(2);
  md.gen_mor[th.sig.gen("m")] = z2.carrier->morphism("one");  // fold via identity? no:
  // interpret m as the multiplication: on the one-object category the
  // multiplication morphism must satisfy the monoid equations; use "one".
  md.gen_mor[th.sig.gen("u")] = z2.carrier->morphism("one");
  CHECK(check_model(th, md));

  // broken unit interpretation fails
  ModelData bad = md;
  bad.gen_mor[th.sig.gen("u")] = z2.carrier->morphism("g");
  CHECK(!check_model(th, bad));

  // interpretation respects composition/tensor
  auto m = t_gen(th.sig, "m");
  auto t = t_comp(t_tensor(m, t_id(0)), m);
  CHECK(interpret(md, t) == z2.carrier->morphism("one"));
  CHECK(interpret(md, t_id_eps()) == z2.carrier->identity[0]);
}

TEST_CASE("signature morphisms") {
  auto sig = two_colour_sig();
  SigMorphism idm{&sig, &sig, {0, 1}, {0, 1, 2}};
  auto t = t_comp(t_gen(sig, "f"), t_gen(sig, "g"));
  auto t2 = apply_signature_morphism(idm, t);
  CHECK(equal_structural(sig, t, t2));

  // colour-merging morphism into a one-colour signature
  MonSignature one;
  one.colours = {"c"};
  one.gens.push_back({"f1", {0}, {0}});
  one.gens.push_back({"g1", {0}, {0}});
  one.gens.push_back({"p1", {0, 0}, {0}});
  SigMorphism merge{&sig, &one, {0, 0}, {0, 1, 2}};
  auto t3 = apply_signature_morphism(merge, t);
  CHECK(t3->dom == Word{0});
  CHECK(t3->cod == Word{0});
  // parallel pairs stay parallel
  auto s = t_tensor(t_id(0), t_id(1));
  auto s2 = apply_signature_morphism(merge, s);
  CHECK(s2->dom == s2->cod);
}

TEST_CASE("hom enumeration") {
  // empty theory with one generator s : a -> b
  MonTheory th;
  th.sig.colours = {"a", "b"};
  th.sig.gens.push_back({"s", {0}, {1}});
  auto he = enumerate_hom(th, {0}, {1}, 3);
  REQUIRE(he.classes.size() == 1);
  CHECK(he.complete_up_to_budget);

  // hom(eps, eps) = {id_eps}
  auto he2 = enumerate_hom(th, {}, {}, 3);
  REQUIRE(he2.classes.size() == 1);
  CHECK(he2.classes[0].nf.slices.empty());

  // theory of monoids: hom(ooo, o) at bound 6 collapses to one class
  auto mon = theory_monoids();
  auto he3 = enumerate_hom(mon, {0, 0, 0}, {0}, 6, 10000);
  CHECK(he3.classes.size() == 1);
  CHECK(!he3.complete_up_to_budget);
}

TEST_CASE("builtin theory shapes") {
  auto mon = theory_monoids();
  CHECK(mon.sig.colours.size() == 1);
  CHECK(mon.sig.num_gens() == 2);
  CHECK(mon.equations.size() == 3);

  auto im1 = theory_im(cat_terminal());
  CHECK(im1.sig.colours.size() == 1);
  // structure: sw, d, e, m, u + the morphism generator id_*
  CHECK(im1.sig.num_gens() == 6);
  bool has_id_eq = false;
  for (auto& e : im1.equations)
    if (e.name.rfind("id_gen_", 0) == 0) has_id_eq = true;
  CHECK(has_id_eq);

  auto sym = theory_symmetric({"a"});
  CHECK(sym.sig.num_gens() == 1);
  CHECK(!sym.equations.empty());
}

TEST_CASE("im theory of the arrow category contracts composites") {
  auto im2 = theory_im(cat_arrow());
  // generator u : 0 -> 1 composed with id generator contracts, e.g. id_0 ; u == u
  auto gid = t_gen(im2.sig, "id_0");
  auto gu = t_gen(im2.sig, "u");
  auto pr = prove_equal(im2, t_comp(gid, gu), gu, 4000);
  CHECK(pr.verdict == Verdict::Proved);
}

TEST_CASE("interpretation is a structural congruence on the Z/2 model") {
  auto th = theory_monoids();
  auto z2 = z2_category();
  ModelData md;
  md.target = z2;
  md.colour_obj = {0};
  md.gen_mor = {z2.carrier->morphism("g"), z2.carrier->morphism("one")};
  // not a model of the theory (m = g breaks associativity? check only
  // structural congruence: structurally equal terms interpret equally)
  auto terms = enumerate_terms(th.sig, 5);
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j) {
      const auto &t = terms[i], &s = terms[j];
      if (t->dom != s->dom || t->cod != s->cod) continue;
      if (equal_structural(th.sig, t, s)) CHECK(interpret(md, t) == interpret(md, s));
    }
}

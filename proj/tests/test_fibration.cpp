#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmt/fibration.hpp"

using namespace lmt;

namespace {

// projection CAT_2 x CAT_2 -> CAT_2
struct Pi1 {
  CatPtr prod;
  FinFunctor p;
};

Pi1 make_pi1() {
  auto two = cat_arrow();
  Pi1 out;
  out.prod = product_category(two, two);
  out.p = product_proj1(out.prod, two, two);
  return out;
}

// p_H : {a, c; H : a -> c} -> X3 with p(H) = h = f;g
FinFunctor make_pH() {
  auto x3 = cat_composable();
  auto y = FinCategory::make(
      "Y_H", {"a", "c"},
      {{"id_a", 0, 0}, {"id_c", 1, 1}, {"H", 0, 1}}, {0, 1},
      {{0, -1, 2}, {-1, 1, -1}, {-1, 2, -1}});
  REQUIRE(validate_category(*y).ok());
  FinFunctor p;
  p.src = y;
  p.dst = x3;
  p.omap = {x3->object("x"), x3->object("z")};
  p.mmap = {x3->identity[x3->object("x")], x3->identity[x3->object("z")], x3->morphism("h")};
  REQUIRE(validate_functor(p).ok());
  return p;
}

StrictOpIndexedCat make_idx1() {
  auto two = cat_arrow();
  StrictOpIndexedCat I;
  I.base = two;
  I.fibre = {cat_terminal(), cat_arrow()};
  I.reindex.resize(3);
  I.reindex[two->identity[0]] = identity_functor(cat_terminal());
  I.reindex[two->identity[1]] = identity_functor(cat_arrow());
  FinFunctor pick0;
  pick0.src = cat_terminal();
  pick0.dst = cat_arrow();
  pick0.omap = {0};
  pick0.mmap = {cat_arrow()->identity[0]};
  I.reindex[two->morphism("u")] = pick0;
  REQUIRE(validate_opindexed(I).ok());
  return I;
}

}  // namespace

TEST_CASE("opcartesian maps") {
  auto pi1 = make_pi1();
  auto two = cat_arrow();
  int F = pi1.prod->morphism("(u,id_0)");
  REQUIRE(F >= 0);
  CHECK(is_opcartesian(pi1.p, F));
  CHECK(is_weakly_opcartesian(pi1.p, F));
  for (int x = 0; x < pi1.prod->num_objects(); ++x)
    CHECK(is_opcartesian(pi1.p, pi1.prod->identity[x]));

  // every opcartesian map is weakly opcartesian
  for (int m = 0; m < pi1.prod->num_morphisms(); ++m)
    if (is_opcartesian(pi1.p, m)) CHECK(is_weakly_opcartesian(pi1.p, m));

  auto pH = make_pH();
  int H = pH.src->morphism("H");
  CHECK(is_opcartesian(pH, H));
}

TEST_CASE("opfibration detection with witnesses") {
  auto pi1 = make_pi1();
  CHECK(is_opfibration(pi1.p).ok);
  CHECK(is_preopfibration(pi1.p).ok);
  CHECK(is_fibration(pi1.p).ok);

  auto pH = make_pH();
  auto w = is_opfibration(pH);
  CHECK(!w.ok);
  CHECK(pH.src->objects[w.obj] == "a");
  CHECK(pH.dst->morphisms[w.mor].name == "f");
  CHECK(!is_preopfibration(pH).ok);

  auto gr = grothendieck(make_idx1());
  CHECK(is_opfibration(gr.proj).ok);
}

TEST_CASE("cleavage choice and split laws") {
  auto pi1 = make_pi1();
  auto cs = choose_cleavage(pi1.p, true);
  REQUIRE(cs.cleavage.has_value());
  CHECK(cs.cleavage->split);
  CHECK(cleavage_is_split(pi1.p, *cs.cleavage));
  // lifts have the shape (f, id)
  auto two = cat_arrow();
  int a00 = pi1.prod->object("(0,0)");
  int lift = cs.cleavage->lift[a00][two->morphism("u")];
  CHECK(pi1.prod->morphisms[lift].name == "(u,id_0)");

  // trivial cleavage on the identity opfibration
  auto idf = identity_functor(cat_terminal());
  auto cid = choose_cleavage(idf, true);
  REQUIRE(cid.cleavage.has_value());

  auto gr = grothendieck(make_idx1());
  auto cgr = choose_cleavage(gr.proj, true);
  REQUIRE(cgr.cleavage.has_value());
  CHECK(cgr.cleavage->split);
}

TEST_CASE("reindexing functors") {
  auto pi1 = make_pi1();
  auto two = cat_arrow();
  auto c = *choose_cleavage(pi1.p, true).cleavage;
  auto f0 = extract_fibre(pi1.p, 0);
  auto f1 = extract_fibre(pi1.p, 1);
  CHECK(f0.cat->num_objects() == 2);
  CHECK(f0.cat->num_morphisms() == 3);
  auto r = reindexing_functor(pi1.p, c, two->morphism("u"), f0, f1);
  CHECK(validate_functor(r).ok());
  // fibres isomorphic, reindexing is the evident identity-shaped functor
  for (int i = 0; i < f0.cat->num_objects(); ++i)
    CHECK(f1.cat->objects[r.omap[i]].substr(3) == f0.cat->objects[i].substr(3));

  auto rid = reindexing_functor(pi1.p, c, two->identity[0], f0, f0);
  CHECK(functors_equal(rid, identity_functor(f0.cat)));
}

TEST_CASE("to_opindexed and grothendieck round trips") {
  auto idx1 = make_idx1();
  auto gr = grothendieck(idx1);
  CHECK(gr.total->num_objects() == 3);
  CHECK(gr.total->num_morphisms() == 6);
  CHECK(validate_functor(gr.proj).ok());

  auto c = *choose_cleavage(gr.proj, true).cleavage;
  auto back = to_opindexed(gr.proj, c);
  CHECK(validate_opindexed(back).ok());
  // fibre sizes recovered
  CHECK(back.fibre[0]->num_objects() == 1);
  CHECK(back.fibre[1]->num_objects() == 2);

  CHECK(roundtrip_equivalence_check(gr.proj, c));

  auto pi1 = make_pi1();
  auto cpi = *choose_cleavage(pi1.p, true).cleavage;
  auto I = to_opindexed(pi1.p, cpi);
  for (auto& f : I.fibre) CHECK(f->num_objects() == 2);
  CHECK(roundtrip_equivalence_check(pi1.p, cpi));

  auto idf = identity_functor(cat_composable());
  auto cidf = *choose_cleavage(idf, true).cleavage;
  CHECK(roundtrip_equivalence_check(idf, cidf));

  // constant CAT_1 fibres over any base: total iso to the base
  {
    auto x3 = cat_composable();
    StrictOpIndexedCat I1;
    I1.base = x3;
    for (int i = 0; i < 3; ++i) I1.fibre.push_back(cat_terminal());
    for (int f = 0; f < x3->num_morphisms(); ++f)
      I1.reindex.push_back(identity_functor(cat_terminal()));
    auto g1 = grothendieck(I1);
    CHECK(g1.total->num_objects() == x3->num_objects());
    CHECK(g1.total->num_morphisms() == x3->num_morphisms());
  }
  // constant fibre F over CAT_1: total iso to F
  {
    StrictOpIndexedCat I2;
    I2.base = cat_terminal();
    I2.fibre.push_back(cat_parallel());
    I2.reindex.push_back(identity_functor(cat_parallel()));
    auto g2 = grothendieck(I2);
    CHECK(g2.total->num_objects() == 2);
    CHECK(g2.total->num_morphisms() == 4);
  }
}

TEST_CASE("morphisms of opfibrations") {
  auto pi1 = make_pi1();
  OpfibMorphism idm{identity_functor(pi1.prod), identity_functor(pi1.p.dst)};
  CHECK(check_morphism_of_opfibrations(idm, pi1.p, pi1.p));

  // swap-factors automorphism over the identity breaks the square
  auto two = cat_arrow();
  FinFunctor swap;
  swap.src = swap.dst = pi1.prod;
  swap.omap.resize(4);
  swap.mmap.resize(9);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) swap.omap[i * 2 + j] = j * 2 + i;
  for (int f = 0; f < 3; ++f)
    for (int g = 0; g < 3; ++g) swap.mmap[f * 3 + g] = g * 3 + f;
  REQUIRE(validate_functor(swap).ok());
  OpfibMorphism sm{swap, identity_functor(two)};
  CHECK(!check_morphism_of_opfibrations(sm, pi1.p, pi1.p));
}

TEST_CASE("pullbacks of opfibrations") {
  auto pi1 = make_pi1();
  auto pb = pullback_opfibration(pi1.p, identity_functor(pi1.p.dst));
  CHECK(validate_category(*pb.total).ok());
  CHECK(is_opfibration(pb.q).ok);
  CHECK(pb.total->num_objects() == pi1.prod->num_objects());

  auto gr = grothendieck(make_idx1());
  auto two = cat_arrow();
  FinFunctor pick1;
  pick1.src = cat_terminal();
  pick1.dst = two;
  pick1.omap = {1};
  pick1.mmap = {two->identity[1]};
  auto pb1 = pullback_opfibration(gr.proj, pick1);
  CHECK(is_opfibration(pb1.q).ok);
  CHECK(pb1.total->num_objects() == 2);  // fibre CAT_2 over CAT_1

  FinFunctor pick0 = pick1;
  pick0.omap = {0};
  pick0.mmap = {two->identity[0]};
  auto pb0 = pullback_opfibration(gr.proj, pick0);
  CHECK(pb0.total->num_objects() == 1);  // singleton fibre

  // pullback along a base functor induces a morphism of opfibrations
  OpfibMorphism m{pb1.to_total, pick1};
  CHECK(check_morphism_of_opfibrations(m, pb1.q, gr.proj));
}

TEST_CASE("composition of opfibrations") {
  auto pi1 = make_pi1();
  // ! : CAT_2 -> CAT_1
  FinFunctor bang;
  bang.src = cat_arrow();
  bang.dst = cat_terminal();
  bang.omap = {0, 0};
  bang.mmap = {0, 0, 0};
  CHECK(is_opfibration(bang).ok);
  auto comp = compose_opfibrations(pi1.p, bang);
  CHECK(is_opfibration(comp).ok);

  auto idc = identity_functor(pi1.p.dst);
  auto same = compose_opfibrations(pi1.p, idc);
  CHECK(functors_equal(same, pi1.p));

  // two stacked projections from a triple product
  auto two = cat_arrow();
  auto triple = product_category(pi1.prod, two);
  auto q = product_proj1(triple, pi1.prod, two);
  auto stacked = compose_opfibrations(q, pi1.p);
  CHECK(is_opfibration(stacked).ok);
}

TEST_CASE("retrofunctors") {
  auto pi1 = make_pi1();
  auto c = *choose_cleavage(pi1.p, true).cleavage;
  auto r = cleavage_as_retrofunctor(pi1.p, c);
  CHECK(check_retrofunctor(r));

  // phi(a, id) != id corruption
  auto bad = r;
  int a00 = pi1.prod->object("(0,0)");
  bad.phi[a00][pi1.p.dst->identity[0]] = pi1.prod->morphism("(u,id_0)");
  CHECK(!check_retrofunctor(bad));

  // identity retrofunctor on CAT_1
  RetrofunctorData triv;
  triv.total = triv.base = cat_terminal();
  triv.p0 = {0};
  triv.phi = {{0}};
  CHECK(check_retrofunctor(triv));
}

TEST_CASE("weakly opcartesian implied by opcartesian across corpus") {
  auto pH = make_pH();
  for (int m = 0; m < pH.src->num_morphisms(); ++m)
    if (is_opcartesian(pH, m)) CHECK(is_weakly_opcartesian(pH, m));
  auto gr = grothendieck(make_idx1());
  for (int m = 0; m < gr.total->num_morphisms(); ++m)
    if (is_opcartesian(gr.proj, m)) CHECK(is_weakly_opcartesian(gr.proj, m));
}

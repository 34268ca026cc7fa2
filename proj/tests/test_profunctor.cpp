#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmt/fincat.hpp"
#include "lmt/profunctor.hpp"

using namespace lmt;

namespace {
FinFunctor pick_object(const CatPtr& dst, int obj) {
  FinFunctor F;
  F.src = cat_terminal();
  F.dst = dst;
  F.omap = {obj};
  F.mmap = {dst->identity[obj]};
  return F;
}
}  // namespace

TEST_CASE("identity profunctor") {
  auto one = cat_terminal();
  auto id1 = identity_prof(one);
  CHECK(id1.num_elems() == 1);
  CHECK(validate_profunctor(id1).ok());

  auto two = cat_arrow();
  auto id2 = identity_prof(two);
  CHECK(validate_profunctor(id2).ok());
  CHECK(id2.elems_at(two->object("0"), two->object("1")).size() == 1);

  auto par = cat_parallel();
  auto idp = identity_prof(par);
  CHECK(idp.elems_at(par->object("0"), par->object("1")).size() == 2);
}

TEST_CASE("hom compose hom collapses to hom") {
  auto two = cat_arrow();
  auto id2 = identity_prof(two);
  auto comp = compose_prof(id2, id2);
  CHECK(validate_profunctor(comp.prof).ok());
  // at (0,1) raw pairs (id0,u),(u,id1) collapse to one class
  CHECK(comp.prof.elems_at(0, 1).size() == 1);
  int pe_id0 = 0;  // identity_prof elements are indexed by morphisms
  int u = two->morphism("u");
  CHECK(comp.class_of(two->identity[0], u) == comp.class_of(u, two->identity[1]));
  (void)pe_id0;

  // canonical iso e |-> class of (e, id)
  for (auto c : {cat_terminal(), cat_arrow(), cat_parallel(), cat_01(), cat_composable()}) {
    auto idc = identity_prof(c);
    auto cc = compose_prof(idc, idc);
    ProfNat t;
    t.P = idc;
    t.Q = cc.prof;
    t.map.resize(idc.num_elems());
    for (int e = 0; e < idc.num_elems(); ++e)
      t.map[e] = cc.class_of(e, c->identity[idc.elem_cod[e]]);
    CHECK(is_prof_iso(t));
  }
}

TEST_CASE("compose_prof associativity up to canonical iso") {
  for (auto c : {cat_arrow(), cat_parallel(), cat_composable(), cat_iso()}) {
    auto idc = identity_prof(c);
    auto ab = compose_prof(idc, idc);
    auto left = compose_prof(ab.prof, idc);
    auto bc = compose_prof(idc, idc);
    auto right = compose_prof(idc, bc.prof);
    auto iso = find_prof_iso(left.prof, right.prof);
    CHECK(iso.has_value());
  }
}

TEST_CASE("refine and coarsen embeddings") {
  auto one = cat_terminal();
  auto two = cat_arrow();
  auto F0 = pick_object(two, two->object("0"));

  auto re = refine_embed(F0);
  CHECK(validate_profunctor(re).ok());
  CHECK(re.elems_at(0, two->object("1")).size() == 1);  // {u}
  CHECK(re.elems_at(0, two->object("0")).size() == 1);  // {id0}

  auto co = coarsen_embed(F0);
  CHECK(validate_profunctor(co).ok());
  CHECK(co.elems_at(two->object("1"), 0).empty());
  CHECK(co.elems_at(two->object("0"), 0).size() == 1);

  // identity functor embeds as the identity profunctor
  auto rid = refine_embed(identity_functor(two));
  auto iso = find_prof_iso(rid, identity_prof(two));
  CHECK(iso.has_value());
}

TEST_CASE("refine is functorial up to iso") {
  auto two = cat_arrow();
  auto one = cat_terminal();
  auto F = pick_object(two, 0);
  FinFunctor G;  // CAT_2 -> CAT_1
  G.src = two;
  G.dst = one;
  G.omap = {0, 0};
  G.mmap = {0, 0, 0};
  auto FG = compose_functors(F, G);
  auto lhs = refine_embed(FG);
  auto rhs = compose_prof(refine_embed(F), refine_embed(G));
  auto iso = find_prof_iso(lhs, rhs.prof);
  CHECK(iso.has_value());
}

TEST_CASE("adjunction unit and counit") {
  auto two = cat_arrow();
  auto F0 = pick_object(two, 0);
  auto unit = adjunction_unit(F0);
  CHECK(check_prof_nat(unit));
  auto counit = adjunction_counit(F0);
  CHECK(check_prof_nat(counit));
  // unit at (*,*) sends id to the class of (id0, id0)
  REQUIRE(unit.P.num_elems() == 1);
  int cls = unit.map[0];
  CHECK(counit.Q.num_elems() == 3);
  // counit of that class is id0 -- but visible only through the composite at
  // (0,0); check the refine-side triangle instead via verify_adjunction below.
  CHECK(cls >= 0);
}

TEST_CASE("verify_adjunction on small functors") {
  auto one = cat_terminal();
  auto two = cat_arrow();
  auto par = cat_parallel();
  auto x3 = cat_composable();

  std::vector<FinFunctor> corpus;
  corpus.push_back(identity_functor(two));
  corpus.push_back(identity_functor(par));
  corpus.push_back(identity_functor(x3));
  corpus.push_back(pick_object(two, 0));
  corpus.push_back(pick_object(two, 1));
  corpus.push_back(pick_object(x3, 0));
  {
    FinFunctor c;  // constant CAT_PAR -> CAT_1
    c.src = par;
    c.dst = one;
    c.omap = {0, 0};
    c.mmap = {0, 0, 0, 0};
    corpus.push_back(c);
  }
  {
    FinFunctor c;  // CAT_2 -> X3 sending u to f
    auto x = cat_composable();
    c.src = two;
    c.dst = x;
    c.omap = {0, 1};
    c.mmap = {x->identity[0], x->identity[1], x->morphism("f")};
    corpus.push_back(c);
  }
  for (auto& F : corpus) {
    REQUIRE(validate_functor(F).ok());
    auto chk = verify_adjunction(F);
    INFO("functor into ", F.dst->name);
    CHECK(chk.ok());
  }
}

TEST_CASE("check_prof_nat rejects mismatches") {
  auto par = cat_parallel();
  auto idp = identity_prof(par);
  ProfNat t;
  t.P = idp;
  t.Q = idp;
  t.map.resize(idp.num_elems());
  for (int i = 0; i < idp.num_elems(); ++i) t.map[i] = i;
  CHECK(check_prof_nat(t));
  // swap u and v: breaks naturality? u,v are not related by actions from
  // id-only cells, so swapping them is still natural; corrupt with a
  // type-mismatching map instead.
  t.map[par->morphism("u")] = par->identity[0];
  CHECK(!check_prof_nat(t));
}

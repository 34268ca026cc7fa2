#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmt/fincat.hpp"

using namespace lmt;

TEST_CASE("stock categories are valid") {
  for (auto c : {cat_terminal(), cat_arrow(), cat_parallel(), cat_01(), cat_composable(),
                 cat_iso()}) {
    auto r = validate_category(*c);
    INFO(c->name, ": ", r.str());
    CHECK(r.ok());
  }
}

TEST_CASE("corrupted unit law is reported") {
  auto c2 = cat_arrow();
  FinCategory bad = *c2;
  int u = bad.morphism("u");
  int id1 = bad.identity[bad.object("1")];
  bad.comp[u][id1] = bad.identity[bad.object("0")];
  auto r = validate_category(bad);
  CHECK(!r.ok());
  bool unit_mentioned = false;
  for (auto& v : r.violations)
    if (v.find("unitality") != std::string::npos || v.find("typing") != std::string::npos)
      unit_mentioned = true;
  CHECK(unit_mentioned);
}

TEST_CASE("functor validation") {
  auto c2 = cat_arrow();
  CHECK(validate_functor(identity_functor(c2)).ok());

  // unique functor CAT_2 -> CAT_1
  FinFunctor bang;
  bang.src = c2;
  bang.dst = cat_terminal();
  bang.omap = {0, 0};
  bang.mmap = {0, 0, 0};
  CHECK(validate_functor(bang).ok());

  // swapping 0,1 while keeping u fixed breaks dom/cod
  FinFunctor bad = identity_functor(c2);
  bad.omap = {1, 0};
  auto r = validate_functor(bad);
  CHECK(!r.ok());
}

TEST_CASE("product categories") {
  auto one = cat_terminal();
  auto two = cat_arrow();
  auto p = product_category(one, two);
  CHECK(validate_category(*p).ok());
  CHECK(p->num_objects() == 2);
  CHECK(p->num_morphisms() == 3);

  auto p22 = product_category(two, two);
  CHECK(validate_category(*p22).ok());
  CHECK(p22->num_objects() == 4);
  CHECK(p22->num_morphisms() == 9);

  auto p11 = product_category(one, one);
  CHECK(p11->num_objects() == 1);
  CHECK(p11->num_morphisms() == 1);

  CHECK(validate_functor(product_proj1(p22, two, two)).ok());
  CHECK(validate_functor(product_proj2(p22, two, two)).ok());

  // pairing of the projections is the identity
  auto pr1 = product_proj1(p22, two, two);
  auto pr2 = product_proj2(p22, two, two);
  auto paired = pair_into_product(p22, pr1, pr2);
  CHECK(functors_equal(paired, identity_functor(p22)));
}

TEST_CASE("opposite is involutive") {
  auto c = cat_composable();
  auto oo = opposite(opposite(c));
  CHECK(validate_category(*opposite(c)).ok());
  CHECK(oo->objects == c->objects);
  CHECK(oo->comp == c->comp);
  auto par = opposite(cat_parallel());
  int u = par->morphism("u");
  CHECK(par->dom(u) == par->object("1"));
  CHECK(par->cod(u) == par->object("0"));
  CHECK(opposite(cat_terminal())->num_morphisms() == 1);
}

TEST_CASE("cartesian structure search") {
  auto c01 = cat_01();
  auto found = find_cartesian_structure(c01);
  REQUIRE(found.structure.has_value());
  auto& cs = *found.structure;
  CHECK(c01->objects[cs.terminal] == "1");
  int e = c01->object("e"), one = c01->object("1");
  CHECK(cs.prod_obj[e][e] == e);
  CHECK(cs.prod_obj[e][one] == e);
  CHECK(cs.prod_obj[one][one] == one);
  CHECK(check_cartesian_structure(cs).ok());

  auto par = find_cartesian_structure(cat_parallel());
  CHECK(!par.structure.has_value());
  CHECK(!par.witness.empty());

  auto t = find_cartesian_structure(cat_terminal());
  REQUIRE(t.structure.has_value());
  CHECK(t.structure->prod_obj[0][0] == 0);
  CHECK(check_cartesian_structure(*t.structure).ok());
}

TEST_CASE("pairing is computed and unique") {
  auto c01 = cat_01();
  auto cs = *find_cartesian_structure(c01).structure;
  int e = c01->object("e");
  int bang = c01->morphism("!");
  int ide = c01->identity[e];
  // (id_e, !) : e -> e x 1 = e
  int h = cs.pairing(ide, bang);
  CHECK(h == ide);
}

TEST_CASE("naturality checking") {
  auto c2 = cat_arrow();
  NatTransf t;
  t.F = identity_functor(c2);
  t.G = identity_functor(c2);
  t.component = {c2->identity[0], c2->identity[1]};
  CHECK(is_natural(t));

  // into CAT_PAR: components that break the square
  auto par = cat_parallel();
  FinFunctor Fu, Fv;
  Fu.src = Fv.src = cat_arrow();
  Fu.dst = Fv.dst = par;
  Fu.omap = {0, 1};
  Fu.mmap = {par->identity[0], par->identity[1], par->morphism("u")};
  Fv.omap = {0, 1};
  Fv.mmap = {par->identity[0], par->identity[1], par->morphism("v")};
  CHECK(validate_functor(Fu).ok());
  CHECK(validate_functor(Fv).ok());
  NatTransf bad;
  bad.F = Fu;
  bad.G = Fv;
  bad.component = {par->identity[0], par->identity[1]};
  CHECK(!is_natural(bad));
}

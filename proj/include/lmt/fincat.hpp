#pragma once

// Finite categories given by explicit composition tables, functors between
// them, natural transformations, and detected monoidal / cartesian structure.
// Everything downstream validates properties by exhaustive enumeration over
// this data, so all types here are plain immutable value aggregates.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lmt {

struct FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

struct Morphism {
  std::string name;
  int dom = -1;
  int cod = -1;
};

// A finite category: objects and morphisms are indexed densely; `comp[f][g]`
// holds the diagrammatic composite f;g, or -1 when cod(f) != dom(g).
struct FinCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identity;            // object -> morphism index
  std::vector<std::vector<int>> comp;   // [f][g] -> f;g

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }

  int object(const std::string& n) const;      // -1 if absent
  int morphism(const std::string& n) const;    // -1 if absent
  int dom(int f) const { return morphisms[f].dom; }
  int cod(int f) const { return morphisms[f].cod; }
  int id(int x) const { return identity[x]; }
  bool is_identity(int f) const { return identity[morphisms[f].dom] == f; }
  int compose(int f, int g) const { return comp[f][g]; }

  // morphisms x -> y, in index order
  std::vector<int> hom(int x, int y) const;
  std::vector<int> morphisms_from(int x) const;

  static CatPtr make(std::string name, std::vector<std::string> objects,
                     std::vector<Morphism> morphisms, std::vector<int> identity,
                     std::vector<std::vector<int>> comp);
};

struct FinFunctor {
  CatPtr src;
  CatPtr dst;
  std::vector<int> omap;  // object index -> object index
  std::vector<int> mmap;  // morphism index -> morphism index

  int on_obj(int x) const { return omap[x]; }
  int on_mor(int f) const { return mmap[f]; }
};

struct NatTransf {
  FinFunctor F, G;                // parallel functors
  std::vector<int> component;     // src object -> dst morphism
};

// Violations are human-readable lines; empty report means valid.
struct Report {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Three-valued outcome of budgeted equality searches.
enum class Verdict { Proved, Unknown, Refuted };

Report validate_category(const FinCategory& c);
Report validate_functor(const FinFunctor& f);

bool is_natural(const NatTransf& t);

FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose_functors(const FinFunctor& f, const FinFunctor& g);
bool functors_equal(const FinFunctor& f, const FinFunctor& g);

// Product category a x b; `proj1`/`proj2` recover the projections.
CatPtr product_category(const CatPtr& a, const CatPtr& b);
FinFunctor product_proj1(const CatPtr& prod, const CatPtr& a, const CatPtr& b);
FinFunctor product_proj2(const CatPtr& prod, const CatPtr& a, const CatPtr& b);
// Pairing of functors h: X -> a, k: X -> b into the product.
FinFunctor pair_into_product(const CatPtr& prod, const FinFunctor& h, const FinFunctor& k);

CatPtr opposite(const CatPtr& c);
FinFunctor opposite_functor(const FinFunctor& f);  // between the opposites

struct StrictMonStructure {
  CatPtr carrier;
  int unit = -1;                             // unit object
  std::vector<std::vector<int>> obj_tensor;  // [x][y] -> x (x) y
  std::vector<std::vector<int>> mor_tensor;  // [f][g] -> f (x) g

  int tensor_obj(int x, int y) const { return obj_tensor[x][y]; }
  int tensor_mor(int f, int g) const { return mor_tensor[f][g]; }
};

Report validate_monoidal(const StrictMonStructure& m);

struct SymmetricStructure {
  StrictMonStructure mon;
  std::vector<std::vector<int>> swap_mor;  // [x][y] -> symmetry x(x)y -> y(x)x
};

Report validate_symmetric(const SymmetricStructure& s);

struct CartesianStructure {
  CatPtr carrier;
  int terminal = -1;
  std::vector<int> bang;                      // object -> unique map to terminal
  std::vector<std::vector<int>> prod_obj;     // [a][b] -> chosen product object
  std::vector<std::vector<int>> proj1;        // [a][b] -> projection to a
  std::vector<std::vector<int>> proj2;        // [a][b] -> projection to b

  // the unique (f,g) : x -> a*b with (f,g);proj1 = f, (f,g);proj2 = g
  int pairing(int f, int g) const;
};

// Searches for a terminal object and all binary products, chosen as the
// lexicographically smallest valid candidates. On failure `witness` names the
// obstruction.
struct CartesianSearch {
  std::optional<CartesianStructure> structure;
  std::string witness;
};
CartesianSearch find_cartesian_structure(const CatPtr& c);

// Re-checks the universal property of a claimed cartesian structure by full
// cone enumeration; independent of how the structure was found.
Report check_cartesian_structure(const CartesianStructure& cs);

// Stock categories used across the whole test suite.
CatPtr cat_terminal();   // single object *, identity only
CatPtr cat_arrow();      // objects 0,1; u : 0 -> 1
CatPtr cat_parallel();   // objects 0,1; u,v : 0 -> 1
CatPtr cat_01();         // objects e,1; ! : e -> 1  (posetal, has products)
CatPtr cat_composable(); // objects x,y,z; f: x->y, g: y->z, h = f;g
CatPtr cat_iso();        // objects 0,1; u: 0->1, v: 1->0, inverse to each other

}  // namespace lmt

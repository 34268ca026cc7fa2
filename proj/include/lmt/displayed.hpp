#pragma once

// Displayed categories (normal lax functors into profunctors) built from
// functors, their collages, the finite-scale Benabou round trip, path
// components of composable lift pairs, and the factorisation-lifting /
// refine-factoring characterisations.

#include <map>
#include <optional>

#include "lmt/fibration.hpp"
#include "lmt/profunctor.hpp"

namespace lmt {

struct DisplayedCat {
  CatPtr base;
  std::vector<FibreExtract> fib;     // per base object
  std::vector<FinProfunctor> over;   // per base morphism
  struct Laxator {
    ProfComposite comp;              // over(f) ; over(g)
    std::vector<int> to;             // class -> element of over(f;g)
  };
  std::map<std::pair<int, int>, Laxator> lax;  // per composable (f, g)
  // provenance when built from a functor: over-element -> total morphism
  std::vector<std::vector<int>> over_orig;
};

DisplayedCat displayed_from_functor(const FinFunctor& p);

// normality, laxator naturality, lax associativity and unitality
Report validate_displayed(const DisplayedCat& d);

struct Collage {
  CatPtr total;
  FinFunctor proj;
  std::vector<std::pair<int, int>> obj_pair;  // (base object, fibre object)
  std::vector<std::pair<int, int>> mor_pair;  // (base morphism, over element)
};

Collage collage(const DisplayedCat& d);

// explicit fibred isomorphism between p and collage(displayed_from_functor(p))
bool benabou_roundtrip(const FinFunctor& p);

// Composable lift pairs (F, b, G) over (f, g) from a to c, partitioned by the
// zigzag relation generated by commuting triangles.
struct PathComponents {
  std::vector<std::tuple<int, int, int>> objects;  // (F, b, G) as total indices
  std::vector<int> component;                      // per object
  int num_components = 0;
};

PathComponents path_components(const FinFunctor& p, int f, int g, int a, int c);

struct FactLiftWitness {
  bool ok = true;
  int mor = -1;        // total morphism H
  int f = -1, g = -1;  // base factorisation
};

FactLiftWitness is_factorisation_lifting(const FinFunctor& p);

bool laxator_is_iso(const DisplayedCat& d, int f, int g);

// Split factorisation liftings: a deterministic choice of lifts, and the
// split laws (trivial factorisations chosen trivially; choices compose).
struct FactorisationCleavage {
  // (H, f, g) -> chosen (F, G)
  std::map<std::tuple<int, int, int>, std::pair<int, int>> lift;
};
std::optional<FactorisationCleavage> choose_factorisation_cleavage(const FinFunctor& p);
bool factorisation_cleavage_is_split(const FinFunctor& p, const FactorisationCleavage& c);

// Attempts, for each base morphism, a fibre functor F and a natural iso
// over(f) ~ refine(F); succeeds exactly for preopfibrations, and the lifts are
// recovered as the iso-preimages of identities.
struct RefineFactoring {
  bool ok = false;
  int bad_f = -1;
  std::vector<FinFunctor> fibre_functor;   // per base morphism
  std::vector<ProfNat> iso;                // over(f) -> refine(fibre_functor[f])
  std::vector<std::vector<int>> lift;      // [total object][base morphism] -> total morphism
};

RefineFactoring factors_through_refine(const FinFunctor& p);
RefineFactoring factors_through_coarsen(const FinFunctor& p);  // via opposite()

// all functors between two small categories, in a deterministic order
std::vector<FinFunctor> all_functors(const CatPtr& a, const CatPtr& b);

}  // namespace lmt

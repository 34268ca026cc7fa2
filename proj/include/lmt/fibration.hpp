#pragma once

// Brute-force verification of (weakly) opcartesian maps, (pre/op)fibrations,
// cleavages and reindexing, retrofunctors, the Grothendieck construction and
// the split-case round trip with strict opindexed categories.
//
// Convention: a functor-over is a FinFunctor p with src = total category Y and
// dst = base category X. Fibration-side checks are obtained by dualising
// through opposite(), never by duplicated code.

#include <optional>

#include "lmt/fincat.hpp"

namespace lmt {

bool is_opcartesian(const FinFunctor& p, int F);
bool is_weakly_opcartesian(const FinFunctor& p, int F);
bool is_cartesian(const FinFunctor& p, int F);

struct LiftWitness {
  bool ok = true;
  int obj = -1;  // total object of the unliftable pair
  int mor = -1;  // base morphism of the unliftable pair
};

LiftWitness is_opfibration(const FinFunctor& p);
LiftWitness is_preopfibration(const FinFunctor& p);
LiftWitness is_fibration(const FinFunctor& p);
LiftWitness is_prefibration(const FinFunctor& p);

// Chosen opcartesian lifts: lift[a][f] for opliftable pairs (a, f : pa -> y),
// -1 elsewhere.
struct Cleavage {
  std::vector<std::vector<int>> lift;
  bool split = false;
};

struct CleavageSearch {
  std::optional<Cleavage> cleavage;
  // violating composable pair when a split cleavage was required but absent
  int bad_f = -1, bad_g = -1;
};

CleavageSearch choose_cleavage(const FinFunctor& p, bool split_required);
bool cleavage_is_split(const FinFunctor& p, const Cleavage& c);

// The fibre of a base object, extracted as a category of its own.
struct FibreExtract {
  CatPtr cat;
  std::vector<int> obj_orig, mor_orig;  // fibre index -> total index
  std::vector<int> obj_back, mor_back;  // total index -> fibre index or -1
};

FibreExtract extract_fibre(const FinFunctor& p, int x);

FinFunctor reindexing_functor(const FinFunctor& p, const Cleavage& c, int f,
                              const FibreExtract& from, const FibreExtract& to);

struct StrictOpIndexedCat {
  CatPtr base;
  std::vector<CatPtr> fibre;        // per base object
  std::vector<FinFunctor> reindex;  // per base morphism
};

Report validate_opindexed(const StrictOpIndexedCat& I);

StrictOpIndexedCat to_opindexed(const FinFunctor& p, const Cleavage& c);

// Total category of the Grothendieck construction together with the
// bookkeeping identifying its objects/morphisms as pairs.
struct Grothendieck {
  CatPtr total;
  FinFunctor proj;
  std::vector<std::pair<int, int>> obj_pair;  // (base object, fibre object)
  std::vector<std::pair<int, int>> mor_pair;  // (base morphism f, fibre morphism F)
};

Grothendieck grothendieck(const StrictOpIndexedCat& I);

// grothendieck(to_opindexed(p)) is isomorphic over the base to p, by an
// explicitly constructed fibred isomorphism.
bool roundtrip_equivalence_check(const FinFunctor& p, const Cleavage& c);

struct OpfibMorphism {
  FinFunctor H;  // between totals
  FinFunctor K;  // between bases
};

bool check_morphism_of_opfibrations(const OpfibMorphism& m, const FinFunctor& p,
                                    const FinFunctor& q);
bool check_split_morphism(const OpfibMorphism& m, const FinFunctor& p, const Cleavage& cp,
                          const FinFunctor& q, const Cleavage& cq);

struct Pullback {
  CatPtr total;
  FinFunctor q;         // pullback functor-over (total -> K.src)
  FinFunctor to_total;  // comparison into the original total category
};

Pullback pullback_opfibration(const FinFunctor& p, const FinFunctor& K);

FinFunctor compose_opfibrations(const FinFunctor& p, const FinFunctor& q);

// Retrofunctor data: an object map plus a lift assignment, no functor needed.
struct RetrofunctorData {
  CatPtr total, base;
  std::vector<int> p0;                // Ob(total) -> Ob(base)
  std::vector<std::vector<int>> phi;  // [a][f] -> total morphism, -1 if dom f != p0(a)
};

bool check_retrofunctor(const RetrofunctorData& r);
RetrofunctorData cleavage_as_retrofunctor(const FinFunctor& p, const Cleavage& c);

}  // namespace lmt

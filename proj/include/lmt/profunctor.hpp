#pragma once

// Finite profunctors with explicit action tables, coend composition via a
// disjoint-set quotient, the refine/coarsen embeddings of functors, and the
// refine -| coarsen adjunction checked pointwise.

#include <optional>
#include <utility>

#include "lmt/fincat.hpp"

namespace lmt {

// P : A -/-> B. Elements are indexed globally; elem_dom/elem_cod give the
// (a, b) cell of each element. Actions: lact[e][f] for f : a' -> a in A
// (contravariant), ract[e][g] for g : b -> b' in B.
struct FinProfunctor {
  CatPtr src, dst;
  std::vector<int> elem_dom, elem_cod;
  std::vector<std::string> elem_name;
  std::vector<std::vector<int>> lact, ract;

  int num_elems() const { return static_cast<int>(elem_dom.size()); }
  std::vector<int> elems_at(int a, int b) const;
  int act(int f, int e, int g) const;  // P(f, g)(e)
  int elem(const std::string& n) const;
};

Report validate_profunctor(const FinProfunctor& p);

FinProfunctor identity_prof(const CatPtr& a);
FinProfunctor refine_embed(const FinFunctor& F);   // (a,b) |-> B(Fa, b)
FinProfunctor coarsen_embed(const FinFunctor& F);  // (b,a) |-> B(b, Fa)

// Underlying (A-object, B-morphism) of each refine/coarsen element, in
// element order; avoids rediscovering them from names.
std::vector<std::pair<int, int>> refine_elem_data(const FinFunctor& F);
std::vector<std::pair<int, int>> coarsen_elem_data(const FinFunctor& F);

// Coend composite of P : A -/-> B and Q : B -/-> C, with the generating
// relation (f, Q(g,id)(h)) ~ (P(id,g)(f), h), plus the class bookkeeping the
// callers need to map raw pairs to classes and back.
struct ProfComposite {
  FinProfunctor prof;
  std::vector<std::pair<int, int>> pairs;       // all raw composable pairs (pe, qe)
  std::vector<int> pair_class;                  // raw pair index -> class (= prof elem)
  std::vector<std::vector<int>> class_members;  // class -> raw pair indices
  int class_of(int pe, int qe) const;           // -1 if not a composable pair
};

ProfComposite compose_prof(const FinProfunctor& p, const FinProfunctor& q);

struct ProfNat {
  FinProfunctor P, Q;
  std::vector<int> map;  // P element -> Q element
};

bool check_prof_nat(const ProfNat& t);

ProfNat adjunction_unit(const FinFunctor& F);    // id_A -> refine;coarsen
ProfNat adjunction_counit(const FinFunctor& F);  // coarsen;refine -> id_B

struct AdjunctionCheck {
  bool unit_natural = false;
  bool counit_well_defined = false;
  bool counit_natural = false;
  bool triangle_refine = false;
  bool triangle_coarsen = false;
  bool counit_section_ok = false;
  bool ok() const {
    return unit_natural && counit_well_defined && counit_natural && triangle_refine &&
           triangle_coarsen && counit_section_ok;
  }
};

AdjunctionCheck verify_adjunction(const FinFunctor& F);

// Natural isomorphism search by backtracking over pointwise bijections; used
// for "isomorphic as profunctors" claims on small instances.
std::optional<ProfNat> find_prof_iso(const FinProfunctor& p, const FinProfunctor& q);
bool is_prof_iso(const ProfNat& t);

}  // namespace lmt

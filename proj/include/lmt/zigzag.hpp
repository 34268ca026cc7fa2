#pragma once

// Zigzag 2-categories: normal-form 1-cells (alternating words over a base
// category), formal 2-cell expressions over the unit/counit generators, a
// budgeted 2-cell prover, and the monoidal structure on Zg of a cartesian
// base.

#include <optional>

#include "lmt/fincat.hpp"

namespace lmt {

struct ZigzagEntry {
  bool fwd;
  int mor;
  auto operator<=>(const ZigzagEntry&) const = default;
};

// Normal form: no identity entries, adjacent entries alternate direction.
// `start` carries the source object so empty words denote identities.
struct ZigzagWord {
  CatPtr base;
  int start = -1;
  std::vector<ZigzagEntry> entries;

  int src() const { return start; }
  int dst() const;
  bool operator==(const ZigzagWord& o) const {
    return start == o.start && entries == o.entries;
  }
};

ZigzagWord zg_word(const CatPtr& base, int start, const std::vector<ZigzagEntry>& entries);
ZigzagWord zg_normalize(const ZigzagWord& w);
ZigzagWord zg_concat(const ZigzagWord& a, const ZigzagWord& b);
ZigzagWord zg_id(const CatPtr& base, int obj);
ZigzagWord zg_fwd(const CatPtr& base, int f);
ZigzagWord zg_bwd(const CatPtr& base, int f);
ZigzagWord zg_reverse(const ZigzagWord& w);  // formal right adjoint of the word
std::string zg_str(const ZigzagWord& w);

struct TwoCell;
using CellPtr = std::shared_ptr<const TwoCell>;

// Formal 2-cell expressions over eta_f : id -> f;fbar and eps_f : fbar;f -> id,
// closed under vertical and horizontal composition.
struct TwoCell {
  enum class Kind { Eta, Eps, Id, VComp, HComp };
  Kind kind;
  int mor = -1;       // Eta / Eps
  ZigzagWord word;    // Id
  CellPtr a, b;
  ZigzagWord dom_w, cod_w;
};

CellPtr c_eta(const CatPtr& base, int f);
CellPtr c_eps(const CatPtr& base, int f);
CellPtr c_id(const ZigzagWord& w);
CellPtr c_vcomp(const CellPtr& a, const CellPtr& b);  // boundary-checked
CellPtr c_hcomp(const CellPtr& a, const CellPtr& b);

std::pair<ZigzagWord, ZigzagWord> twocell_boundary(const CellPtr& c);
std::string cell_str(const CellPtr& c);

// Light normalization: strict 2-category unit laws, eta/eps on identities,
// flattening. Cheap and canonical enough for state deduplication.
CellPtr cell_normalize(const CellPtr& c);

struct CellProveStep {
  std::string rule;
  std::string before, after;  // canonical strings
};

struct CellProveResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<CellProveStep> trace;
  long nodes = 0;
};

CellProveResult prove_twocells_equal(const CellPtr& a, const CellPtr& b, long budget);
bool replay_twocell_trace(const CellPtr& a, const CellPtr& b,
                          const std::vector<CellProveStep>& trace);

// Monoidal structure on Zg over a cartesian base: products of 1-cells by the
// four generator cases (mixed composites oriented forward-first) and products
// of generating 2-cells.
struct ZgMonoidal {
  CartesianStructure cart;
  ZigzagWord tensor(const ZigzagWord& a, const ZigzagWord& b) const;
  ZigzagWord normalize(const ZigzagWord& w) const;  // merge + orientation rewrite
  CellPtr cell_tensor(const CellPtr& a, const CellPtr& b) const;  // generator cases
};

ZgMonoidal zg_monoidal(const CartesianStructure& cart);

}  // namespace lmt

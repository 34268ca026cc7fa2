#pragma once

// Monoidal signatures and theories, the term grammar with its sorting rules,
// structural equality via an interchange (earliest-leftmost) normal form, a
// budgeted equational prover producing replayable traces, bounded term-model
// hom enumeration, model interpretation, and the stock example theories.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>

#include "lmt/fincat.hpp"

namespace lmt {

using Word = std::vector<int>;  // colour indices

std::string word_str(const std::vector<std::string>& colours, const Word& w);

struct MonSignature {
  std::vector<std::string> colours;
  struct Gen {
    std::string name;
    Word arity, coarity;
  };
  std::vector<Gen> gens;

  int colour(const std::string& n) const;
  int gen(const std::string& n) const;
  int num_gens() const { return static_cast<int>(gens.size()); }
};

struct SortError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MonTerm;
using TermPtr = std::shared_ptr<const MonTerm>;

struct MonTerm {
  enum class Kind { Gen, IdColour, IdEps, Comp, Tensor };
  Kind kind;
  int gen = -1;     // Kind::Gen
  int colour = -1;  // Kind::IdColour
  TermPtr left, right;
  Word dom, cod;  // cached sort
  int size = 1;   // syntax tree node count
};

TermPtr t_gen(const MonSignature& sig, int g);
TermPtr t_gen(const MonSignature& sig, const std::string& name);
TermPtr t_id(int colour);
TermPtr t_id_eps();
TermPtr t_id_word(const Word& w);  // tensor chain of colour ids, or id_eps
TermPtr t_comp(const TermPtr& a, const TermPtr& b);    // throws SortError
TermPtr t_tensor(const TermPtr& a, const TermPtr& b);

std::string term_str(const MonSignature& sig, const TermPtr& t);

// Interchange normal form: a sequence of one-generator slices, each generator
// at the earliest slice and leftmost offset compatible with wire dependencies.
struct DiagramNF {
  struct Slice {
    int offset;
    int gen;
    auto operator<=>(const Slice&) const = default;
  };
  Word dom, cod;
  std::vector<Slice> slices;
  auto operator<=>(const DiagramNF&) const = default;
};

DiagramNF diagram_nf(const MonSignature& sig, const TermPtr& t);
bool equal_structural(const MonSignature& sig, const TermPtr& t, const TermPtr& s);
TermPtr nf_to_term(const MonSignature& sig, const DiagramNF& nf);
std::string nf_str(const MonSignature& sig, const DiagramNF& nf);

struct MonEquation {
  std::string name;
  TermPtr lhs, rhs;
};

struct MonTheory {
  MonSignature sig;
  std::vector<MonEquation> equations;
  // schema packs whose ground instances are materialized per generator
  bool schema_symmetric = false;
  bool schema_uniform_comonoids = false;
  bool schema_natural_monoids = false;
  std::set<std::string> sym_colours;  // colours carrying the symmetric pack

  int sym_gen(int a, int b) const;  // symmetry generator index for colours a,b
  int comonoid_d(int a) const, comonoid_e(int a) const;
  int monoid_m(int a) const, monoid_u(int a) const;
};

// symmetry / comonoid / monoid structure extended from colours to words
TermPtr sym_word(const MonTheory& th, const Word& v, const Word& w);  // vw -> wv
TermPtr comon_d_word(const MonTheory& th, const Word& w);             // w -> ww
TermPtr comon_e_word(const MonTheory& th, const Word& w);             // w -> eps
TermPtr mon_m_word(const MonTheory& th, const Word& w);               // ww -> w
TermPtr mon_u_word(const MonTheory& th, const Word& w);               // eps -> w

// Appends the ground instances of every schema pack the theory carries,
// instantiated at the current generator set. Call after extending a builtin.
void materialize_schema_equations(MonTheory& th);

// builtin theories
MonTheory theory_monoids();
MonTheory theory_comonoids();
MonTheory theory_symmetric(const std::vector<std::string>& colours);
MonTheory theory_uniform_comonoids(const std::vector<std::string>& colours);
MonTheory theory_natural_monoids(const std::vector<std::string>& colours);
MonTheory theory_indexed_monoids(const std::vector<std::string>& colours);
MonTheory theory_im(const CatPtr& x);  // indexed monoids generated by a category

struct ProveStep {
  std::string rule;   // equation name
  bool reversed;      // rhs -> lhs application
  TermPtr before, after;
};

struct ProveResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<ProveStep> trace;  // for Proved: a chain from t to s
  long nodes = 0;
};

ProveResult prove_equal(const MonTheory& th, const TermPtr& t, const TermPtr& s, long budget);
bool replay_trace(const MonTheory& th, const TermPtr& t, const TermPtr& s,
                  const std::vector<ProveStep>& trace);

struct SigMorphism {
  const MonSignature* src = nullptr;
  const MonSignature* dst = nullptr;
  std::vector<int> colour_map;
  std::vector<int> gen_map;
};

TermPtr apply_signature_morphism(const SigMorphism& f, const TermPtr& t);

struct ModelData {
  StrictMonStructure target;
  std::vector<int> colour_obj;         // colour -> target object
  std::vector<int> gen_mor;            // generator -> target morphism
};

int interpret_obj(const ModelData& m, const Word& w);
int interpret(const ModelData& m, const TermPtr& t);
bool check_model(const MonTheory& th, const ModelData& m);

struct HomClass {
  DiagramNF nf;       // representative normal form
  TermPtr rep;        // smallest representative term
  int merged_from = 1;
};

struct HomEnumeration {
  std::vector<HomClass> classes;
  bool complete_up_to_budget = true;  // false when equations present (caveat)
};

HomEnumeration enumerate_hom(const MonTheory& th, const Word& a, const Word& b, int size_bound,
                             long merge_budget = 2000);

// Brute-force congruence closure over the structural identities on all terms
// up to a size bound; the independent oracle for equal_structural. Stays
// purely syntactic: no DiagramNF involved.
struct StructuralOracle {
  std::vector<TermPtr> terms;
  std::vector<int> cls;  // per-term equivalence class id
};

StructuralOracle structural_closure_oracle(const MonSignature& sig, int size_bound);
std::vector<TermPtr> enumerate_terms(const MonSignature& sig, int size_bound);

}  // namespace lmt

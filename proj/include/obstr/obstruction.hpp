// The obstruction engine: candidate triples (tau, B, A*) over a module A and
// a p-group T <= Aut(A), the size conditions defining the hatted candidate
// sets, and the greatest subset closed under the leading-element condition.
//
// Pair-level reduction: the defining condition quantifies A* existentially
// and the closure condition reads only first components, so pairs (tau, B)
// carry all information; witnesses are reconstructed on demand.
#pragma once

#include <optional>
#include <vector>

#include "obstr/group.hpp"
#include "obstr/zmod.hpp"

namespace obstr {

struct ObstructionContext {
  Module A;
  Closure<Aut> T;
  std::size_t subgroup_work_cap = 1u << 20;
  std::size_t group_order_cap = 1u << 12;

  // checked at construction: T consists of invertible matrices over A and is
  // a p-group for A's prime
  static ObstructionContext make(Module a, std::vector<Aut> tgens,
                                 std::size_t closure_cap = 1u << 20);
};

// standard abelian embedding criterion:
// for every j, #{i : f_i >= j} <= #{cyclic factors of A of order >= p^j}
bool embeds_in(const std::vector<unsigned>& b_invariants, const Module& a);

enum class Tri { yes, no, unknown };

struct CandidatePair {
  std::uint32_t tau;       // element id in T
  std::uint32_t b;         // index into the enumerated subgroup list
  bool rplus = false;
  Tri r = Tri::no;
  // exponents recorded for the certificate
  unsigned exp_B = 0;          // log_p |B|
  unsigned exp_CW = 0;         // log_p |C_A(<B,tau>)[tau,A]|
  unsigned exp_W = 0;          // log_p |[tau,A]|
  std::optional<Subgroup> witness_rplus;  // C_A(<B,tau>)
  std::optional<Subgroup> witness_r;      // A* with |A*[tau,A]| = |A|/|B|
};

struct Elimination {
  std::size_t pair;        // index into `pairs`
  std::uint32_t missing;   // tau1 in B^# with no surviving lead
  unsigned sweep;
};

struct ObstructionVerdict {
  enum class Variant { rplus, requality } variant;
  std::vector<IdSubgroup> subgroups;     // enumerated candidate B list
  std::vector<CandidatePair> pairs;      // all feasible pairs for the variant
  std::vector<std::size_t> surviving;    // indices into pairs
  std::vector<Elimination> eliminated;
  unsigned iterations = 0;
  bool empty = false;
  bool empty_modulo_unknown = false;     // distinct from empty only if any r
                                         // feasibility was 'unknown'
  // soundness: the surviving set satisfies the closure condition literally
  bool closure_condition_checked = false;
};

// Existence of A* <= C_A(<B,tau>) with |B| >= |C_{A/A*}(tau)|.  Decided
// exactly: the minimum of |C_{A/A*}(tau)| = |A| / |A* [tau,A]| is attained at
// the maximal admissible witness A* = C_A(<B,tau>).
bool rplus_feasible(const ObstructionContext& ctx, std::uint32_t tau, const IdSubgroup& b,
                    CandidatePair* detail = nullptr);

// Existence of A* <= C := C_A(<B,tau>) with |B| = |C_{A/A*}(tau)|, i.e.
// |A* [tau,A]| = |A|/|B|.  As A* ranges over subgroups of C, A*[tau,A]/[tau,A]
// ranges over all subgroups of C[tau,A]/[tau,A]; an abelian p-group has
// subgroups of every dividing order, so the condition is exactly
// |[tau,A]| <= |A|/|B| <= |C [tau,A]|.  The tri-state return is kept for
// interface stability; 'unknown' is never produced.
Tri r_feasible(const ObstructionContext& ctx, std::uint32_t tau, const IdSubgroup& b,
               CandidatePair* detail = nullptr);

// subgroup Y with W <= Y <= big and |Y| = p^target_exp (exists whenever
// sizes sandwich; used to build equality witnesses)
Subgroup subgroup_between(const Subgroup& w, const Subgroup& big, unsigned target_exp);

// delete pairs whose B contains a nontrivial element that never leads a
// surviving pair; repeat to stability
void greatest_fixed_point(const ObstructionContext& ctx, ObstructionVerdict& v);

ObstructionVerdict rplus_set(const ObstructionContext& ctx);
ObstructionVerdict r_set(const ObstructionContext& ctx);

// some nontrivial abelian B0 <= T, embeddable in A, with
// |B0| >= |C_A(tau) ∩ [tau,A]| for every nontrivial tau in B0
struct B0Result {
  bool found = false;
  IdSubgroup witness;
};
B0Result corollary_b0(const ObstructionContext& ctx);

// elementary abelian A only: some elementary abelian B of rank m with
// jordan_count(tau) <= m for all nontrivial tau in B
struct JordanCriterionResult {
  bool found = false;
  unsigned m = 0;
  IdSubgroup witness;
};
JordanCriterionResult jordan_criterion(const ObstructionContext& ctx);

// transport a verdict to a subquotient A2/A1 (both T-invariant, T faithful
// on the quotient); re-verifies feasibility of each transported witness
struct TransportedPair {
  std::uint32_t tau;
  std::uint32_t b;
  Subgroup witness_in_quotient;
  bool verified = false;
};
std::vector<TransportedPair> subquotient_transfer(const ObstructionContext& ctx,
                                                  const ObstructionVerdict& v,
                                                  const Subgroup& a1, const Subgroup& a2);

}  // namespace obstr

#pragma once

#include "coxsaito/budget.hpp"
#include "coxsaito/linsolve.hpp"
#include "coxsaito/poly.hpp"

#include <optional>
#include <vector>

namespace coxsaito {

struct NonHomogeneous : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IdealBasis {
  RingPtr ring;
  std::vector<Poly> gens;
  std::vector<int> weights;  // grading and term-order weights; all ones by default
  bool homogeneous = false;
  bool groebner = false;

  // Validates (weighted) homogeneity; zero generators are dropped.
  static IdealBasis graded(RingPtr ring, std::vector<Poly> gens, std::vector<int> weights = {});
  static IdealBasis plain(RingPtr ring, std::vector<Poly> gens, std::vector<int> weights = {});
  IdealBasis operator+(const IdealBasis& o) const;
};

// sum cofactors[i] * generators[i] == target, checked on construction.
class Witness {
 public:
  Witness(Poly target, std::vector<Poly> generators, std::vector<Poly> cofactors);
  const Poly& target() const { return target_; }
  const std::vector<Poly>& generators() const { return generators_; }
  const std::vector<Poly>& cofactors() const { return cofactors_; }
  bool verify() const;

 private:
  Poly target_;
  std::vector<Poly> generators_;
  std::vector<Poly> cofactors_;
};

bool verify_combination(const Poly& target, const std::vector<Poly>& generators, const std::vector<Poly>& cofactors);

// Linear functional on the monomials of one graded piece that kills every
// mu*g_i of that degree and takes the value 1 on the target.
struct Separator {
  int degree = 0;
  std::vector<std::pair<Monomial, Scalar>> functional;
};

bool verify_separator(const Poly& target, const std::vector<Poly>& generators, const std::vector<int>& weights,
                      const Separator& sep);

enum class MembershipStatus { Member, NonMember, BudgetExhausted };

struct Membership {
  MembershipStatus status = MembershipStatus::NonMember;
  std::optional<Witness> witness;
  std::optional<Separator> separator;
  bool member() const { return status == MembershipStatus::Member; }
};

struct EngineOptions {
  Budget* budget = nullptr;
  SolveMethod method = SolveMethod::Auto;
};

Membership graded_membership(const Poly& g, const IdealBasis& ideal, const EngineOptions& opt = {});
// Targets need not share a degree; each degree is solved once with all its
// targets as right-hand sides.
std::vector<Membership> graded_membership_batch(const std::vector<Poly>& targets, const IdealBasis& ideal,
                                                const EngineOptions& opt = {});

IdealBasis groebner_basis(const IdealBasis& ideal, Budget* budget = nullptr);
Poly normal_form(const Poly& g, const IdealBasis& gb);
bool ideal_equal(const IdealBasis& a, const IdealBasis& b, const EngineOptions& opt = {});
int krull_dimension(const IdealBasis& ideal, Budget* budget = nullptr);
bool squarefree_test(const Poly& f, const std::vector<int>& weights = {}, Budget* budget = nullptr);
int distinct_root_count(const Poly& f);

// Dimension of the ideal generated by a set of monomials.
int monomial_ideal_dimension(const std::vector<Monomial>& monos, int nvars);

}  // namespace coxsaito
